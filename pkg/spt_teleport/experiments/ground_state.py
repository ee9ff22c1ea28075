"""
Resource states prepared as ground states of perturbed stabilizer Hamiltonians.

The hourglass stabilizer Hamiltonian is perturbed by a tilt α:

    hy        Y field on every bulk row; both paths stay protected
    hz        Z field on every bulk row; the string order decays with L
    hz_lower  Z field on the lower row only; the lower path degrades with
              graph length while the upper one stays intact
"""


def fig6_hy_fidelity() -> dict:
    return {
        "name": "fig6_hy_fidelity",
        "description": "HY ground state, teleportation success vs alpha along both paths",
        "protocol": "gslab",
        "family": "hy",
        "n": [2],
        "alpha": "0:1.5:0.1",
        "paths": ["upper", "lower"],
        "inputs": {"count": 25, "distribution": "xy"},
        "shots": 100,
        "seed": 7,
    }


def fig7_sop_hy() -> dict:
    return {
        "name": "fig7_sop_hy",
        "description": "HY ground state, upper-path string order parameter vs alpha for L = 6, 10, 14",
        "protocol": "sop",
        "family": "hy",
        "L": [6, 10, 14],
        "alpha": "0:1.5:0.05",
        "path": "upper",
        "seed": 0,
    }


def fig8_hz_lower() -> dict:
    return {
        "name": "fig8_hz_lower",
        "description": "HZ_lower ground state, success vs graph length N = 7, 11, 15 along both paths",
        "protocol": "gslab",
        "family": "hz_lower",
        "n": [2, 4, 6],
        "alpha": [0.0, 0.5, 1.0, 1.5],
        "paths": ["upper", "lower"],
        "inputs": {"count": 25, "distribution": "xy"},
        "shots": 100,
        "seed": 8,
    }
