"""
Teleportation through perturbed resource graphs.

    fig3_diamond        ZZ crosstalk on the diamond's 3–5 link, ε ∈ [−0.45, 0.45]:
                        the green path (p1) keeps F = 1, the blue path (p2) does not.
    fig5_hourglass      coherent X rotations on both lower bulk vertices of the
                        n = 2 hourglass, θ ∈ [0, π]: upper protected, lower not.
    fig9_depolarizing   the diamond sweep again with two-qubit depolarizing noise
                        after every entangling gate; the two p values bound a
                        device-like curve from above and below.
    fig10_tomography    full output tomography along both diamond paths.
"""

import math

_EPS = [round(-0.45 + 0.05 * i, 2) for i in range(19)]


def fig3_diamond() -> dict:
    return {
        "name": "fig3_diamond",
        "description": "diamond, ZZ crosstalk on link 3-5; green/blue path fidelity vs epsilon",
        "protocol": "teleport",
        "graph": "diamond",
        "paths": ["p1", "p2"],
        "errors": ["zz:3,5,$eps"],
        "sweep": {"eps": _EPS},
        "inputs": {"count": 20, "distribution": "bloch"},
        "shots": 500,
        "seed": 42,
    }


def fig5_hourglass() -> dict:
    # lower bulk vertices of hourglass n=2: (1,1) → 4, (2,1) → 6
    return {
        "name": "fig5_hourglass",
        "description": "hourglass n=2, X rotations on the lower bulk vertices; upper/lower fidelity vs theta",
        "protocol": "teleport",
        "graph": "hourglass:n=2,rows=2",
        "paths": ["upper", "lower"],
        "errors": ["x1q:4,X,$theta", "x1q:6,X,$theta"],
        "sweep": {"theta": [round(math.pi * i / 12, 12) for i in range(13)]},
        "inputs": {"count": 20, "distribution": "bloch"},
        "shots": 500,
        "seed": 42,
    }


def fig9_depolarizing() -> dict:
    return {
        "name": "fig9_depolarizing",
        "description": "diamond crosstalk sweep under two-qubit depolarizing noise; "
                       "p = 0.02 and 0.05 bracket a nominal device curve",
        "protocol": "teleport_exact",
        "graph": "diamond",
        "paths": ["p1", "p2"],
        "errors": ["zz:3,5,$eps", "depol2q:$p"],
        "sweep": {"p": [0.02, 0.05], "eps": _EPS},
        "inputs": {"count": 10, "distribution": "bloch"},
        "seed": 9,
    }


def fig10_tomography() -> dict:
    return {
        "name": "fig10_tomography",
        "description": "output-state tomography along p1 and p2 of the diamond",
        "protocol": "tomography",
        "graph": "diamond",
        "paths": ["p1", "p2"],
        "errors": ["zz:3,5,$eps"],
        "sweep": {"eps": [0.0, 0.2, 0.4]},
        "inputs": {"count": 6, "distribution": "bloch"},
        "shots": 2000,
        "seed": 10,
    }
