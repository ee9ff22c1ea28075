"""Entanglement spectra and path calibration."""


def spectra_chain_diamond() -> dict:
    return {
        "name": "spectra_chain_diamond",
        "description": "entanglement spectra across the cut {4,5,6} of chain-6 and the diamond, "
                       "ideal and with crosstalk 0.3 on the 3-5 pair",
        "protocol": "spectrum",
        "graph": ["chain:6", "diamond"],
        "cut": [4, 5, 6],
        "errors": ["zz:3,5,$eps"],
        "sweep": {"eps": [0.0, 0.3]},
        "seed": 0,
    }


def calibration_demo() -> dict:
    return {
        "name": "calibration_demo",
        "description": "pick the uncorrupted diamond path from |0> and |+> test runs",
        "protocol": "calibrate",
        "graph": "diamond",
        "errors": ["zz:3,5,$eps"],
        "sweep": {"eps": [0.0, 0.1, 0.3, 0.45]},
        "shots": 200,
        "seed": 3,
    }
