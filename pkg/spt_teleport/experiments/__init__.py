"""
Built-in experiment configs, one function per entry.

Each function returns a fresh config document (see
schema/experiment.schema.json); registry.py catalogs them.

Usage:
    from spt_teleport.experiments import fig3_diamond
    from spt_teleport.config import run_experiment

    run_experiment(fig3_diamond(), out_dir="results")
"""

from .diagnostics import calibration_demo, spectra_chain_diamond
from .ground_state import fig6_hy_fidelity, fig7_sop_hy, fig8_hz_lower
from .teleportation import fig3_diamond, fig5_hourglass, fig9_depolarizing, fig10_tomography

__all__ = [
    "fig3_diamond",
    "fig5_hourglass",
    "fig6_hy_fidelity",
    "fig7_sop_hy",
    "fig8_hz_lower",
    "fig9_depolarizing",
    "fig10_tomography",
    "spectra_chain_diamond",
    "calibration_demo",
]
