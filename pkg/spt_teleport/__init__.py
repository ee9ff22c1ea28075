"""
Exact simulation of string-symmetry protected teleportation on graph states.

Modules:
    defs         — shared types: vertex kind/role, measurement basis, input state, gates
    errors       — exception hierarchy rooted at SptError
    pauli        — PauliString algebra on x/z bitmasks
    graphs       — GraphSpec, builders (chain, diamond, hourglass), path symmetries
    sim          — statevector / density-matrix engine, measurement branches
    noise        — ZZ crosstalk, single-qubit rotations, two-qubit depolarizing
    teleport     — byproducts, exact and sampled fidelity, tomography
    spt          — surviving symmetries, entanglement spectra, string order
    groundstate  — perturbed hourglass Hamiltonians and teleportation through them
    calibration  — picking the uncorrupted path, single-shot majority vote
    format       — text / sparse / LaTeX rendering of strings and byproducts
    printer      — terminal reports
    config       — experiment configs, sweeps and the runner
    registry     — built-in experiment catalog (see experiments/)
    cli          — the spt-teleport command
"""

__version__ = "0.1.0"

from .errors import (
    SptError, DimensionError, UnknownVertexError, GraphError, SizeLimitError,
    NonHermitianError, ProtocolError, ConfigError, InvalidParameterError,
)
from .defs import VertexKind, Role, MeasureBasis, InputState, Gate, GateKind, GateList
from .pauli import PauliString, multiply, commutes, product
from .graphs import (
    GraphSpec, Vertex, PathSymmetry, SymmetryGroup,
    build_chain, build_diamond, build_hourglass, enumerate_paths,
    compile_preparation, parse_graph,
)
from .sim import StateVector, DensityMatrix, prepare, expectation, measure, make_rng
from .noise import ZZCrosstalk, SingleQubitError, Depolarizing2Q, parse_error
from .teleport import (
    ByproductOperator, byproduct_for_path, fidelity_exact, run_teleport,
    tomography_exact, tomography_teleport, classify_channel, ChannelClass,
)
from .spt import (
    surviving_subgroup, factorize, entanglement_spectrum, reduced_symmetry_check,
    string_order_parameter, sop_sweep,
)
from .groundstate import (
    HamiltonianFamily, HamiltonianSpec, ground_state,
    teleport_through_ground_state, fidelity_vs_alpha_sweep,
)
from .calibration import calibrate_path, majority_vote_teleport
from .format import Format, TextFormat, SparseFormat, LatexFormat, render_pauli, render_byproduct
from .config import load_config, run_experiment
from .registry import EXPERIMENTS, list_builtin_experiments, print_registry
