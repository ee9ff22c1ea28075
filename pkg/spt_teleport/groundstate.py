"""
Ground states of perturbed hourglass Hamiltonians, and teleportation
through them.

The resource is the input-free hourglass (L = 2n + 2 qubits: m, the
n×2 bulk, O).  Three perturbations of the stabilizer Hamiltonian:

    HY        −cos α Σ K_j − sin α Σ_i (Y_(i,0) + Y_(i,1))    symmetric
    HZ        −cos α Σ K_j − sin α Σ_i (Z_(i,0) + Z_(i,1))    breaks every path
    HZ_LOWER  −cos α Σ K_j − sin α Σ_i Z_(i,1)                breaks the lower path

Ground states come from exact diagonalization: dense `eigh` for small
systems, matrix-free Lanczos (`scipy.sparse.linalg.eigsh`, smallest
algebraic) otherwise.  The Hamiltonian is applied as a sum of Pauli
actions, never built as a sparse matrix.

Teleporting through a ground state: the input qubit is put in front of
the state and joined to m by a CZ, which yields the resource of the
hourglass with input.  I and m are measured in X, the bulk in +Y.  For an
input on the XY plane with azimuth φ the output is rotated by
Rz((−1)^(1+l_rot)·φ), rotated by H and read out; the bit is flipped when
l_flip is odd, and the shot succeeds when the result is 0.  l_rot and
l_flip are the X and Z exponents of the path byproduct (swapped for
Hadamard-frame paths, whose output is first rotated by H).  Inputs off
the plane are read out in their own basis after the full correction.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np
import scipy.linalg
from scipy.sparse.linalg import LinearOperator, eigsh

from .defs import MAX_STATEVECTOR_QUBITS, InputState, MeasureBasis
from .errors import InvalidParameterError, SizeLimitError
from .graphs import GraphSpec, build_hourglass
from .pauli import PauliString, commutes
from .sim import (
    CZ,
    HADAMARD,
    MeasurementPlan,
    StateVector,
    apply_pauli,
    apply_unitary,
    branch_table,
    make_rng,
    pauli_action,
    rotation,
)
from .teleport import (
    ByproductOperator,
    OutputFixup,
    binomial_stderr,
    byproduct_for_path,
    fixup_correction,
    sample_inputs,
)

logger = logging.getLogger(__name__)

DENSE_LIMIT = 256
DEGENERACY_GAP = 1e-10
RESIDUAL_TOL = 1e-8


class HamiltonianFamily(Enum):
    HY = "hy"
    HZ = "hz"
    HZ_LOWER = "hz_lower"

    @classmethod
    def parse(cls, text: str) -> HamiltonianFamily:
        try:
            return cls(text.strip().lower())
        except ValueError:
            names = ", ".join(f.value for f in cls)
            raise InvalidParameterError(f"unknown Hamiltonian family {text!r} (expected {names})") from None


@dataclass(frozen=True)
class HamiltonianSpec:
    family: HamiltonianFamily
    n: int
    alpha: float

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise InvalidParameterError(f"hourglass width n must be a positive integer, got {self.n!r}")
        if not -1e-12 <= self.alpha <= math.pi / 2 + 1e-12:
            raise InvalidParameterError(f"alpha must lie in [0, π/2], got {self.alpha!r}")
        if self.L > MAX_STATEVECTOR_QUBITS:
            raise SizeLimitError(f"L = {self.L} exceeds the exact-diagonalization cap of "
                                 f"{MAX_STATEVECTOR_QUBITS} qubits")

    @property
    def L(self) -> int:
        return 2 * self.n + 2

    @property
    def graph(self) -> GraphSpec:
        return build_hourglass(self.n, 2, with_input=False)


def _perturbed_rows(family: HamiltonianFamily) -> tuple[str, tuple[int, ...]]:
    if family is HamiltonianFamily.HY:
        return "Y", (0, 1)
    if family is HamiltonianFamily.HZ:
        return "Z", (0, 1)
    return "Z", (1,)


def hamiltonian_terms(spec: HamiltonianSpec) -> list[tuple[float, PauliString]]:
    """(coefficient, string) pairs; perturbation terms vanish at α = 0."""
    g = spec.graph
    terms = [(-math.cos(spec.alpha), k) for k in g.stabilizers().generators]
    letter, rows = _perturbed_rows(spec.family)
    s = -math.sin(spec.alpha)
    for i in range(1, spec.n + 1):
        for k in rows:
            q = g.qubit(g.vid(f"{i},{k}"))
            terms.append((s, PauliString.from_sparse(g.num_qubits, {q: letter})))
    return terms


def perturbation_terms(spec: HamiltonianSpec, cutoff: float = 1e-15) -> list[PauliString]:
    """Strings of the perturbation with a nonzero coefficient."""
    k = spec.L
    return [p for c, p in hamiltonian_terms(spec)[k:] if abs(c) > cutoff]


def hamiltonian_operator(spec: HamiltonianSpec) -> LinearOperator:
    """Matrix-free H acting on 2^L amplitudes."""
    dim = 1 << spec.L
    actions = []
    diagonal = np.zeros(dim, dtype=complex)
    for c, p in hamiltonian_terms(spec):
        if c == 0.0:
            continue
        src, factor = pauli_action(p)
        if p.x == 0:
            diagonal += c * factor
        else:
            actions.append((src, c * factor))

    def matvec(v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=complex).reshape(-1)
        out = diagonal * v
        for src, factor in actions:
            out += factor * v[src]
        return out

    return LinearOperator((dim, dim), matvec=matvec, dtype=complex)


def hamiltonian_matrix(spec: HamiltonianSpec) -> np.ndarray:
    return sum(c * p.to_matrix() for c, p in hamiltonian_terms(spec))


@dataclass(frozen=True)
class GroundState:
    spec: HamiltonianSpec
    state: StateVector
    energy: float
    gap: float
    residual: float

    @property
    def degenerate(self) -> bool:
        return self.gap < DEGENERACY_GAP


def ground_state(spec: HamiltonianSpec) -> GroundState:
    """Lowest eigenvector; near-degenerate ground spaces are flagged, not refused."""
    dim = 1 << spec.L
    if dim <= DENSE_LIMIT:
        vals, vecs = scipy.linalg.eigh(hamiltonian_matrix(spec))
        e0, e1, psi = float(vals[0]), float(vals[1]), vecs[:, 0]
    else:
        op = hamiltonian_operator(spec)
        v0 = make_rng(0, spec.L).standard_normal(dim).astype(complex)
        vals, vecs = eigsh(op, k=2, which="SA", v0=v0, tol=1e-12)
        order = np.argsort(vals)
        e0, e1, psi = float(vals[order[0]]), float(vals[order[1]]), vecs[:, order[0]]
    psi = psi / np.linalg.norm(psi)
    residual = float(np.linalg.norm(hamiltonian_operator(spec).matvec(psi) - e0 * psi))
    gs = GroundState(spec, StateVector(spec.L, psi), e0, e1 - e0, residual)
    if gs.degenerate:
        logger.warning("%s n=%d α=%.4g: ground space is degenerate (gap %.2e); excluded from fidelity claims",
                       spec.family.value, spec.n, spec.alpha, gs.gap)
    if residual > RESIDUAL_TOL:
        logger.warning("%s n=%d α=%.4g: ground-state residual %.2e above %.0e",
                       spec.family.value, spec.n, spec.alpha, residual, RESIDUAL_TOL)
    return gs


@dataclass(frozen=True)
class SymmetryCertificate:
    """Whether a path's strings commute with every perturbation term, and how
    far the ground state is from being stabilized by them."""
    path_id: str
    algebraic: bool
    max_deviation: float


def symmetry_certificate(spec: HamiltonianSpec, path: str, ground: GroundState | None = None) -> SymmetryCertificate:
    g = spec.graph
    sym = g.path(path)
    terms = perturbation_terms(spec)
    algebraic = all(commutes(s, t) for s in (sym.s_x, sym.s_z) for t in terms)
    ground = ground or ground_state(spec)
    psi = ground.state
    dev = max(float(np.max(np.abs(apply_pauli(psi, s).amplitudes - psi.amplitudes)))
              for s in (sym.s_x, sym.s_z))
    return SymmetryCertificate(sym.path_id, algebraic, dev)


# ═══════════════════════════════════════════════════════════════════
# Teleportation through a ground state
# ═══════════════════════════════════════════════════════════════════


@dataclass(frozen=True)
class GroundTeleport:
    path_id: str
    input_state: InputState
    fidelity: float
    shots: int | None
    successes: int | None
    branch_success: np.ndarray

    @property
    def stderr(self) -> float:
        return binomial_stderr(self.fidelity, self.shots) if self.shots else 0.0


def _check_teleport_size(spec: HamiltonianSpec) -> None:
    # the input qubit is attached to the L ground-state qubits
    if spec.L + 1 > MAX_STATEVECTOR_QUBITS:
        raise SizeLimitError(f"teleporting through n = {spec.n} needs {spec.L + 1} qubits, "
                             f"above the statevector cap of {MAX_STATEVECTOR_QUBITS}")


def _with_input_plan(g: GraphSpec) -> tuple[dict[int, MeasureBasis], MeasurementPlan]:
    bases = {v.id: MeasureBasis.Y for v in g.vertices if v.basis is MeasureBasis.MINUS_Y}
    return bases, g.measurement_plan(bases)


def _readout_success(outs: np.ndarray, zs: np.ndarray, xs: np.ndarray, byp: ByproductOperator,
                     target: InputState) -> np.ndarray:
    """Per-branch success probability of the readout procedure (normalized outputs)."""
    if not target.in_xy_plane:
        success = np.empty(len(outs))
        for z in (0, 1):
            for x in (0, 1):
                mask = (zs == z) & (xs == x)
                if mask.any():
                    corrected = outs[mask] @ fixup_correction(byp.fixup, z, x).T
                    success[mask] = np.abs(corrected @ target.vector.conj()) ** 2
        return success
    if byp.fixup is OutputFixup.HADAMARD:
        outs = outs @ HADAMARD.T
        l_rot, l_flip = zs, xs
    else:
        l_rot, l_flip = xs, zs
    success = np.empty(len(outs))
    for r in (0, 1):
        mask = l_rot == r
        if not mask.any():
            continue
        u = HADAMARD @ rotation("Z", (-1) ** (1 + r) * target.azimuth)
        rotated = outs[mask] @ u.T
        success[mask] = np.abs(rotated[np.arange(mask.sum()), l_flip[mask]]) ** 2
    return success


def teleport_through_ground_state(spec: HamiltonianSpec, input_state: InputState, path: str,
                                  shots: int | None, seed: int | None, cell: Sequence[int] = (),
                                  ground: GroundState | None = None) -> GroundTeleport:
    """Readout procedure on the ground state; `shots=None` gives the exact success rate."""
    if shots is not None and shots < 1:
        raise InvalidParameterError(f"shots must be ≥ 1, got {shots}")
    _check_teleport_size(spec)
    ground = ground or ground_state(spec)
    g = build_hourglass(spec.n, 2, with_input=True)
    amps = np.kron(input_state.vector, ground.state.amplitudes)
    state = apply_unitary(StateVector(g.num_qubits, amps), CZ, [0, 1])

    bases, plan = _with_input_plan(g)
    byp = byproduct_for_path(g, path, bases)
    table = branch_table(state, plan)
    zs, xs = byp.exponent_arrays(table)
    probs = np.clip(table.probabilities, 0.0, None)
    live = probs > 1e-15
    outs = np.zeros_like(table.outputs)
    outs[live] = table.outputs[live] / np.sqrt(probs[live])[:, None]
    success = np.clip(_readout_success(outs, zs, xs, byp, input_state), 0.0, 1.0)
    success[~live] = 0.0

    if shots is None:
        return GroundTeleport(byp.path_id, input_state, float(np.dot(probs, success)), None, None, success)
    rng = make_rng(seed, *cell)
    picks = rng.choice(len(probs), size=shots, p=probs / probs.sum())
    wins = int((rng.random(shots) < success[picks]).sum())
    return GroundTeleport(byp.path_id, input_state, wins / shots, shots, wins, success)


def fidelity_vs_alpha_sweep(family: HamiltonianFamily, alphas: Sequence[float], ns: Sequence[int],
                            inputs: int, shots: int | None, seed: int | None,
                            paths: Sequence[str] = ("upper", "lower"),
                            distribution: str = "xy") -> list[dict]:
    """Mean success frequency per (α, n, path) over random inputs.

    Rows are ordered by n, then α, then path.  Each (n, α) cell draws its
    inputs from its own seeded stream, shared by all paths.
    """
    for n in ns:
        _check_teleport_size(HamiltonianSpec(family, n, 0.0))
    rows = []
    cell = 0
    for n in ns:
        for alpha in alphas:
            spec = HamiltonianSpec(family, n, alpha)
            gs = ground_state(spec)
            states = sample_inputs(make_rng(seed, cell), inputs, distribution)
            for p_idx, path in enumerate(paths):
                fids = [
                    teleport_through_ground_state(spec, s, path, shots, seed, (cell, p_idx, i), gs).fidelity
                    for i, s in enumerate(states)
                ]
                mean = float(np.mean(fids)) if fids else float("nan")
                spread = float(np.std(fids) / math.sqrt(len(fids))) if fids else float("nan")
                rows.append({
                    "family": family.value, "n": n, "N": 2 * n + 3, "alpha": alpha, "path": path,
                    "inputs": inputs, "shots": shots if shots is not None else "exact",
                    "fidelity": mean, "stderr": spread, "degenerate": gs.degenerate,
                })
            cell += 1
    return rows
