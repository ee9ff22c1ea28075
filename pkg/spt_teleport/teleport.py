"""
The teleportation protocol on a resource graph.

The input qubit I is prepared in |φ_I⟩, the resource state is built
around it, every qubit except the output is measured, and the output is
corrected by the byproduct operator of the chosen path.


Byproducts from the path symmetries
───────────────────────────────────
On the resource with an arbitrary input, K_I acts as logical X and Z_I as
logical Z.  Write the path strings as

    s_x = c_x · X_I · M_x · Q_x          s_z = c_z · Z_I · M_z · Q_z

with M the letters on measured qubits (they must match the measured
bases) and Q the letter left on the output.  After the measurements the
map φ_I → φ_O is W with  W·X = ±Q_x·W  and  W·Z = ±Q_z·W,  the signs
being c times the eigenvalues read off the outcomes.  Hence

    (Q_x, Q_z) = (X, Z)   W = Z^a X^b       a from s_x, b from s_z
    (Q_x, Q_z) = (Z, X)   W = Z^a X^b H     b from s_x, a from s_z

where each exponent is the outcome parity over the measured support of
its string plus a constant offset (1 when c is negative, counting one
extra sign per Y letter on a −Y-measured qubit).  The correction applied
to the output is W⁻¹ = F0 · X^b Z^a.


Fidelity
────────
fidelity_exact sums |⟨φ_I| W_b⁻¹ |ψ_b⟩|² over all branches b, with the
unnormalized conditional outputs ψ_b, so no branch probabilities have to
be divided out.  run_teleport samples a branch per shot and then the
output measurement in the input's basis; its success rate estimates the
same number.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from .defs import QUANTUM_THRESHOLD, RANDOM_CLASSICAL, InputState, MeasureBasis, pauli_2x2
from .errors import InvalidParameterError, ProtocolError
from .format import SparseFormat, render_byproduct
from .graphs import GraphSpec, compile_preparation
from .noise import ErrorSpec
from .sim import (
    HADAMARD,
    BranchTable,
    MeasurementRecord,
    branch_table,
    make_rng,
    prepare,
)

logger = logging.getLogger(__name__)

_X = pauli_2x2("X")
_Z = pauli_2x2("Z")
_I2 = np.eye(2, dtype=complex)


class OutputFixup(Enum):
    IDENTITY = "identity"
    HADAMARD = "hadamard"

    @property
    def matrix(self) -> np.ndarray:
        return HADAMARD if self is OutputFixup.HADAMARD else _I2


@dataclass(frozen=True)
class ByproductOperator:
    """W = Z^z X^x F0 with z, x the outcome parities over vertex sets plus offsets."""
    path_id: str
    z_vertices: tuple[int, ...]
    x_vertices: tuple[int, ...]
    fixup: OutputFixup
    z_offset: int = 0
    x_offset: int = 0

    def exponents(self, outcomes: Mapping[int, int]) -> tuple[int, int]:
        """(z, x) for one outcome record."""
        z = (sum(outcomes[v] for v in self.z_vertices) + self.z_offset) % 2
        x = (sum(outcomes[v] for v in self.x_vertices) + self.x_offset) % 2
        return z, x

    def exponent_arrays(self, table: BranchTable) -> tuple[np.ndarray, np.ndarray]:
        return table.parity(self.z_vertices) ^ self.z_offset, table.parity(self.x_vertices) ^ self.x_offset

    def pauli(self, outcomes: Mapping[int, int]) -> np.ndarray:
        """Z^z X^x for one record."""
        z, x = self.exponents(outcomes)
        return np.linalg.matrix_power(_Z, z) @ np.linalg.matrix_power(_X, x)

    def correction_matrix(self, outcomes: Mapping[int, int]) -> np.ndarray:
        z, x = self.exponents(outcomes)
        return fixup_correction(self.fixup, z, x)

    def describe(self) -> str:
        return render_byproduct(self, SparseFormat())


def fixup_correction(fixup: OutputFixup, z: int, x: int) -> np.ndarray:
    """W⁻¹ = F0 · X^x · Z^z."""
    m = fixup.matrix
    if x:
        m = m @ _X
    if z:
        m = m @ _Z
    return m


def byproduct_for_path(g: GraphSpec, path_id: str,
                       bases: Mapping[int, MeasureBasis] | None = None) -> ByproductOperator:
    """Derive the byproduct of a path from its symmetry pair and the measured bases."""
    inp = g.input_vertex
    if inp is None:
        raise ProtocolError(f"{g.name} has no input vertex to teleport from")
    sym = g.path(path_id)
    basis = g.measurement_plan(bases).bases()
    if basis[inp] is not MeasureBasis.X:
        raise ProtocolError(f"the input must be measured in X, not {basis[inp].value}")
    out_q = g.qubit(g.output_vertex)

    def split(s, lead: str) -> tuple[list[int], str, int]:
        if not s.is_hermitian:
            raise ProtocolError(f"path string {s} is not Hermitian")
        if s.letter(g.qubit(inp)) != lead:
            raise ProtocolError(f"path {sym.path_id!r}: string {s} carries {s.letter(g.qubit(inp))} "
                                f"on the input, expected {lead}")
        support, sign = [], 1 if s.phase == 0 else -1
        for v, b in basis.items():
            if v == inp:
                continue
            letter = s.letter(g.qubit(v))
            if letter == "I":
                continue
            if letter != b.letter:
                raise ProtocolError(f"path {sym.path_id!r}: string {s} has {letter} on vertex "
                                    f"{g.vertex(v).label}, measured in {b.value}")
            support.append(v)
            sign *= b.sign
        q = s.letter(out_q)
        if q == "I":
            raise ProtocolError(f"path {sym.path_id!r}: string {s} does not reach the output")
        return support, q, sign

    mx, qx, cx = split(sym.s_x, "X")
    mz, qz, cz = split(sym.s_z, "Z")
    ax = tuple([inp] + mx)
    az = tuple(mz)
    if (qx, qz) == ("X", "Z"):
        return ByproductOperator(sym.path_id, ax, az, OutputFixup.IDENTITY, int(cx < 0), int(cz < 0))
    if (qx, qz) == ("Z", "X"):
        return ByproductOperator(sym.path_id, az, ax, OutputFixup.HADAMARD, int(cz < 0), int(cx < 0))
    raise ProtocolError(f"path {sym.path_id!r}: output letters ({qx}, {qz}) are not a supported frame")


# ═══════════════════════════════════════════════════════════════════
# Exact branch evaluation
# ═══════════════════════════════════════════════════════════════════


def teleport_branches(g: GraphSpec, errors: Sequence[ErrorSpec], input_state: InputState,
                      bases: Mapping[int, MeasureBasis] | None = None) -> BranchTable:
    """Prepare the perturbed resource around the input and enumerate all branches."""
    if g.input_vertex is None:
        raise ProtocolError(f"{g.name} has no input vertex to teleport from")
    plan = g.measurement_plan(bases)
    circuit = compile_preparation(g, errors, input_state, plan)
    state = prepare(circuit, include_basis_changes=True)
    return branch_table(state, replace(plan, rotated=True))


def corrected_outputs(table: BranchTable, byproduct: ByproductOperator) -> np.ndarray:
    """W_b⁻¹ applied to every (unnormalized) branch output."""
    zs, xs = byproduct.exponent_arrays(table)
    out = np.empty_like(table.outputs)
    for z in (0, 1):
        for x in (0, 1):
            mask = (zs == z) & (xs == x)
            if not mask.any():
                continue
            c = fixup_correction(byproduct.fixup, z, x)
            if table.mixed:
                out[mask] = c @ table.outputs[mask] @ c.conj().T
            else:
                out[mask] = table.outputs[mask] @ c.T
    return out


def branch_fidelities(table: BranchTable, byproduct: ByproductOperator, target: InputState) -> np.ndarray:
    """Unnormalized per-branch overlaps p_b · F_b."""
    outs = corrected_outputs(table, byproduct)
    phi = target.vector
    if table.mixed:
        return np.einsum("i,bij,j->b", phi.conj(), outs, phi).real
    return np.abs(outs @ phi.conj()) ** 2


def fidelity_exact(g: GraphSpec, errors: Sequence[ErrorSpec], input_state: InputState, path_id: str,
                   bases: Mapping[int, MeasureBasis] | None = None) -> float:
    """Average corrected-output fidelity over all outcome branches."""
    table = teleport_branches(g, errors, input_state, bases)
    byp = byproduct_for_path(g, path_id, bases)
    return float(np.clip(branch_fidelities(table, byp, input_state).sum(), 0.0, 1.0))


# ═══════════════════════════════════════════════════════════════════
# Channel classification and inputs
# ═══════════════════════════════════════════════════════════════════


class ChannelClass(Enum):
    QUANTUM = "quantum"
    CLASSICAL = "classical"
    RANDOM = "random"


def classify_channel(fidelity: float, random_tol: float = 1e-2) -> ChannelClass:
    """quantum iff F > 2/3; random when F is within `random_tol` of 1/2."""
    if not -1e-9 <= fidelity <= 1 + 1e-9:
        raise InvalidParameterError(f"fidelity must lie in [0, 1], got {fidelity!r}")
    if fidelity > QUANTUM_THRESHOLD:
        return ChannelClass.QUANTUM
    if abs(fidelity - RANDOM_CLASSICAL) <= random_tol:
        return ChannelClass.RANDOM
    return ChannelClass.CLASSICAL


def sample_inputs(rng: np.random.Generator, count: int, distribution: str = "bloch") -> list[InputState]:
    """Uniform on the Bloch sphere, or uniform azimuth on the XY plane."""
    if count < 0:
        raise InvalidParameterError(f"input count must be ≥ 0, got {count}")
    azimuth = rng.uniform(0.0, 2 * math.pi, size=count)
    if distribution == "xy":
        return [InputState.in_plane(float(a)) for a in azimuth]
    if distribution == "bloch":
        polar = np.arccos(rng.uniform(-1.0, 1.0, size=count))
        return [InputState(float(p), float(a)) for p, a in zip(polar, azimuth)]
    raise InvalidParameterError(f"unknown input distribution {distribution!r} (expected bloch or xy)")


# ═══════════════════════════════════════════════════════════════════
# Sampled runs
# ═══════════════════════════════════════════════════════════════════


@dataclass(frozen=True)
class TeleportResult:
    """One shot: the outcome record, the corrected output and its fidelity.

    `success` is the sampled output measurement in the input's basis
    (True ↔ the input's own eigenvalue was observed).
    """
    record: MeasurementRecord
    path_id: str
    corrected_output: np.ndarray
    fidelity: float
    success: bool

    @property
    def channel_class(self) -> ChannelClass:
        return classify_channel(self.fidelity)


@dataclass(frozen=True)
class TeleportRun:
    path_id: str
    input_state: InputState
    seed: int | None
    results: tuple[TeleportResult, ...]
    fidelity: float
    stderr: float

    @property
    def shots(self) -> int:
        return len(self.results)

    @property
    def channel_class(self) -> ChannelClass:
        return classify_channel(self.fidelity)


def _stream(seed: int | None, cell: int | Sequence[int]) -> np.random.Generator:
    return make_rng(seed, *((cell,) if isinstance(cell, int) else cell))


def binomial_stderr(p: float, shots: int) -> float:
    return math.sqrt(max(p * (1.0 - p), 0.0) / shots) if shots else 0.0


def _sample_branches(table: BranchTable, rng: np.random.Generator, shots: int) -> np.ndarray:
    probs = np.clip(table.probabilities, 0.0, None)
    return rng.choice(len(probs), size=shots, p=probs / probs.sum())


def run_teleport(g: GraphSpec, errors: Sequence[ErrorSpec], input_state: InputState, path_id: str,
                 shots: int, seed: int | None, cell: int | Sequence[int] = 0) -> TeleportRun:
    """Shot-by-shot protocol; the aggregate is the success frequency."""
    if shots < 1:
        raise InvalidParameterError(f"shots must be ≥ 1, got {shots}")
    rng = _stream(seed, cell)
    table = teleport_branches(g, errors, input_state)
    byp = byproduct_for_path(g, path_id)
    outs = corrected_outputs(table, byp)
    weights = branch_fidelities(table, byp, input_state)
    picks = _sample_branches(table, rng, shots)
    draws = rng.random(shots)

    results = []
    for b, u in zip(picks, draws):
        p = table.probabilities[b]
        f = float(min(max(weights[b] / p, 0.0), 1.0))
        out = outs[b] / (p if table.mixed else math.sqrt(p))
        results.append(TeleportResult(table.record(int(b)), byp.path_id, out, f, bool(u < f)))
    mean = sum(r.success for r in results) / shots
    logger.debug("teleport %s along %s: %d shots, F=%.4f", g.name, byp.path_id, shots, mean)
    return TeleportRun(byp.path_id, input_state, seed, tuple(results), mean, binomial_stderr(mean, shots))


# ═══════════════════════════════════════════════════════════════════
# Tomography
# ═══════════════════════════════════════════════════════════════════


@dataclass(frozen=True)
class TomographyResult:
    """Reconstructed output ρ_m = (I + r·σ)/2 and F = Tr(ρ_in ρ_m).

    `clipped` is set when the estimated |r| exceeded 1 and was rescaled
    onto the sphere (sampling noise pushed ρ_m out of the PSD cone).
    """
    bloch: np.ndarray
    rho: np.ndarray
    fidelity: float
    clipped: bool = False
    shots_per_basis: int | None = None


def _from_bloch(r: np.ndarray) -> np.ndarray:
    return (_I2 + r[0] * _X + r[1] * pauli_2x2("Y") + r[2] * _Z) / 2


def _tomography(r: np.ndarray, target: InputState, shots: int | None) -> TomographyResult:
    norm = float(np.linalg.norm(r))
    clipped = norm > 1.0
    if clipped:
        logger.warning("reconstructed Bloch vector has length %.4f > 1; projecting onto the sphere", norm)
        r = r / norm
    fid = (1.0 + float(np.dot(target.bloch, r))) / 2
    return TomographyResult(r, _from_bloch(r), float(np.clip(fid, 0.0, 1.0)), clipped, shots)


def _averaged_output(g: GraphSpec, errors: Sequence[ErrorSpec], input_state: InputState,
                     path_id: str) -> tuple[BranchTable, np.ndarray]:
    table = teleport_branches(g, errors, input_state)
    outs = corrected_outputs(table, byproduct_for_path(g, path_id))
    if table.mixed:
        return table, outs
    return table, np.einsum("bi,bj->bij", outs, outs.conj())


def tomography_exact(g: GraphSpec, errors: Sequence[ErrorSpec], input_state: InputState,
                     path_id: str) -> TomographyResult:
    """Branch-averaged corrected output state, without sampling."""
    _, rhos = _averaged_output(g, errors, input_state, path_id)
    rho = rhos.sum(axis=0)
    r = np.array([np.trace(rho @ pauli_2x2(a)).real for a in "XYZ"])
    return _tomography(r, input_state, None)


def tomography_teleport(g: GraphSpec, errors: Sequence[ErrorSpec], input_state: InputState,
                        path_id: str, shots: int, seed: int | None, cell: int | Sequence[int] = 0) -> TomographyResult:
    """Estimate ⟨X⟩, ⟨Y⟩, ⟨Z⟩ of the corrected output from `shots` runs per basis."""
    if shots < 1:
        raise InvalidParameterError(f"shots per basis must be ≥ 1, got {shots}")
    if not input_state.in_xy_plane:
        logger.info("tomography input %s is off the XY plane; reconstruction is basis-independent",
                    input_state.label())
    rng = _stream(seed, cell)
    table, rhos = _averaged_output(g, errors, input_state, path_id)
    probs = np.clip(table.probabilities, 0.0, None)
    r = np.empty(3)
    for i, axis in enumerate("XYZ"):
        # conditional ⟨σ⟩ per branch: Tr(ρ_b σ) / p_b
        exp_b = np.einsum("bij,ji->b", rhos, pauli_2x2(axis)).real
        with np.errstate(divide="ignore", invalid="ignore"):
            exp_b = np.where(probs > 0, exp_b / np.where(probs > 0, probs, 1.0), 0.0)
        picks = _sample_branches(table, rng, shots)
        plus = rng.random(shots) < (1.0 + exp_b[picks]) / 2
        r[i] = (2 * plus.sum() - shots) / shots
    return _tomography(r, input_state, shots)
