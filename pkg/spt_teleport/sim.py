"""
Dense quantum-state simulation.

Two state representations share one set of operations:

    StateVector    — amplitudes of length 2^N      (N ≤ 16)
    DensityMatrix  — 2^N × 2^N matrix              (N ≤ 10)

Qubit q is tensor factor q, counted from the left, so in a flat index
qubit 0 is the most significant bit.  Operations are functional: each
returns a new state and never mutates its argument.

Measurement convention: outcome bit 0 ↔ eigenvalue +1 of the measured
observable.  For protocol work the full outcome distribution is taken
at once with branch_table(): every measured qubit is rotated so its
observable becomes Z, the measured axes are moved to the front and the
remaining output qubit to the back, and each row of the reshaped array
is one branch (unnormalized output amplitudes or output density block).

Random numbers come from numpy Generators over the counter-based Philox
bit generator; make_rng(seed, *key) derives independent streams for
sweep cells from a single recorded seed.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .defs import (
    MAX_DENSITY_QUBITS,
    MAX_STATEVECTOR_QUBITS,
    Gate,
    GateKind,
    GateList,
    MeasureBasis,
    pauli_2x2,
)
from .errors import (
    DimensionError,
    InvalidParameterError,
    NonHermitianError,
    ProtocolError,
    SizeLimitError,
)
from .pauli import PauliString
from .settings import Settings

logger = logging.getLogger(__name__)

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
CZ = np.diag([1, 1, 1, -1]).astype(complex)

# z_a · z_b over the two-qubit basis |00⟩, |01⟩, |10⟩, |11⟩
_ZZ_SIGNS = np.array([1.0, -1.0, -1.0, 1.0])

_debug = Settings.from_env().debug


def set_debug(enabled: bool) -> None:
    """Toggle invariant checks after every operation (SPT_DEBUG at import)."""
    global _debug
    _debug = enabled


def make_rng(seed: int | None, *key: int) -> np.random.Generator:
    """Philox generator for `seed`, independent per spawn key."""
    ss = np.random.SeedSequence(seed, spawn_key=tuple(key))
    return np.random.Generator(np.random.Philox(ss))


def _check_cap(num_qubits: int, cap: int, kind: str) -> None:
    if num_qubits > cap:
        raise SizeLimitError(f"{kind} simulation is capped at {cap} qubits, got {num_qubits}")


# ═══════════════════════════════════════════════════════════════════
# States
# ═══════════════════════════════════════════════════════════════════


@dataclass
class StateVector:
    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        _check_cap(self.num_qubits, MAX_STATEVECTOR_QUBITS, "statevector")
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if self.amplitudes.size != 1 << self.num_qubits:
            raise DimensionError(
                f"{self.amplitudes.size} amplitudes do not describe {self.num_qubits} qubits"
            )

    @classmethod
    def zeros(cls, num_qubits: int) -> StateVector:
        _check_cap(num_qubits, MAX_STATEVECTOR_QUBITS, "statevector")
        amps = np.zeros(1 << num_qubits, dtype=complex)
        amps[0] = 1.0
        return cls(num_qubits, amps)

    @classmethod
    def product(cls, vectors: Sequence[np.ndarray]) -> StateVector:
        """Tensor product of single-qubit vectors, qubit 0 first."""
        amps = np.ones(1, dtype=complex)
        for v in vectors:
            amps = np.kron(amps, np.asarray(v, dtype=complex))
        return cls(len(vectors), amps)

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.num_qubits)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass
class DensityMatrix:
    num_qubits: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        _check_cap(self.num_qubits, MAX_DENSITY_QUBITS, "density-matrix")
        d = 1 << self.num_qubits
        self.matrix = np.asarray(self.matrix, dtype=complex)
        if self.matrix.shape != (d, d):
            raise DimensionError(f"matrix of shape {self.matrix.shape} is not {d}×{d}")

    @classmethod
    def from_state(cls, state: StateVector) -> DensityMatrix:
        a = state.amplitudes
        return cls(state.num_qubits, np.outer(a, a.conj()))

    @classmethod
    def zeros(cls, num_qubits: int) -> DensityMatrix:
        _check_cap(num_qubits, MAX_DENSITY_QUBITS, "density-matrix")
        d = 1 << num_qubits
        m = np.zeros((d, d), dtype=complex)
        m[0, 0] = 1.0
        return cls(num_qubits, m)

    def tensor(self) -> np.ndarray:
        return self.matrix.reshape((2,) * (2 * self.num_qubits))

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def eigenvalues(self) -> np.ndarray:
        """Descending eigenvalues of the Hermitian part."""
        h = (self.matrix + self.matrix.conj().T) / 2
        return np.linalg.eigvalsh(h)[::-1]


QuantumState = Union[StateVector, DensityMatrix]


def check_invariants(state: QuantumState, tol: float = 1e-10) -> None:
    """Norm for statevectors; trace, Hermiticity and positivity for density matrices."""
    if isinstance(state, StateVector):
        norm = state.norm()
        if abs(norm - 1.0) > tol:
            raise AssertionError(f"statevector norm {norm!r} drifted from 1")
        return
    m = state.matrix
    if np.max(np.abs(m - m.conj().T)) > tol:
        raise AssertionError("density matrix is not Hermitian")
    if abs(state.trace() - 1.0) > tol:
        raise AssertionError(f"density matrix trace {state.trace()!r} drifted from 1")
    lowest = state.eigenvalues()[-1]
    if lowest < -tol:
        raise AssertionError(f"density matrix has eigenvalue {lowest!r} < 0")


def _debug_check(state: QuantumState) -> QuantumState:
    if _debug:
        check_invariants(state)
        logger.debug("invariants hold on %d-qubit %s", state.num_qubits, type(state).__name__)
    return state


# ═══════════════════════════════════════════════════════════════════
# Applying operators
# ═══════════════════════════════════════════════════════════════════


def _apply_matrix(tensor: np.ndarray, op: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    """Contract a 2^k × 2^k operator into `axes` of a rank-n qubit tensor."""
    k = len(axes)
    op_t = op.reshape((2,) * (2 * k))
    out = np.tensordot(op_t, tensor, axes=(list(range(k, 2 * k)), list(axes)))
    return np.moveaxis(out, list(range(k)), list(axes))


def _check_qubits(state: QuantumState, qubits: Sequence[int]) -> None:
    for q in qubits:
        if not 0 <= q < state.num_qubits:
            raise DimensionError(f"qubit {q} out of range for {state.num_qubits} qubits")
    if len(set(qubits)) != len(qubits):
        raise DimensionError(f"repeated qubit in {tuple(qubits)}")


def apply_unitary(state: QuantumState, u: np.ndarray, qubits: Sequence[int]) -> QuantumState:
    """U on the listed qubits (first listed = most significant in U)."""
    qubits = list(qubits)
    _check_qubits(state, qubits)
    n = state.num_qubits
    if isinstance(state, StateVector):
        t = _apply_matrix(state.tensor(), u, qubits)
        return _debug_check(StateVector(n, t.reshape(-1)))
    t = _apply_matrix(state.tensor(), u, qubits)
    t = _apply_matrix(t, u.conj(), [n + q for q in qubits])
    d = 1 << n
    return _debug_check(DensityMatrix(n, t.reshape(d, d)))


def apply_kraus(state: DensityMatrix, ops: Iterable[np.ndarray], qubits: Sequence[int]) -> DensityMatrix:
    """ρ → Σ_k K ρ K† on the listed qubits."""
    if not isinstance(state, DensityMatrix):
        raise ProtocolError("Kraus channels need a density matrix; convert with DensityMatrix.from_state")
    qubits = list(qubits)
    _check_qubits(state, qubits)
    n = state.num_qubits
    cols = [n + q for q in qubits]
    t = state.tensor()
    acc = np.zeros_like(t)
    for k in ops:
        acc += _apply_matrix(_apply_matrix(t, k, qubits), k.conj(), cols)
    d = 1 << n
    return _debug_check(DensityMatrix(n, acc.reshape(d, d)))


def rotation(letter: str, angle: float) -> np.ndarray:
    """e^{−i·angle·P/2} for a Pauli letter P."""
    return math.cos(angle / 2) * np.eye(2, dtype=complex) - 1j * math.sin(angle / 2) * pauli_2x2(letter)


def ising(epsilon: float = 0.0) -> np.ndarray:
    """e^{−i(π/4 + ε) Z⊗Z}; at ε = 0 equal to CZ up to local Z rotations."""
    return np.diag(np.exp(-1j * (math.pi / 4 + epsilon) * _ZZ_SIGNS))


def zz_rotation(epsilon: float) -> np.ndarray:
    """E(ε) = e^{−iε Z⊗Z}."""
    return np.diag(np.exp(-1j * epsilon * _ZZ_SIGNS))


def gate_matrix(gate: Gate) -> np.ndarray:
    kind = gate.kind
    if kind in (GateKind.INIT_PLUS, GateKind.HADAMARD):
        return HADAMARD
    if kind is GateKind.RX:
        return rotation("X", gate.param)
    if kind is GateKind.RY:
        return rotation("Y", gate.param)
    if kind is GateKind.RZ:
        return rotation("Z", gate.param)
    if kind is GateKind.ISING:
        return ising(gate.param)
    if kind is GateKind.ZZ:
        return zz_rotation(gate.param)
    if kind is GateKind.CZ:
        return CZ
    raise TypeError(f"{kind.value} is a channel, not a unitary")


def apply_gate(state: QuantumState, gate: Gate) -> QuantumState:
    """Apply one GateList element.  DEPOLARIZE2 needs a density matrix."""
    if gate.kind is GateKind.DEPOLARIZE2:
        from .noise import apply_depolarizing_2q
        if not isinstance(state, DensityMatrix):
            raise ProtocolError("a depolarizing channel needs density-matrix simulation")
        return apply_depolarizing_2q(state, gate.qubits, gate.param)
    return apply_unitary(state, gate_matrix(gate), gate.qubits)


def run_gates(gates: Iterable[Gate], state: QuantumState) -> QuantumState:
    for g in gates:
        state = apply_gate(state, g)
    return state


def prepare(circuit: GateList, *, mixed: bool | None = None, include_basis_changes: bool = False) -> QuantumState:
    """Run a compiled circuit from |0…0⟩.

    A density matrix is used when `mixed` is True, or when it is None and
    the circuit contains a channel.
    """
    if mixed is None:
        mixed = circuit.is_noisy_channel
    state: QuantumState = (
        DensityMatrix.zeros(circuit.num_qubits) if mixed else StateVector.zeros(circuit.num_qubits)
    )
    gates = circuit.gates if include_basis_changes else circuit.preparation
    return run_gates(gates, state)


# ═══════════════════════════════════════════════════════════════════
# Pauli strings on states
# ═══════════════════════════════════════════════════════════════════


def pauli_action(p: PauliString) -> tuple[np.ndarray, np.ndarray]:
    """(src, factor) with (Pψ)[j] = factor[j] · ψ[src[j]]."""
    n = p.num_qubits
    xm, zm = p.index_masks()
    src = np.arange(1 << n) ^ xm
    parity = np.zeros(1 << n, dtype=np.int64)
    for pos in range(n):
        if (zm >> pos) & 1:
            parity ^= (src >> pos) & 1
    n_y = (p.x & p.z).bit_count()
    factor = (1j ** ((p.phase + n_y) % 4)) * (1 - 2 * parity)
    return src, factor


def _check_width(state: QuantumState, p: PauliString) -> None:
    if p.num_qubits != state.num_qubits:
        raise DimensionError(f"{p.num_qubits}-qubit string on a {state.num_qubits}-qubit state")


def apply_pauli(state: StateVector, p: PauliString) -> StateVector:
    _check_width(state, p)
    src, factor = pauli_action(p)
    return StateVector(state.num_qubits, factor * state.amplitudes[src])


def expectation(state: QuantumState, p: PauliString) -> float:
    """⟨ψ|P|ψ⟩ or Tr(ρP) for a Hermitian string."""
    _check_width(state, p)
    if not p.is_hermitian:
        raise NonHermitianError(f"{p} has phase ±i; its expectation is not real")
    src, factor = pauli_action(p)
    if isinstance(state, StateVector):
        a = state.amplitudes
        return float(np.vdot(a, factor * a[src]).real)
    m = state.matrix
    k = np.arange(m.shape[0])
    return float(np.sum(factor * m[src, k]).real)


def is_stabilized(state: StateVector, p: PauliString, tol: float = 1e-10) -> bool:
    """P|ψ⟩ = |ψ⟩ amplitude by amplitude."""
    return bool(np.max(np.abs(apply_pauli(state, p).amplitudes - state.amplitudes)) < tol)


# ═══════════════════════════════════════════════════════════════════
# Measurement
# ═══════════════════════════════════════════════════════════════════


def observable(basis: MeasureBasis | Sequence[float]) -> np.ndarray:
    """±1-valued observable of a named basis or of an arbitrary Bloch axis."""
    if isinstance(basis, MeasureBasis):
        return basis.observable
    axis = np.asarray(basis, dtype=float)
    norm = np.linalg.norm(axis)
    if axis.shape != (3,) or norm == 0:
        raise InvalidParameterError(f"measurement axis must be a nonzero 3-vector, got {basis!r}")
    nx, ny, nz = axis / norm
    return nx * pauli_2x2("X") + ny * pauli_2x2("Y") + nz * pauli_2x2("Z")


def basis_change(obs: np.ndarray) -> np.ndarray:
    """V with V·obs·V† = Z, mapping the +1 eigenvector to |0⟩."""
    _, vecs = np.linalg.eigh(obs)
    return np.vstack([vecs[:, 1].conj(), vecs[:, 0].conj()])


def measure(state: QuantumState, qubit: int, basis: MeasureBasis | Sequence[float],
            rng: np.random.Generator | int | None) -> tuple[int, QuantumState]:
    """Born-rule sample of one qubit; returns (bit, collapsed renormalized state)."""
    if not 0 <= qubit < state.num_qubits:
        raise ProtocolError(f"qubit {qubit} is not part of this {state.num_qubits}-qubit state")
    if not isinstance(rng, np.random.Generator):
        rng = make_rng(rng)
    obs = observable(basis)
    projectors = ((np.eye(2) + obs) / 2, (np.eye(2) - obs) / 2)
    n = state.num_qubits
    if isinstance(state, StateVector):
        branch = _apply_matrix(state.tensor(), projectors[0], [qubit]).reshape(-1)
        p0 = float(np.vdot(branch, branch).real)
    else:
        p0 = float(np.trace(_apply_matrix(state.tensor(), projectors[0], [qubit])
                            .reshape(1 << n, 1 << n)).real)
    bit = 0 if rng.random() < p0 else 1
    prob = p0 if bit == 0 else 1.0 - p0
    if prob <= 0.0:
        raise ProtocolError("sampled a zero-probability outcome")
    proj = projectors[bit]
    if isinstance(state, StateVector):
        collapsed = _apply_matrix(state.tensor(), proj, [qubit]).reshape(-1) / math.sqrt(prob)
        return bit, _debug_check(StateVector(n, collapsed))
    t = _apply_matrix(_apply_matrix(state.tensor(), proj, [qubit]), proj.conj(), [n + qubit])
    return bit, _debug_check(DensityMatrix(n, t.reshape(1 << n, 1 << n) / prob))


@dataclass(frozen=True)
class Measurement:
    vertex: int
    qubit: int
    basis: MeasureBasis


@dataclass(frozen=True)
class MeasurementPlan:
    """Which qubits are measured in which basis, and which qubit is kept.

    `rotated` marks a state whose measured qubits were already rotated into
    the computational basis by the circuit's basis-change gates.
    """
    measurements: tuple[Measurement, ...]
    output_qubit: int
    rotated: bool = False

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(m.vertex for m in self.measurements)

    def bases(self) -> dict[int, MeasureBasis]:
        return {m.vertex: m.basis for m in self.measurements}


@dataclass(frozen=True)
class MeasurementRecord:
    outcomes: Mapping[int, int]
    bases: Mapping[int, MeasureBasis]
    probability: float

    def parity(self, vertices: Iterable[int]) -> int:
        return sum(self.outcomes[v] for v in vertices) % 2


@dataclass(frozen=True)
class Branch:
    """One outcome branch: its record and the normalized output state
    (2-vector for pure, 2×2 for mixed; None for zero-probability branches)."""
    record: MeasurementRecord
    output: np.ndarray | None


@dataclass
class BranchTable:
    """All 2^m outcome branches of a measurement plan, row b ↔ bits of b.

    Fields:
        bits          — (B, m) uint8, column j ↔ plan.measurements[j]
        probabilities — (B,)
        outputs       — (B, 2) amplitudes or (B, 2, 2) blocks, unnormalized
    """
    plan: MeasurementPlan
    bits: np.ndarray
    probabilities: np.ndarray
    outputs: np.ndarray

    @property
    def mixed(self) -> bool:
        return self.outputs.ndim == 3

    def __len__(self) -> int:
        return len(self.probabilities)

    def column(self, vertex: int) -> int:
        for j, m in enumerate(self.plan.measurements):
            if m.vertex == vertex:
                return j
        raise ProtocolError(f"vertex {vertex} is not measured by this plan")

    def parity(self, vertices: Iterable[int]) -> np.ndarray:
        """Per-branch parity of the outcome bits at `vertices`."""
        par = np.zeros(len(self), dtype=np.int64)
        for v in vertices:
            par ^= self.bits[:, self.column(v)]
        return par

    def record(self, b: int) -> MeasurementRecord:
        plan = self.plan
        return MeasurementRecord(
            outcomes={m.vertex: int(self.bits[b, j]) for j, m in enumerate(plan.measurements)},
            bases=plan.bases(),
            probability=float(self.probabilities[b]),
        )

    def normalized_output(self, b: int, cutoff: float = 1e-15) -> np.ndarray | None:
        p = self.probabilities[b]
        if p <= cutoff:
            return None
        return self.outputs[b] / (p if self.mixed else math.sqrt(p))


def branch_table(state: QuantumState, plan: MeasurementPlan) -> BranchTable:
    """Exact joint distribution of the plan's outcomes with conditional outputs."""
    n = state.num_qubits
    measured = [m.qubit for m in plan.measurements]
    covered = set(measured) | {plan.output_qubit}
    if len(covered) != len(measured) + 1 or covered != set(range(n)):
        raise ProtocolError(
            f"plan must measure every qubit except the output exactly once "
            f"(measured {sorted(measured)}, output {plan.output_qubit}, {n} qubits)"
        )
    if not plan.rotated:
        for m in plan.measurements:
            state = apply_unitary(state, basis_change(observable(m.basis)), [m.qubit])
    order = measured + [plan.output_qubit]
    m_count = len(measured)
    if isinstance(state, StateVector):
        t = np.transpose(state.tensor(), order).reshape(1 << m_count, 2)
        probs = np.sum(np.abs(t) ** 2, axis=1)
    else:
        t = np.transpose(state.tensor(), order + [n + q for q in order])
        t = t.reshape(1 << m_count, 2, 1 << m_count, 2)
        t = np.einsum("iaib->iab", t)
        probs = np.einsum("iaa->i", t).real
    shifts = np.arange(m_count - 1, -1, -1)
    bits = ((np.arange(1 << m_count)[:, None] >> shifts) & 1).astype(np.uint8)
    logger.debug("enumerated %d branches over %d measured qubits", len(probs), m_count)
    return BranchTable(plan, bits, probs, t)


def enumerate_branches(state: QuantumState, plan: MeasurementPlan) -> list[Branch]:
    table = branch_table(state, plan)
    return [Branch(table.record(b), table.normalized_output(b)) for b in range(len(table))]


# ═══════════════════════════════════════════════════════════════════
# Reduced states
# ═══════════════════════════════════════════════════════════════════


def partial_trace(state: QuantumState, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix on `keep` (kept qubits in ascending order)."""
    keep = sorted(set(keep))
    if not keep:
        raise InvalidParameterError("partial trace needs at least one kept qubit")
    _check_qubits(state, keep)
    n = state.num_qubits
    rest = [q for q in range(n) if q not in keep]
    dk, dr = 1 << len(keep), 1 << len(rest)
    if isinstance(state, StateVector):
        m = np.transpose(state.tensor(), keep + rest).reshape(dk, dr)
        return DensityMatrix(len(keep), m @ m.conj().T)
    t = np.transpose(state.tensor(), keep + rest + [n + q for q in keep] + [n + q for q in rest])
    t = t.reshape(dk, dr, dk, dr)
    return DensityMatrix(len(keep), np.einsum("arbr->ab", t))


def schmidt_spectrum(state: StateVector, region: Iterable[int]) -> np.ndarray:
    """Descending eigenvalues of ρ_region (zero-padded to 2^|region|), via SVD."""
    region = sorted(set(region))
    _check_qubits(state, region)
    rest = [q for q in range(state.num_qubits) if q not in region]
    m = np.transpose(state.tensor(), region + rest).reshape(1 << len(region), -1)
    sv = np.linalg.svd(m, compute_uv=False)
    out = np.zeros(1 << len(region))
    out[: len(sv)] = sv ** 2
    return np.sort(out)[::-1]
