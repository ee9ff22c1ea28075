"""
Core type definitions shared across the package.

  VertexKind    — enum: X, Y (letter at the home vertex of a stabilizer)
  Role          — enum: INPUT, MIDDLE, OUTPUT
  MeasureBasis  — enum: X, Y, MINUS_Y, Z, NONE
  InputState    — a pure single-qubit state given by its Bloch angles
  VertexId      — alias for the 1-based integer vertex id
  GateKind      — enum of the gate and channel kinds a circuit can hold
  Gate          — one gate with its target qubits and parameter
  GateList      — a compiled circuit: preparation followed by basis changes

Size caps and the fidelity reference lines live here too, since the
simulator, the teleportation protocol and the CLI all consult them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

# Vertex ids are 1-based and ascend with the tensor-product position:
# vertex v is qubit v - 1, the leftmost factor being qubit 0.
VertexId = int

# ── Dense simulation caps ──

MAX_STATEVECTOR_QUBITS = 16
MAX_DENSITY_QUBITS = 10

# ── Fidelity reference lines ──

QUANTUM_THRESHOLD = 2.0 / 3.0
RANDOM_CLASSICAL = 0.5


# ═══════════════════════════════════════════════════════════════════
# Vertex attributes
# ═══════════════════════════════════════════════════════════════════


class VertexKind(Enum):
    """Which Pauli sits at the home vertex of K_v = P_v · Π Z_neighbours."""
    X = "X"
    Y = "Y"


class Role(Enum):
    INPUT = "input"
    MIDDLE = "middle"
    OUTPUT = "output"


_PAULI_2x2 = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_2x2(letter: str) -> np.ndarray:
    """The 2×2 matrix of a single Pauli letter (a fresh copy)."""
    return _PAULI_2x2[letter].copy()


class MeasureBasis(Enum):
    """Single-qubit measurement basis.  Outcome bit 0 ↔ eigenvalue +1.

    MINUS_Y measures the observable −Y, so bit 0 means Y = −1.
    """
    X = "X"
    Y = "Y"
    MINUS_Y = "-Y"
    Z = "Z"
    NONE = "none"

    @property
    def letter(self) -> str | None:
        """Pauli letter of the measured observable, ignoring its sign."""
        if self is MeasureBasis.NONE:
            return None
        return self.value.lstrip("-")

    @property
    def sign(self) -> int:
        return -1 if self is MeasureBasis.MINUS_Y else 1

    @property
    def observable(self) -> np.ndarray:
        if self is MeasureBasis.NONE:
            raise ValueError("basis 'none' has no observable")
        return self.sign * pauli_2x2(self.letter)

    @classmethod
    def parse(cls, text: str) -> MeasureBasis:
        key = text.strip().upper()
        for b in cls:
            if b.value.upper() == key or b.name == key:
                return b
        raise ValueError(f"unknown measurement basis {text!r}")


# ═══════════════════════════════════════════════════════════════════
# Input state
# ═══════════════════════════════════════════════════════════════════


@dataclass(frozen=True)
class InputState:
    """|φ⟩ = cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩.

    Fields:
        polar   — θ, angle from +z
        azimuth — φ, angle in the XY plane from +x

    Example:
        InputState(math.pi / 2, 0.0)   # |+⟩
        InputState(0.0, 0.0)           # |0⟩
    """
    polar: float
    azimuth: float = 0.0

    @classmethod
    def zero(cls) -> InputState:
        return cls(0.0, 0.0)

    @classmethod
    def one(cls) -> InputState:
        return cls(math.pi, 0.0)

    @classmethod
    def plus(cls) -> InputState:
        return cls(math.pi / 2, 0.0)

    @classmethod
    def minus(cls) -> InputState:
        return cls(math.pi / 2, math.pi)

    @classmethod
    def in_plane(cls, azimuth: float) -> InputState:
        """A state on the equator of the Bloch sphere."""
        return cls(math.pi / 2, azimuth)

    @property
    def vector(self) -> np.ndarray:
        return np.array(
            [math.cos(self.polar / 2), np.exp(1j * self.azimuth) * math.sin(self.polar / 2)],
            dtype=complex,
        )

    @property
    def density(self) -> np.ndarray:
        v = self.vector
        return np.outer(v, v.conj())

    @property
    def bloch(self) -> np.ndarray:
        """Unit Bloch vector (x, y, z)."""
        return np.array([
            math.sin(self.polar) * math.cos(self.azimuth),
            math.sin(self.polar) * math.sin(self.azimuth),
            math.cos(self.polar),
        ])

    @property
    def in_xy_plane(self) -> bool:
        return abs(self.polar - math.pi / 2) < 1e-12

    def label(self) -> str:
        return f"polar:{self.polar:.6g},{self.azimuth:.6g}"


# ═══════════════════════════════════════════════════════════════════
# Gate lists
# ═══════════════════════════════════════════════════════════════════


class GateKind(Enum):
    """Operations a compiled preparation circuit may contain.

    INIT_PLUS    — H on a qubit in the |0⟩ reference (circuits start from |0…0⟩)
    RX / RY / RZ — e^{−i·angle·P/2}
    HADAMARD     — H
    ISING        — e^{−i(π/4 + ε) Z⊗Z}, the entangling gate of a link
    ZZ           — e^{−iε Z⊗Z}, idle crosstalk between non-linked qubits
    CZ           — controlled-Z
    DEPOLARIZE2  — two-qubit depolarizing channel with probability p
    """
    INIT_PLUS = "init_plus"
    RX = "rx"
    RY = "ry"
    RZ = "rz"
    HADAMARD = "h"
    ISING = "ising"
    ZZ = "zz"
    CZ = "cz"
    DEPOLARIZE2 = "depol2"

    @property
    def arity(self) -> int:
        return 2 if self in _TWO_QUBIT else 1


_TWO_QUBIT = frozenset({GateKind.ISING, GateKind.ZZ, GateKind.CZ, GateKind.DEPOLARIZE2})


@dataclass(frozen=True)
class Gate:
    """One operation on qubit indices (0-based).

    `param` is the rotation angle, the crosstalk ε or the depolarizing
    probability depending on `kind`; unused for INIT_PLUS, HADAMARD, CZ.
    """
    kind: GateKind
    qubits: tuple[int, ...]
    param: float = 0.0

    def __post_init__(self) -> None:
        if len(self.qubits) != self.kind.arity:
            raise ValueError(f"{self.kind.value} acts on {self.kind.arity} qubit(s), got {self.qubits}")
        if self.kind.arity == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError(f"{self.kind.value} needs two distinct qubits, got {self.qubits}")

    def __str__(self) -> str:
        qs = ",".join(str(q + 1) for q in self.qubits)
        if self.kind in (GateKind.INIT_PLUS, GateKind.HADAMARD, GateKind.CZ):
            return f"{self.kind.value}({qs})"
        return f"{self.kind.value}({qs}; {self.param:.6g})"


@dataclass(frozen=True)
class GateList:
    """A compiled circuit.

    `preparation` builds the (possibly noisy) resource state; `basis_changes`
    rotates every measured qubit so its measured observable becomes Z.
    """
    num_qubits: int
    preparation: tuple[Gate, ...]
    basis_changes: tuple[Gate, ...] = ()

    @property
    def gates(self) -> tuple[Gate, ...]:
        return self.preparation + self.basis_changes

    @property
    def is_noisy_channel(self) -> bool:
        """True when a density matrix is required (a channel is present)."""
        return any(g.kind is GateKind.DEPOLARIZE2 for g in self.preparation)

    def ising_gates(self) -> tuple[Gate, ...]:
        return tuple(g for g in self.preparation if g.kind is GateKind.ISING)
