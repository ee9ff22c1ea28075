"""
Phase-tracked Pauli strings.

A PauliString on N qubits is  i^k · σ_0 ⊗ σ_1 ⊗ … ⊗ σ_{N-1}  with every
σ_q ∈ {I, X, Y, Z} and k ∈ Z_4.  Letters are stored in symplectic form:
two integer bitmasks `x` and `z` where bit q carries the X and Z
components of the letter at qubit q:

    I = (0, 0)    X = (1, 0)    Z = (0, 1)    Y = (1, 1)

Y is the Hermitian Pauli Y (not XZ), so the phase k is exactly the
prefactor of the printed letters.  Multiplication moves through the
XZ-ordered form  i^{k + |x∧z|} X^x Z^z,  where commuting Z^{z1} past
X^{x2} costs (−1)^{|z1∧x2|}:

    k = k1 + k2 + |x1∧z1| + |x2∧z2| + 2·|z1∧x2| − |x3∧z3|   (mod 4)

Two strings commute iff |x1∧z2| + |z1∧x2| is even.

Text form:  sign prefix (+, -, +i, -i) followed by the letters, qubit 0
first, e.g. "+XIXXZ" or "-iZZ".

Helpers at the bottom build strings from sparse {qubit: letter} maps
and take ordered products.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Mapping

import numpy as np

from .defs import pauli_2x2
from .errors import DimensionError

_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LETTER = {bits: letter for letter, bits in _LETTER_BITS.items()}
_PHASE_PREFIX = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_PREFIX_PHASE = {"+": 0, "+i": 1, "-": 2, "-i": 3, "": 0, "i": 1}


# ═══════════════════════════════════════════════════════════════════
# PauliString
# ═══════════════════════════════════════════════════════════════════


@dataclass(frozen=True)
class PauliString:
    """Immutable phase-tracked Pauli string.

    Fields:
        num_qubits — N
        x, z       — symplectic bitmasks, bit q ↔ qubit q
        phase      — k in i^k, reduced mod 4
    """
    num_qubits: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self) -> None:
        if self.num_qubits < 1:
            raise DimensionError(f"a Pauli string needs at least one qubit, got {self.num_qubits}")
        full = (1 << self.num_qubits) - 1
        if (self.x | self.z) & ~full:
            raise DimensionError(f"bitmask exceeds {self.num_qubits} qubits")
        object.__setattr__(self, "phase", self.phase % 4)

    # ── Construction ──

    @classmethod
    def identity(cls, num_qubits: int) -> PauliString:
        return cls(num_qubits)

    @classmethod
    def from_letters(cls, letters: str, phase: int = 0) -> PauliString:
        """Build from a letter sequence, qubit 0 first: "XIZ" → X⊗I⊗Z."""
        x = z = 0
        for q, ch in enumerate(letters):
            try:
                bx, bz = _LETTER_BITS[ch]
            except KeyError:
                raise ValueError(f"invalid Pauli letter {ch!r} in {letters!r}") from None
            x |= bx << q
            z |= bz << q
        return cls(len(letters), x, z, phase)

    @classmethod
    def from_label(cls, label: str) -> PauliString:
        """Parse the text form, e.g. "+XIXXZ", "-iZZ", "YY"."""
        label = label.strip()
        i = 0
        while i < len(label) and label[i] in "+-i":
            i += 1
        prefix, letters = label[:i], label[i:]
        if prefix not in _PREFIX_PHASE:
            raise ValueError(f"invalid phase prefix {prefix!r} in {label!r}")
        return cls.from_letters(letters, _PREFIX_PHASE[prefix])

    @classmethod
    def from_sparse(cls, num_qubits: int, letters: Mapping[int, str], phase: int = 0) -> PauliString:
        """Build from {qubit: letter}; unspecified qubits carry I."""
        x = z = 0
        for q, ch in letters.items():
            if not 0 <= q < num_qubits:
                raise DimensionError(f"qubit {q} out of range for {num_qubits} qubits")
            bx, bz = _LETTER_BITS[ch]
            x |= bx << q
            z |= bz << q
        return cls(num_qubits, x, z, phase)

    # ── Views ──

    def letter(self, q: int) -> str:
        return _BITS_LETTER[((self.x >> q) & 1, (self.z >> q) & 1)]

    @property
    def letters(self) -> str:
        return "".join(self.letter(q) for q in range(self.num_qubits))

    @property
    def support(self) -> tuple[int, ...]:
        """Qubits carrying a non-identity letter, ascending."""
        mask = self.x | self.z
        return tuple(q for q in range(self.num_qubits) if (mask >> q) & 1)

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    @property
    def is_identity(self) -> bool:
        return (self.x | self.z) == 0

    @property
    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    @property
    def sign(self) -> complex:
        return (1, 1j, -1, -1j)[self.phase]

    def with_phase(self, phase: int) -> PauliString:
        return PauliString(self.num_qubits, self.x, self.z, phase)

    def unsigned(self) -> PauliString:
        """Same letters, phase +1."""
        return self.with_phase(0)

    def restrict(self, qubits: Iterable[int], keep_phase: bool = True) -> PauliString:
        """Keep the letters on `qubits`, identity elsewhere."""
        mask = 0
        for q in qubits:
            if not 0 <= q < self.num_qubits:
                raise DimensionError(f"qubit {q} out of range for {self.num_qubits} qubits")
            mask |= 1 << q
        return PauliString(self.num_qubits, self.x & mask, self.z & mask,
                           self.phase if keep_phase else 0)

    def index_masks(self) -> tuple[int, int]:
        """X and Z masks over statevector indices (qubit 0 = most significant bit)."""
        n = self.num_qubits
        xm = zm = 0
        for q in range(n):
            pos = n - 1 - q
            xm |= ((self.x >> q) & 1) << pos
            zm |= ((self.z >> q) & 1) << pos
        return xm, zm

    def to_matrix(self) -> np.ndarray:
        """Dense 2^N × 2^N matrix (qubit 0 = leftmost Kronecker factor)."""
        mats = [pauli_2x2(self.letter(q)) for q in range(self.num_qubits)]
        return self.sign * reduce(np.kron, mats)

    # ── Algebra ──

    def __mul__(self, other: PauliString) -> PauliString:
        return multiply(self, other)

    def __neg__(self) -> PauliString:
        return self.with_phase(self.phase + 2)

    def __str__(self) -> str:
        return _PHASE_PREFIX[self.phase] + self.letters

    def __repr__(self) -> str:
        return f"PauliString({str(self)!r})"


# ═══════════════════════════════════════════════════════════════════
# Operations
# ═══════════════════════════════════════════════════════════════════


def _check_sizes(a: PauliString, b: PauliString) -> None:
    if a.num_qubits != b.num_qubits:
        raise DimensionError(
            f"Pauli strings act on {a.num_qubits} and {b.num_qubits} qubits"
        )


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """The ordered product a·b with its exact phase."""
    _check_sizes(a, b)
    x, z = a.x ^ b.x, a.z ^ b.z
    k = (
        a.phase + b.phase
        + (a.x & a.z).bit_count() + (b.x & b.z).bit_count()
        + 2 * (a.z & b.x).bit_count()
        - (x & z).bit_count()
    )
    return PauliString(a.num_qubits, x, z, k)


def commutes(a: PauliString, b: PauliString) -> bool:
    """True iff the number of anticommuting sites is even."""
    _check_sizes(a, b)
    return ((a.x & b.z).bit_count() + (a.z & b.x).bit_count()) % 2 == 0


def product(strings: Iterable[PauliString], num_qubits: int | None = None) -> PauliString:
    """Ordered product s_1 · s_2 · …; an empty product needs `num_qubits`."""
    strings = list(strings)
    if not strings:
        if num_qubits is None:
            raise ValueError("empty product needs num_qubits")
        return PauliString.identity(num_qubits)
    return reduce(multiply, strings)


def zz(num_qubits: int, a: int, b: int) -> PauliString:
    """Z_a Z_b, the generator of ZZ crosstalk."""
    return PauliString.from_sparse(num_qubits, {a: "Z", b: "Z"})


def single(num_qubits: int, q: int, letter: str) -> PauliString:
    return PauliString.from_sparse(num_qubits, {q: letter})
