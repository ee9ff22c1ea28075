"""
Error injection.

Three located perturbations, all identified by 1-based vertex ids:

    ZZCrosstalk(a, b, ε)         E(ε) = e^{−iε Z_a Z_b}
    SingleQubitError(v, P, θ)    e^{−iθ P_v / 2},  P ∈ {X, Y, Z}
    Depolarizing2Q(p)            two-qubit depolarizing channel after every
                                 entangling gate (needs a density matrix)

Text forms (CLI):   zz:3,5,0.3     x1q:7,X,0.4     depol2q:0.02
JSON forms (configs): {"zz": [3, 5, 0.3]}, {"x1q": [7, "X", 0.4]}, {"depol2q": 0.02}

For symmetry filtering an error is represented by its generator string
(Z_a Z_b or P_v): a string commuting with the generator commutes with the
unitary for every angle.  The depolarizing channel has no generator.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import reduce
from typing import TYPE_CHECKING, Any, Sequence, Union

import numpy as np

from .defs import pauli_2x2
from .errors import ConfigError, InvalidParameterError, UnknownVertexError
from .pauli import PauliString, single, zz
from .sim import DensityMatrix, QuantumState, apply_kraus, apply_unitary, rotation, zz_rotation

if TYPE_CHECKING:
    from .graphs import GraphSpec

AXES = ("X", "Y", "Z")


@dataclass(frozen=True)
class ZZCrosstalk:
    a: int
    b: int
    epsilon: float

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise InvalidParameterError(f"crosstalk needs two distinct vertices, got ({self.a}, {self.b})")

    @property
    def pair(self) -> tuple[int, int]:
        return (min(self.a, self.b), max(self.a, self.b))

    def generator(self, g: GraphSpec) -> PauliString:
        return zz(g.num_qubits, g.qubit(self.a), g.qubit(self.b))

    def to_json(self) -> dict[str, Any]:
        return {"zz": [self.a, self.b, self.epsilon]}

    def __str__(self) -> str:
        return f"zz:{self.a},{self.b},{self.epsilon:g}"


@dataclass(frozen=True)
class SingleQubitError:
    vertex: int
    axis: str
    theta: float

    def __post_init__(self) -> None:
        if self.axis not in AXES:
            raise InvalidParameterError(f"error axis must be one of {AXES}, got {self.axis!r}")

    def generator(self, g: GraphSpec) -> PauliString:
        return single(g.num_qubits, g.qubit(self.vertex), self.axis)

    def to_json(self) -> dict[str, Any]:
        return {"x1q": [self.vertex, self.axis, self.theta]}

    def __str__(self) -> str:
        return f"x1q:{self.vertex},{self.axis},{self.theta:g}"


@dataclass(frozen=True)
class Depolarizing2Q:
    probability: float

    def __post_init__(self) -> None:
        _check_probability(self.probability)

    def generator(self, g: GraphSpec) -> None:
        return None

    def to_json(self) -> dict[str, Any]:
        return {"depol2q": self.probability}

    def __str__(self) -> str:
        return f"depol2q:{self.probability:g}"


ErrorSpec = Union[ZZCrosstalk, SingleQubitError, Depolarizing2Q]


def _check_probability(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"depolarizing probability must lie in [0, 1], got {p!r}")


# ═══════════════════════════════════════════════════════════════════
# Parsing
# ═══════════════════════════════════════════════════════════════════


def _number(value: Any, what: str) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{what} must be a number, got {value!r}") from None


def _vertex(value: Any) -> int:
    if isinstance(value, bool):
        raise ConfigError(f"vertex id must be an integer, got {value!r}")
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"vertex id must be an integer, got {value!r}") from None


def parse_error(spec: str | dict[str, Any]) -> ErrorSpec:
    """ErrorSpec from its text form or its JSON object."""
    if isinstance(spec, str):
        kind, sep, rest = spec.strip().partition(":")
        if not sep:
            raise ConfigError(f"error spec {spec!r} is not of the form kind:args")
        args: Any = [a.strip() for a in rest.split(",")]
        if kind == "depol2q":
            if len(args) != 1:
                raise ConfigError(f"depol2q takes one probability, got {rest!r}")
            args = args[0]
    elif isinstance(spec, dict) and len(spec) == 1:
        ((kind, args),) = spec.items()
    else:
        raise ConfigError(f"error spec must be text or a one-key object, got {spec!r}")

    try:
        if kind == "zz":
            if len(args) != 3:
                raise ConfigError(f"zz takes vertex, vertex, epsilon; got {args!r}")
            return ZZCrosstalk(_vertex(args[0]), _vertex(args[1]), _number(args[2], "epsilon"))
        if kind == "x1q":
            if len(args) != 3:
                raise ConfigError(f"x1q takes vertex, axis, theta; got {args!r}")
            return SingleQubitError(_vertex(args[0]), str(args[1]).upper(), _number(args[2], "theta"))
        if kind == "depol2q":
            return Depolarizing2Q(_number(args, "probability"))
    except InvalidParameterError as e:
        raise ConfigError(str(e)) from e
    raise ConfigError(f"unknown error kind {kind!r} (expected zz, x1q or depol2q)")


def error_generators(g: GraphSpec, errors: Sequence[ErrorSpec]) -> list[PauliString]:
    """Generator strings of the coherent errors; channels contribute none."""
    gens = (e.generator(g) for e in errors)
    return [p for p in gens if p is not None]


# ═══════════════════════════════════════════════════════════════════
# Applying errors to states
# ═══════════════════════════════════════════════════════════════════


def apply_crosstalk(state: QuantumState, g: GraphSpec, link: tuple[int, int], epsilon: float) -> QuantumState:
    """E(ε) = e^{−iε ZZ} on the pair's qubits."""
    a, b = link
    if not g.has_link(a, b):
        raise UnknownVertexError(f"({a}, {b}) is not a link of {g.name}")
    return apply_unitary(state, zz_rotation(epsilon), [g.qubit(a), g.qubit(b)])


def apply_single_qubit_error(state: QuantumState, g: GraphSpec, vertex: int, axis: str, theta: float) -> QuantumState:
    if axis not in AXES:
        raise InvalidParameterError(f"error axis must be one of {AXES}, got {axis!r}")
    return apply_unitary(state, rotation(axis, theta), [g.qubit(vertex)])


def depolarizing_kraus(p: float) -> list[np.ndarray]:
    """The 16 Kraus operators √(1−15p/16)·I⊗I and √(p/16)·P for the 15 other Paulis."""
    _check_probability(p)
    ops = []
    for a, b in itertools.product("IXYZ", repeat=2):
        weight = 1.0 - 15.0 * p / 16.0 if a == b == "I" else p / 16.0
        ops.append(math.sqrt(weight) * reduce(np.kron, (pauli_2x2(a), pauli_2x2(b))))
    return ops


def apply_depolarizing_2q(dm: DensityMatrix, qubits: Sequence[int], p: float) -> DensityMatrix:
    """ρ → (1−p)ρ + p·(I/4 ⊗ Tr_pair ρ) on a pair of qubits."""
    return apply_kraus(dm, depolarizing_kraus(p), list(qubits))
