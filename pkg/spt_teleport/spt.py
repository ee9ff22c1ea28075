"""
Symmetry-protected-order diagnostics.

  surviving_subgroup       which path symmetries commute with an error
  factorize                split a string into input / middle / output parts
  entanglement_spectrum    ρ_A spectrum with degeneracy classes
  reduced_symmetry_check   do restricted strings commute with ρ_A, and
                           which pairs of them anticommute
  symmetry_sectors         ρ_A eigenvalues per joint eigenvalue of commuting
                           restricted strings
  string_order_parameter   the path string order parameter on the
                           input-free hourglass


String order parameter
──────────────────────
For L = 2n + 2 the operator is assembled from the index set

    l = L/2 − 2⌊L/8⌋,   Y on columns L/2 − 2r for ⌊L/8⌋ ≤ r < L/4,
    Z on both vertices of column l − 1,   X on O

taken along one row.  At α = 0 it must be a product of stabilizers.  When
the index set above is not (columns beyond n, or a Z pair that does not
cancel the Y tails), the in-range Y columns are kept, extended in steps
of two up to column n − 1, and the operator becomes

    K_O · Π_{c} K_(c,k)

which carries its Z factor(s) on the column below the lowest Y, or on m.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from .errors import DimensionError, InvalidParameterError, ProtocolError
from .graphs import GraphSpec, SymmetryGroup, build_hourglass
from .pauli import PauliString, commutes, product
from .sim import QuantumState, StateVector, expectation, partial_trace, schmidt_spectrum

if TYPE_CHECKING:
    from .groundstate import HamiltonianFamily

logger = logging.getLogger(__name__)

ZERO_EIGENVALUE = 1e-12


# ═══════════════════════════════════════════════════════════════════
# Symmetry filtering
# ═══════════════════════════════════════════════════════════════════


@dataclass(frozen=True)
class SurvivingSubgroup:
    generators: tuple[PauliString, ...]
    labels: tuple[tuple[str, str], ...]

    @property
    def protected_paths(self) -> list[str]:
        """Paths whose x-type and z-type strings both survive."""
        kinds: dict[str, set[str]] = {}
        for pid, t in self.labels:
            kinds.setdefault(pid, set()).add(t)
        return [pid for pid, ts in kinds.items() if ts == {"x", "z"}]

    @property
    def protected(self) -> bool:
        return bool(self.protected_paths)

    def __len__(self) -> int:
        return len(self.generators)


def surviving_subgroup(group: SymmetryGroup, error: PauliString | Iterable[PauliString] | None) -> SurvivingSubgroup:
    """Generators commuting with every error generator string."""
    if error is None:
        errs: list[PauliString] = []
    elif isinstance(error, PauliString):
        errs = [error]
    else:
        errs = list(error)
    kept = [(label, s) for label, s in group if all(commutes(s, e) for e in errs)]
    return SurvivingSubgroup(tuple(s for _, s in kept), tuple(label for label, _ in kept))


@dataclass(frozen=True)
class SymmetryFactorization:
    input_part: PauliString
    middle_part: PauliString
    output_part: PauliString

    def recombine(self) -> PauliString:
        return product([self.input_part, self.middle_part, self.output_part])


def factorize(s: PauliString, g: GraphSpec) -> SymmetryFactorization:
    inp = g.input_vertex
    if inp is None:
        raise ProtocolError(f"{g.name} has no input vertex to factor on")
    if s.num_qubits != g.num_qubits:
        raise DimensionError(f"{s.num_qubits}-qubit string on the {g.num_qubits}-vertex graph {g.name}")
    iq, oq = g.qubit(inp), g.qubit(g.output_vertex)
    middle = [q for q in range(g.num_qubits) if q not in (iq, oq)]
    return SymmetryFactorization(
        s.restrict([iq], keep_phase=True),
        s.restrict(middle, keep_phase=False),
        s.restrict([oq], keep_phase=False),
    )


# ═══════════════════════════════════════════════════════════════════
# Entanglement spectra
# ═══════════════════════════════════════════════════════════════════


def degeneracy_classes(values: Sequence[float], tol: float) -> list[tuple[int, ...]]:
    """Group indices of descending nonzero values equal within relative `tol`."""
    groups: list[list[int]] = []
    for i, v in enumerate(values):
        if v <= ZERO_EIGENVALUE:
            continue
        if groups:
            ref = values[groups[-1][0]]
            if abs(v - ref) <= tol * max(abs(v), abs(ref)):
                groups[-1].append(i)
                continue
        groups.append([i])
    return [tuple(gr) for gr in groups]


@dataclass(frozen=True)
class EntanglementSpectrum:
    """Eigenvalues of ρ_A (descending) and their degeneracy classes.

    Fields:
        cut                — (A, B) as vertex-id tuples
        eigenvalues        — all 2^|A| eigenvalues, descending
        degeneracy_classes — index groups of equal nonzero eigenvalues
    """
    cut: tuple[tuple[int, ...], tuple[int, ...]]
    eigenvalues: np.ndarray
    degeneracy_classes: tuple[tuple[int, ...], ...]

    @property
    def nonzero(self) -> np.ndarray:
        return self.eigenvalues[self.eigenvalues > ZERO_EIGENVALUE]

    @property
    def multiplicities(self) -> list[int]:
        return [len(c) for c in self.degeneracy_classes]


def _region_qubits(state: QuantumState, region_a: Iterable[int]) -> tuple[list[int], list[int]]:
    a = sorted(set(region_a))
    n = state.num_qubits
    for v in a:
        if not 1 <= v <= n:
            raise DimensionError(f"vertex {v} is not part of this {n}-qubit state")
    if not a or len(a) == n:
        raise InvalidParameterError(f"region A must be a proper nonempty subset of 1..{n}, got {a}")
    return [v - 1 for v in a], [v - 1 for v in range(1, n + 1) if v not in a]


def entanglement_spectrum(state: QuantumState, region_a: Iterable[int], tol: float = 1e-8) -> EntanglementSpectrum:
    """Spectrum of Tr_B ρ across the cut (A, B), region given by vertex ids."""
    qa, qb = _region_qubits(state, region_a)
    if isinstance(state, StateVector):
        vals = schmidt_spectrum(state, qa)
    else:
        vals = partial_trace(state, qa).eigenvalues()
    vals = np.clip(np.asarray(vals, dtype=float), 0.0, None)
    cut = (tuple(q + 1 for q in qa), tuple(q + 1 for q in qb))
    return EntanglementSpectrum(cut, vals, tuple(degeneracy_classes(vals, tol)))


def reduce_string(s: PauliString, qubits: Sequence[int]) -> PauliString:
    """Letters of `s` on `qubits`, re-indexed onto len(qubits) qubits, sign dropped."""
    return PauliString.from_letters("".join(s.letter(q) for q in qubits))


@dataclass(frozen=True)
class ReducedSymmetryReport:
    reduced: tuple[PauliString, ...]
    commutator_norms: tuple[float, ...]
    anticommuting_pairs: tuple[tuple[int, int], ...]
    tol: float

    @property
    def commutes_with_rho(self) -> tuple[bool, ...]:
        return tuple(c < self.tol for c in self.commutator_norms)

    @property
    def forces_degeneracy(self) -> bool:
        """Two restricted strings anticommute while both commute with ρ_A."""
        ok = self.commutes_with_rho
        return any(ok[i] and ok[j] for i, j in self.anticommuting_pairs)


def reduced_symmetry_check(state: QuantumState, region_a: Iterable[int], strings: Sequence[PauliString],
                           tol: float = 1e-8) -> ReducedSymmetryReport:
    qa, _ = _region_qubits(state, region_a)
    rho = partial_trace(state, qa).matrix
    reduced = tuple(reduce_string(s, qa) for s in strings)
    norms = []
    for r in reduced:
        m = r.to_matrix()
        norms.append(float(np.linalg.norm(rho @ m - m @ rho)))
    pairs = tuple(
        (i, j) for i, j in itertools.combinations(range(len(reduced)), 2)
        if not commutes(reduced[i], reduced[j])
    )
    return ReducedSymmetryReport(reduced, tuple(norms), pairs, tol)


@dataclass(frozen=True)
class SymmetrySector:
    charges: tuple[int, ...]
    eigenvalues: np.ndarray


def symmetry_sectors(state: QuantumState, region_a: Iterable[int], strings: Sequence[PauliString],
                     tol: float = 1e-8) -> list[SymmetrySector]:
    """ρ_A eigenvalues block by block, one block per joint ±1 eigenvalue of
    pairwise-commuting restricted strings that also commute with ρ_A."""
    report = reduced_symmetry_check(state, region_a, strings, tol)
    if report.anticommuting_pairs:
        raise ProtocolError("sector labels need pairwise-commuting restricted strings")
    if not all(report.commutes_with_rho):
        raise ProtocolError("a restricted string does not commute with ρ_A")
    qa, _ = _region_qubits(state, region_a)
    rho = partial_trace(state, qa).matrix
    dim = rho.shape[0]
    mats = [r.to_matrix() for r in report.reduced]
    sectors = []
    for charges in itertools.product((1, -1), repeat=len(mats)):
        proj = np.eye(dim, dtype=complex)
        for c, m in zip(charges, mats):
            proj = proj @ (np.eye(dim) + c * m) / 2
        rank = int(round(np.trace(proj).real))
        if rank == 0:
            continue
        vals = np.linalg.eigvalsh(proj @ rho @ proj)[::-1][:rank]
        sectors.append(SymmetrySector(charges, np.clip(vals, 0.0, None)))
    return sectors


# ═══════════════════════════════════════════════════════════════════
# String order parameter
# ═══════════════════════════════════════════════════════════════════


_sop_adjusted: set[int] = set()


def _sop_row(path: str) -> int:
    if path == "upper":
        return 0
    if path == "lower":
        return 1
    raise InvalidParameterError(f"SOP path must be 'upper' or 'lower', got {path!r}")


def sop_columns(L: int) -> tuple[list[int], int]:
    """The printed Y columns and the Z column l − 1."""
    l = L // 2 - 2 * (L // 8)
    cols = [L // 2 - 2 * r for r in range(L // 8, (L + 3) // 4)]
    return cols, l - 1


def sop_string(L: int, path: str = "upper") -> PauliString:
    """The string order operator of one row, on the input-free hourglass of L qubits."""
    if L < 4 or L % 2:
        raise DimensionError(f"L must be even and ≥ 4, got {L}")
    n = (L - 2) // 2
    k = _sop_row(path)
    g = build_hourglass(n, 2, with_input=False)
    m = g.vid("m")
    out = g.output_vertex

    cols, z_col = sop_columns(L)
    printed: PauliString | None = None
    if all(1 <= c <= n for c in cols) and 0 <= z_col <= n:
        letters = {g.qubit(out): "X"}
        for c in cols:
            letters[g.qubit(g.vid(f"{c},{k}"))] = "Y"
        z_sites = [m] if z_col == 0 else [g.vid(f"{z_col},{r}") for r in (0, 1)]
        for v in z_sites:
            if g.qubit(v) in letters:
                break
            letters[g.qubit(v)] = "Z"
        else:
            printed = PauliString.from_sparse(L, letters)

    in_range = [c for c in cols if 1 <= c <= n]
    lowest = min(in_range) if in_range else n - 1
    chosen = list(range(lowest, n, 2)) if lowest >= 1 else []
    stab = product([g.stabilizer(out)] + [g.stabilizer(g.vid(f"{c},{k}")) for c in chosen])
    if printed is not None and printed.letters == stab.letters:
        return stab
    if L not in _sop_adjusted:
        _sop_adjusted.add(L)
        logger.warning("L=%d: printed string order index set is not a stabilizer product; "
                       "using Y on columns %s and Z below column %d", L, chosen, lowest)
    return stab


def string_order_parameter(state: QuantumState, L: int, path: str = "upper") -> float:
    if state.num_qubits != L:
        raise DimensionError(f"L = {L} does not match the {state.num_qubits}-qubit state")
    return expectation(state, sop_string(L, path))


def sop_sweep(family: HamiltonianFamily | str, Ls: Sequence[int], alphas: Sequence[float], path: str = "upper") -> list[dict]:
    """Ground-state SOP rows (L, α, path, SOP, degenerate), ordered by L then α."""
    from .groundstate import HamiltonianFamily, HamiltonianSpec, ground_state

    if isinstance(family, str):
        family = HamiltonianFamily.parse(family)
    rows = []
    for L in Ls:
        if L < 4 or L % 2:
            raise DimensionError(f"L must be even and ≥ 4, got {L}")
        for alpha in alphas:
            gs = ground_state(HamiltonianSpec(family, (L - 2) // 2, alpha))
            rows.append({
                "family": family.value, "L": L, "alpha": alpha, "path": path,
                "sop": string_order_parameter(gs.state, L, path), "degenerate": gs.degenerate,
            })
    return rows

