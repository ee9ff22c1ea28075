"""
Graph specifications, the three resource-graph families, and compilation
to preparation circuits.

A GraphSpec is a declarative description of a graph state used as a
teleportation resource: vertices with a stabilizer kind, a role, a
local Rz angle and a measurement basis; undirected links; and named
paths from the input to the output.


Stabilizers and string symmetries
─────────────────────────────────
Every vertex v carries one stabilizer

    K_v = P_v · Π_{w ~ v} Z_w          P = X or Y by vertex kind

and the ideal resource state is their common +1 eigenstate.  A product
of stabilizers over a vertex subset is a string symmetry.  A path
I = v_0, v_1, …, v_L = O carries two of them:

    x-type   Π K over even positions  (contains X_I)
    z-type   Π K over odd positions   (contains Z_I)

Along a path the Z-tails of consecutive stabilizers cancel pairwise,
which leaves each string supported on the path alone.  For graphs
without an input vertex positions are counted as if the input sat in
front of the first vertex.


Families
────────
  chain:n              1 — 2 — … — n, ends X-kind, interior Y-kind
  diamond              6 vertices, links 12 23 34 45 56 24 35
                       p1 (green) = 1 2 3 4 5 6    pair {s135, s246}
                       p2 (blue)  = 1 2 4 3 5 6    pair {s145, s236}
  hourglass:n,rows     I — m — column 1 — … — column n — O with full
                       bipartite links between adjacent columns;
                       I, m, O X-kind, bulk Y-kind

Vertex ids are 1-based qubit positions: vertex v is qubit v − 1.
Hourglass ids are I=1, m=2, (i,k)=3+(i−1)·rows+k, O=3+n·rows; labels
"I", "m", "i,k", "O".  The input-free hourglass drops I and shifts every
id down by one.


Compilation
───────────
Each entangling gate is e^{−i(π/4+ε) Z⊗Z}, which at ε = 0 equals CZ up to
e^{−iπ/4 Z} on both endpoints.  A vertex of degree d therefore receives
Rz(−πd/2) to undo those, plus Rz(π/2) when it is Y-kind (turning the
home X of its stabilizer into Y).  Angles are folded into (−π, π].
"""

from __future__ import annotations

import itertools
import json
import logging
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from .defs import (
    Gate,
    GateKind,
    GateList,
    InputState,
    MeasureBasis,
    Role,
    VertexId,
    VertexKind,
)
from .errors import ConfigError, GraphError, SptError, UnknownVertexError
from .noise import Depolarizing2Q, ErrorSpec, SingleQubitError, ZZCrosstalk
from .pauli import PauliString, commutes, product
from .sim import Measurement, MeasurementPlan

logger = logging.getLogger(__name__)


# ═══════════════════════════════════════════════════════════════════
# Types
# ═══════════════════════════════════════════════════════════════════


@dataclass(frozen=True)
class Vertex:
    id: VertexId
    kind: VertexKind
    role: Role
    theta: float
    basis: MeasureBasis
    label: str = ""

    def __post_init__(self) -> None:
        if not self.label:
            object.__setattr__(self, "label", str(self.id))


@dataclass(frozen=True)
class StabilizerSet:
    """One generator K_v per vertex, in vertex-id order."""
    generators: tuple[PauliString, ...]
    graph_name: str

    def __len__(self) -> int:
        return len(self.generators)

    def for_vertex(self, v: VertexId) -> PauliString:
        if not 1 <= v <= len(self.generators):
            raise UnknownVertexError(f"vertex {v} is not in {self.graph_name}")
        return self.generators[v - 1]

    def all_commute(self) -> bool:
        return all(commutes(a, b) for a, b in itertools.combinations(self.generators, 2))


@dataclass(frozen=True)
class PathSymmetry:
    """The string-symmetry pair of one input→output path."""
    path_id: str
    vertices: tuple[VertexId, ...]
    s_x: PauliString
    s_z: PauliString
    x_subset: tuple[VertexId, ...]
    z_subset: tuple[VertexId, ...]


@dataclass(frozen=True)
class SymmetryGroup:
    """Generators with a (path-id, "x" | "z") label each."""
    generators: tuple[PauliString, ...]
    labels: tuple[tuple[str, str], ...]

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(zip(self.labels, self.generators))

    def path_ids(self) -> list[str]:
        seen: dict[str, None] = {}
        for pid, _ in self.labels:
            seen.setdefault(pid, None)
        return list(seen)

    def pair(self, path_id: str) -> tuple[PauliString, PauliString]:
        found = {t: s for (pid, t), s in self if pid == path_id}
        if set(found) != {"x", "z"}:
            raise UnknownVertexError(f"no symmetry pair for path {path_id!r}")
        return found["x"], found["z"]

    @classmethod
    def from_paths(cls, paths: Iterable[PathSymmetry]) -> SymmetryGroup:
        gens: list[PauliString] = []
        labels: list[tuple[str, str]] = []
        for p in paths:
            gens += [p.s_x, p.s_z]
            labels += [(p.path_id, "x"), (p.path_id, "z")]
        return cls(tuple(gens), tuple(labels))


@dataclass(frozen=True)
class GraphSpec:
    """A resource graph.

    Fields:
        name     — text form it was built from, e.g. "hourglass:n=2,rows=2"
        vertices — ids 1..N in order
        links    — unordered pairs, stored as (low, high)
        paths    — named vertex sequences from input to output
        aliases  — alternative names for paths ("green" → "p1")
        layers   — when non-empty, every choice of one vertex per layer is a
                   path; its id is "k=" plus the row index in each layer with
                   more than one vertex
    """
    name: str
    vertices: tuple[Vertex, ...]
    links: frozenset[tuple[VertexId, VertexId]]
    paths: Mapping[str, tuple[VertexId, ...]] = field(default_factory=dict)
    aliases: Mapping[str, str] = field(default_factory=dict)
    layers: tuple[tuple[VertexId, ...], ...] = ()

    def __post_init__(self) -> None:
        n = len(self.vertices)
        if n < 2:
            raise GraphError(f"{self.name}: a resource graph needs at least two vertices")
        if [v.id for v in self.vertices] != list(range(1, n + 1)):
            raise GraphError(f"{self.name}: vertex ids must be 1..{n} in order")
        labels = [v.label for v in self.vertices]
        if len(set(labels)) != n:
            raise GraphError(f"{self.name}: duplicate vertex labels")

        outputs = [v for v in self.vertices if v.role is Role.OUTPUT]
        inputs = [v for v in self.vertices if v.role is Role.INPUT]
        if len(outputs) != 1:
            raise GraphError(f"{self.name}: exactly one output vertex required, found {len(outputs)}")
        if len(inputs) > 1:
            raise GraphError(f"{self.name}: at most one input vertex allowed, found {len(inputs)}")
        for v in self.vertices:
            if v.role is Role.OUTPUT and v.basis is not MeasureBasis.NONE:
                raise GraphError(f"{self.name}: output vertex {v.label} must not be measured")
            if v.role is not Role.OUTPUT and v.basis is MeasureBasis.NONE:
                raise GraphError(f"{self.name}: vertex {v.label} has no measurement basis")

        normalized = set()
        for a, b in self.links:
            if a == b:
                raise GraphError(f"{self.name}: self-link on vertex {a}")
            for v in (a, b):
                if not 1 <= v <= n:
                    raise UnknownVertexError(f"{self.name}: link ({a}, {b}) names unknown vertex {v}")
            normalized.add((min(a, b), max(a, b)))
        object.__setattr__(self, "links", frozenset(normalized))

        for pid, seq in self.paths.items():
            self._check_path(pid, tuple(seq))
        for alias, target in self.aliases.items():
            if target not in self.paths:
                raise GraphError(f"{self.name}: alias {alias!r} points to unknown path {target!r}")
        for layer in self.layers:
            for v in layer:
                self.vertex(v)

    def _check_path(self, pid: str, seq: tuple[VertexId, ...]) -> None:
        if len(seq) < 2:
            raise GraphError(f"{self.name}: path {pid!r} is too short")
        for v in seq:
            self.vertex(v)
        first = self.input_vertex if self.input_vertex is not None else seq[0]
        if seq[0] != first or seq[-1] != self.output_vertex:
            raise GraphError(f"{self.name}: path {pid!r} must run from the input to the output")
        for a, b in zip(seq, seq[1:]):
            if not self.has_link(a, b):
                raise GraphError(f"{self.name}: path {pid!r} steps along missing link ({a}, {b})")
        if len(set(seq)) != len(seq):
            raise GraphError(f"{self.name}: path {pid!r} revisits a vertex")

    # ── Lookup ──

    @property
    def num_qubits(self) -> int:
        return len(self.vertices)

    def vertex(self, v: VertexId) -> Vertex:
        if isinstance(v, bool) or not isinstance(v, int) or not 1 <= v <= len(self.vertices):
            raise UnknownVertexError(f"vertex {v!r} is not in {self.name}")
        return self.vertices[v - 1]

    def qubit(self, v: VertexId) -> int:
        return self.vertex(v).id - 1

    def vid(self, label: str | int) -> VertexId:
        """Vertex id from a label ("m", "2,1") or a plain id."""
        if isinstance(label, int):
            return self.vertex(label).id
        for v in self.vertices:
            if v.label == label:
                return v.id
        if label.strip().isdigit():
            return self.vertex(int(label)).id
        raise UnknownVertexError(f"no vertex labelled {label!r} in {self.name}")

    def has_link(self, a: VertexId, b: VertexId) -> bool:
        return (min(a, b), max(a, b)) in self.links

    def neighbors(self, v: VertexId) -> tuple[VertexId, ...]:
        self.vertex(v)
        return tuple(sorted(b if a == v else a for a, b in self.links if v in (a, b)))

    def degree(self, v: VertexId) -> int:
        return len(self.neighbors(v))

    @property
    def input_vertex(self) -> VertexId | None:
        for v in self.vertices:
            if v.role is Role.INPUT:
                return v.id
        return None

    @property
    def output_vertex(self) -> VertexId:
        return next(v.id for v in self.vertices if v.role is Role.OUTPUT)

    @property
    def middle_vertices(self) -> tuple[VertexId, ...]:
        return tuple(v.id for v in self.vertices if v.role is Role.MIDDLE)

    # ── Stabilizers and symmetries ──

    def stabilizer(self, v: VertexId) -> PauliString:
        return stabilizer_for_vertex(self, v)

    def stabilizers(self) -> StabilizerSet:
        return StabilizerSet(tuple(self.stabilizer(v.id) for v in self.vertices), self.name)

    def symmetry_group(self) -> SymmetryGroup:
        return SymmetryGroup.from_paths(enumerate_paths(self))

    def path_ids(self) -> list[str]:
        return [p.path_id for p in enumerate_paths(self)]

    def resolve_path(self, path_id: str) -> tuple[str, tuple[VertexId, ...]]:
        """Canonical id and vertex sequence of a named, aliased or k= path."""
        pid = self.aliases.get(path_id, path_id)
        if pid in self.paths:
            return pid, tuple(self.paths[pid])
        if self.layers and pid.startswith("k="):
            branching = [layer for layer in self.layers if len(layer) > 1]
            digits = pid[2:]
            if len(digits) == len(branching) and all(c.isdigit() for c in digits):
                rows = iter(int(c) for c in digits)
                seq = []
                for layer in self.layers:
                    if len(layer) == 1:
                        seq.append(layer[0])
                        continue
                    k = next(rows)
                    if k >= len(layer):
                        break
                    seq.append(layer[k])
                else:
                    return pid, tuple(seq)
        known = sorted(set(self.paths) | set(self.aliases))
        raise UnknownVertexError(f"unknown path {path_id!r} for {self.name} (known: {', '.join(known)})")

    def path(self, path_id: str) -> PathSymmetry:
        pid, seq = self.resolve_path(path_id)
        self._check_path(pid, seq)
        return _path_symmetry(self, pid, seq)

    # ── Derived graphs ──

    def without_links(self, links: Iterable[tuple[VertexId, VertexId]]) -> GraphSpec:
        """Drop links; angles are re-derived and paths that lose a link disappear."""
        drop = {(min(a, b), max(a, b)) for a, b in links}
        missing = drop - self.links
        if missing:
            raise UnknownVertexError(f"{self.name} has no link(s) {sorted(missing)}")
        kept = self.links - drop
        paths = {
            pid: seq for pid, seq in self.paths.items()
            if all((min(a, b), max(a, b)) in kept for a, b in zip(seq, seq[1:]))
        }
        aliases = {a: t for a, t in self.aliases.items() if t in paths}
        name = self.name + " minus " + " ".join(f"{a}-{b}" for a, b in sorted(drop))
        vertices = _with_derived_thetas(self.vertices, kept)
        return GraphSpec(name, vertices, frozenset(kept), paths, aliases, ())

    def measurement_plan(self, overrides: Mapping[VertexId, MeasureBasis] | None = None,
                         rotated: bool = False) -> MeasurementPlan:
        """Every non-output vertex with its basis (overrides win), id order."""
        overrides = overrides or {}
        for v in overrides:
            self.vertex(v)
        ms = tuple(
            Measurement(v.id, v.id - 1, overrides.get(v.id, v.basis))
            for v in self.vertices if v.role is not Role.OUTPUT
        )
        return MeasurementPlan(ms, self.output_vertex - 1, rotated)


# ═══════════════════════════════════════════════════════════════════
# Stabilizers, symmetries, paths
# ═══════════════════════════════════════════════════════════════════


def stabilizer_for_vertex(g: GraphSpec, v: VertexId) -> PauliString:
    """K_v: X or Y at v by vertex kind, Z on every neighbour, phase +1."""
    vert = g.vertex(v)
    letters = {g.qubit(w): "Z" for w in g.neighbors(v)}
    letters[g.qubit(v)] = vert.kind.value
    return PauliString.from_sparse(g.num_qubits, letters)


def symmetry_from_subset(g: GraphSpec, subset: Iterable[VertexId]) -> PauliString:
    """Π_{j ∈ subset} K_j with its phase (ascending order; the K_j commute)."""
    ids = sorted(set(subset))
    if not ids:
        raise GraphError("a symmetry needs a nonempty vertex subset")
    return product(stabilizer_for_vertex(g, v) for v in ids)


def _path_symmetry(g: GraphSpec, pid: str, seq: tuple[VertexId, ...]) -> PathSymmetry:
    offset = 0 if g.input_vertex is not None else 1
    x_sub = tuple(v for i, v in enumerate(seq) if (i + offset) % 2 == 0)
    z_sub = tuple(v for i, v in enumerate(seq) if (i + offset) % 2 == 1)
    return PathSymmetry(pid, seq, symmetry_from_subset(g, x_sub), symmetry_from_subset(g, z_sub),
                        x_sub, z_sub)


def enumerate_paths(g: GraphSpec) -> list[PathSymmetry]:
    """All paths with their symmetry pairs.

    Layered graphs (the hourglass) yield one path per choice of row in each
    column, ids "k=00", "k=01", …; other graphs yield their named paths.
    """
    if not g.layers:
        return [_path_symmetry(g, pid, tuple(seq)) for pid, seq in sorted(g.paths.items())]
    branching = [layer for layer in g.layers if len(layer) > 1]
    out = []
    for rows in itertools.product(*(range(len(layer)) for layer in branching)):
        pid = "k=" + "".join(str(k) for k in rows)
        _, seq = g.resolve_path(pid)
        out.append(_path_symmetry(g, pid, seq))
    return out


# ═══════════════════════════════════════════════════════════════════
# Builders
# ═══════════════════════════════════════════════════════════════════


def fold_angle(theta: float) -> float:
    """Reduce to (−π, π]."""
    x = math.remainder(theta, 2 * math.pi)
    return x + 2 * math.pi if x <= -math.pi else x


def derived_theta(kind: VertexKind, degree: int) -> float:
    base = -math.pi * degree / 2
    if kind is VertexKind.Y:
        base += math.pi / 2
    return fold_angle(base)


def _with_derived_thetas(vertices: Sequence[Vertex], links: Iterable[tuple[int, int]]) -> tuple[Vertex, ...]:
    degree = {v.id: 0 for v in vertices}
    for a, b in links:
        degree[a] += 1
        degree[b] += 1
    return tuple(replace(v, theta=derived_theta(v.kind, degree[v.id])) for v in vertices)


def _require_int(value: Any, what: str, low: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < low:
        raise GraphError(f"{what} must be an integer ≥ {low}, got {value!r}")
    return value


def build_chain(n_vertices: int) -> GraphSpec:
    """Nearest-neighbour chain 1 — … — n: input X-measured, interior Y-measured."""
    n = _require_int(n_vertices, "chain length", 3)
    vertices = []
    for v in range(1, n + 1):
        if v == 1:
            vertices.append(Vertex(v, VertexKind.X, Role.INPUT, 0.0, MeasureBasis.X))
        elif v == n:
            vertices.append(Vertex(v, VertexKind.X, Role.OUTPUT, 0.0, MeasureBasis.NONE))
        else:
            vertices.append(Vertex(v, VertexKind.Y, Role.MIDDLE, 0.0, MeasureBasis.Y))
    links = frozenset((v, v + 1) for v in range(1, n))
    return GraphSpec(f"chain:{n}", _with_derived_thetas(vertices, links), links,
                     {"main": tuple(range(1, n + 1))})


DIAMOND_LINKS = ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 4), (3, 5))


def build_diamond() -> GraphSpec:
    """The six-vertex diamond: all middle qubits X-measured, two entwined paths."""
    vertices = [Vertex(1, VertexKind.X, Role.INPUT, 0.0, MeasureBasis.X)]
    vertices += [Vertex(v, VertexKind.Y, Role.MIDDLE, 0.0, MeasureBasis.X) for v in range(2, 6)]
    vertices.append(Vertex(6, VertexKind.X, Role.OUTPUT, 0.0, MeasureBasis.NONE))
    links = frozenset(DIAMOND_LINKS)
    paths = {"p1": (1, 2, 3, 4, 5, 6), "p2": (1, 2, 4, 3, 5, 6)}
    return GraphSpec("diamond", _with_derived_thetas(vertices, links), links, paths,
                     {"green": "p1", "blue": "p2"})


def hourglass_id(n: int, rows: int, column: int, k: int, with_input: bool = True) -> VertexId:
    """Id of bulk vertex (column, k), columns counted from 1."""
    return (3 if with_input else 2) + (column - 1) * rows + k


def build_hourglass(n: int, rows: int = 2, with_input: bool = True) -> GraphSpec:
    """I — m — n columns of `rows` vertices — O, adjacent columns fully linked."""
    n = _require_int(n, "hourglass width n", 1)
    if rows not in (2, 3) or isinstance(rows, bool):
        raise GraphError(f"hourglass rows must be 2 or 3, got {rows!r}")

    vertices: list[Vertex] = []
    if with_input:
        vertices.append(Vertex(1, VertexKind.X, Role.INPUT, 0.0, MeasureBasis.X, "I"))
    m = len(vertices) + 1
    vertices.append(Vertex(m, VertexKind.X, Role.MIDDLE, 0.0, MeasureBasis.X, "m"))
    columns = []
    for i in range(1, n + 1):
        col = []
        for k in range(rows):
            vid = hourglass_id(n, rows, i, k, with_input)
            vertices.append(Vertex(vid, VertexKind.Y, Role.MIDDLE, 0.0, MeasureBasis.MINUS_Y, f"{i},{k}"))
            col.append(vid)
        columns.append(tuple(col))
    out = len(vertices) + 1
    vertices.append(Vertex(out, VertexKind.X, Role.OUTPUT, 0.0, MeasureBasis.NONE, "O"))

    links = set()
    if with_input:
        links.add((1, m))
    links |= {(m, v) for v in columns[0]}
    for left, right in zip(columns, columns[1:]):
        links |= {(a, b) for a in left for b in right}
    links |= {(v, out) for v in columns[-1]}
    links = frozenset(links)

    layers = ([(1,)] if with_input else []) + [(m,)] + columns + [(out,)]
    names = ("upper", "lower") if rows == 2 else ("row0", "row1", "row2")
    paths = {}
    for k, pname in enumerate(names):
        seq = ([1] if with_input else []) + [m] + [col[k] for col in columns] + [out]
        paths[pname] = tuple(seq)
    tag = "" if with_input else ",input=0"
    return GraphSpec(f"hourglass:n={n},rows={rows}{tag}", _with_derived_thetas(vertices, links),
                     links, paths, {}, tuple(layers))


# ═══════════════════════════════════════════════════════════════════
# Compilation
# ═══════════════════════════════════════════════════════════════════


def basis_change_gates(q: int, basis: MeasureBasis) -> list[Gate]:
    """Gates turning the measured observable into Z (+1 eigenvector → |0⟩)."""
    if basis is MeasureBasis.X:
        return [Gate(GateKind.HADAMARD, (q,))]
    if basis is MeasureBasis.Y:
        return [Gate(GateKind.RZ, (q,), -math.pi / 2), Gate(GateKind.HADAMARD, (q,))]
    if basis is MeasureBasis.MINUS_Y:
        return [Gate(GateKind.RZ, (q,), math.pi / 2), Gate(GateKind.HADAMARD, (q,))]
    return []


def compile_preparation(g: GraphSpec, errors: Sequence[ErrorSpec] = (),
                        input_state: InputState | None = None,
                        plan: MeasurementPlan | None = None) -> GateList:
    """Gate list preparing the (perturbed) resource state.

    Every qubit starts in |+⟩, except the input when `input_state` is given,
    which is rotated from |0⟩ to that state instead.  Then one entangling
    gate per link (carrying the link's crosstalk ε), a depolarizing channel
    after each when requested, idle ZZ gates for crosstalk between
    unlinked vertices, the Rz layer, and the single-qubit errors.  The
    basis changes of `plan` (default: the graph's own bases) follow.
    """
    link_eps: dict[tuple[int, int], float] = {}
    idle: list[ZZCrosstalk] = []
    singles: list[SingleQubitError] = []
    depol: list[float] = []
    for e in errors:
        if isinstance(e, ZZCrosstalk):
            g.vertex(e.a)
            g.vertex(e.b)
            if g.has_link(e.a, e.b):
                link_eps[e.pair] = link_eps.get(e.pair, 0.0) + e.epsilon
            else:
                idle.append(e)
        elif isinstance(e, SingleQubitError):
            g.vertex(e.vertex)
            singles.append(e)
        elif isinstance(e, Depolarizing2Q):
            depol.append(e.probability)
        else:
            raise ConfigError(f"unsupported error spec {e!r}")

    gates: list[Gate] = []
    inp = g.input_vertex
    for v in g.vertices:
        q = v.id - 1
        if input_state is not None and v.id == inp:
            gates.append(Gate(GateKind.RY, (q,), input_state.polar))
            gates.append(Gate(GateKind.RZ, (q,), input_state.azimuth))
        else:
            gates.append(Gate(GateKind.INIT_PLUS, (q,)))
    for a, b in sorted(g.links):
        pair = (a - 1, b - 1)
        gates.append(Gate(GateKind.ISING, pair, link_eps.get((a, b), 0.0)))
        gates += [Gate(GateKind.DEPOLARIZE2, pair, p) for p in depol]
    gates += [Gate(GateKind.ZZ, (e.a - 1, e.b - 1), e.epsilon) for e in idle]
    gates += [Gate(GateKind.RZ, (v.id - 1,), v.theta) for v in g.vertices if v.theta != 0.0]
    gates += [Gate({"X": GateKind.RX, "Y": GateKind.RY, "Z": GateKind.RZ}[e.axis], (e.vertex - 1,), e.theta)
              for e in singles]

    plan = plan or g.measurement_plan()
    changes: list[Gate] = []
    for m in plan.measurements:
        changes += basis_change_gates(m.qubit, m.basis)
    return GateList(g.num_qubits, tuple(gates), tuple(changes))


# ═══════════════════════════════════════════════════════════════════
# Text and JSON forms
# ═══════════════════════════════════════════════════════════════════


def _parse_params(body: str, positional: str) -> dict[str, str]:
    params: dict[str, str] = {}
    for part in filter(None, (p.strip() for p in body.split(","))):
        key, sep, value = part.partition("=")
        if sep:
            params[key.strip()] = value.strip()
        elif positional not in params:
            params[positional] = key
        else:
            raise ConfigError(f"unexpected graph parameter {part!r}")
    return params


def _int_param(params: Mapping[str, str], key: str, default: int | None = None) -> int:
    if key not in params:
        if default is None:
            raise ConfigError(f"graph parameter {key!r} is required")
        return default
    try:
        return int(params[key])
    except ValueError:
        raise ConfigError(f"graph parameter {key}={params[key]!r} is not an integer") from None


def parse_graph(text: str) -> GraphSpec:
    """GraphSpec from "chain:6", "diamond", "hourglass:n=2,rows=2" or a JSON file path."""
    text = text.strip()
    family, _, body = text.partition(":")
    if family == "diamond" and not body:
        return build_diamond()
    if family == "chain":
        return build_chain(_int_param(_parse_params(body, "n"), "n"))
    if family == "hourglass":
        params = _parse_params(body, "n")
        unknown = set(params) - {"n", "rows", "input"}
        if unknown:
            raise ConfigError(f"unknown hourglass parameter(s) {sorted(unknown)}")
        with_input = params.get("input", "1").lower() not in ("0", "false", "no")
        return build_hourglass(_int_param(params, "n"), _int_param(params, "rows", 2), with_input)
    path = Path(text)
    if path.suffix == ".json" or path.exists():
        try:
            doc = json.loads(path.read_text())
        except FileNotFoundError:
            raise ConfigError(f"graph file {text!r} not found") from None
        except json.JSONDecodeError as e:
            raise ConfigError(e.msg, f"{text}: line {e.lineno} column {e.colno}") from None
        return graph_from_json(doc)
    raise ConfigError(f"unknown graph {text!r} (expected chain:N, diamond, hourglass:n=N[,rows=R] or a .json file)")


def graph_to_json(g: GraphSpec) -> dict[str, Any]:
    return {
        "name": g.name,
        "vertices": [
            {"id": v.id, "label": v.label, "kind": v.kind.value, "role": v.role.value,
             "theta": v.theta, "basis": v.basis.value}
            for v in g.vertices
        ],
        "links": [list(link) for link in sorted(g.links)],
        "paths": {pid: list(seq) for pid, seq in g.paths.items()},
        "aliases": dict(g.aliases),
        "layers": [list(layer) for layer in g.layers],
    }


def graph_from_json(doc: Mapping[str, Any]) -> GraphSpec:
    try:
        vertices = tuple(
            Vertex(int(v["id"]), VertexKind(v["kind"]), Role(v["role"]), float(v.get("theta", 0.0)),
                   MeasureBasis.parse(v.get("basis", "none")), str(v.get("label", "")))
            for v in doc["vertices"]
        )
        links = frozenset((int(a), int(b)) for a, b in doc["links"])
        paths = {str(pid): tuple(int(v) for v in seq) for pid, seq in doc.get("paths", {}).items()}
        layers = tuple(tuple(int(v) for v in layer) for layer in doc.get("layers", []))
        return GraphSpec(str(doc.get("name", "graph")), vertices, links, paths,
                         dict(doc.get("aliases", {})), layers)
    except SptError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"malformed graph document: {e}") from e
