"""
Terminal reports for graphs, spectra and calibration.

    print_graph(g)                 vertices, links and path strings
    print_spectrum(g, spec)        entanglement spectrum with degeneracy classes
    print_calibration(g, result)   per-path fidelity table and the selection
    print_majority(vote)           row bits of a single-shot vote
    print_table(rows, columns)     aligned table of result rows

Pauli strings are rendered through format.py (TextFormat by default).
"""

from __future__ import annotations

import sys
from typing import Any, Sequence, TextIO

from .calibration import CalibrationResult, MajorityVote
from .errors import ProtocolError
from .format import Format, TextFormat, render_byproduct, render_pauli
from .graphs import GraphSpec
from .spt import EntanglementSpectrum
from .teleport import byproduct_for_path

_TEXT = TextFormat()


def _header(title: str, w: int, out: TextIO) -> None:
    print("=" * w, file=out)
    print(f"  {title}", file=out)
    print("=" * w, file=out)


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


# ═══════════════════════════════════════════════════════════════════
# Graphs
# ═══════════════════════════════════════════════════════════════════

def print_graph(g: GraphSpec, fmt: Format = _TEXT, out: TextIO | None = None) -> None:
    """Pretty-print a resource graph.

    Output format:
        ============================================================
          diamond
        ============================================================
          Qubits : 6
          Links  : 1-2 2-3 2-4 3-5 4-5 5-6

          id  label  kind  role    θ        basis
          ──  ─────  ────  ──────  ───────  ─────
           1  1      X     input   -1.5708  X
          ...

          Paths:
            p1  s_x = X1 Z2 X3 ...   s_z = ...
                W = Z^(s1 ⊕ s3)·X^(s2)
    """
    out = out or sys.stdout
    w = 60
    _header(g.name, w, out)
    print(f"  Qubits : {g.num_qubits}", file=out)
    print(f"  Links  : {' '.join(f'{a}-{b}' for a, b in sorted(g.links))}", file=out)
    print(file=out)

    lbl_w = max(5, max(len(v.label) for v in g.vertices))
    print(f"  {'id':>3}  {'label':<{lbl_w}}  kind  {'role':<6}  {'θ':>8}  basis", file=out)
    print(f"  {'─' * 3}  {'─' * lbl_w}  {'─' * 4}  {'─' * 6}  {'─' * 8}  {'─' * 5}", file=out)
    for v in g.vertices:
        basis = v.basis.value if v.basis.letter else "—"
        print(f"  {v.id:>3}  {v.label:<{lbl_w}}  {v.kind.value:<4}  {v.role.value:<6}  "
              f"{v.theta:>8.4f}  {basis}", file=out)
    print(file=out)

    if g.paths:
        print("  Paths:", file=out)
        pid_w = max(len(p) for p in g.paths)
        for pid in sorted(g.paths):
            ps = g.path(pid)
            print(f"    {pid:<{pid_w}}  s_x = {render_pauli(ps.s_x, fmt, g)}", file=out)
            print(f"    {'':<{pid_w}}  s_z = {render_pauli(ps.s_z, fmt, g)}", file=out)
            if g.input_vertex is not None:
                try:
                    byp = byproduct_for_path(g, pid)
                    print(f"    {'':<{pid_w}}  W   = {render_byproduct(byp, fmt, g)}", file=out)
                except ProtocolError as e:
                    print(f"    {'':<{pid_w}}  W   : {e}", file=out)
        print(file=out)


# ═══════════════════════════════════════════════════════════════════
# Diagnostics
# ═══════════════════════════════════════════════════════════════════

def print_spectrum(g: GraphSpec, spec: EntanglementSpectrum, out: TextIO | None = None) -> None:
    """Nonzero eigenvalues of ρ_A, one degeneracy class per line."""
    out = out or sys.stdout
    w = 60
    cut = ",".join(g.vertex(v).label for v in spec.cut[0])
    _header(f"{g.name} — entanglement spectrum, A = {{{cut}}}", w, out)
    nz = spec.nonzero
    print(f"  Rank : {len(nz)}", file=out)
    print(file=out)
    print(f"  {'λ':>12}  mult", file=out)
    print(f"  {'─' * 12}  {'─' * 4}", file=out)
    for cls in spec.degeneracy_classes:
        print(f"  {spec.eigenvalues[cls[0]]:>12.8f}  {len(cls):>4}", file=out)
    print(file=out)


def print_calibration(g: GraphSpec, result: CalibrationResult, out: TextIO | None = None) -> None:
    """Per-path fidelity per known state, the mean and the selection."""
    out = out or sys.stdout
    w = 60
    shots = "exact" if result.shots is None else f"{result.shots} shots"
    _header(f"{g.name} — calibration ({shots})", w, out)

    state_labels = [s.label() for s in result.known_states]
    pid_w = max(4, max(len(p) for p in result.fidelities))
    col_w = max(10, max(len(s) for s in state_labels))
    hdr = "  ".join(f"{s:>{col_w}}" for s in state_labels)
    print(f"  {'path':<{pid_w}}  {hdr}  {'mean':>8}", file=out)
    print(f"  {'─' * pid_w}  {'  '.join('─' * col_w for _ in state_labels)}  {'─' * 8}", file=out)
    means = result.means
    for pid, fids in result.fidelities.items():
        mark = "  ←" if pid == result.chosen else ""
        row = "  ".join(f"{f:>{col_w}.4f}" for f in fids)
        print(f"  {pid:<{pid_w}}  {row}  {means[pid]:>8.4f}{mark}", file=out)
    print(file=out)
    if result.chosen is None:
        print("  Status : unprotected (no path above 2/3)", file=out)
    else:
        print(f"  Status : protected, use path {result.chosen}", file=out)
    print(file=out)


def print_majority(vote: MajorityVote, out: TextIO | None = None) -> None:
    out = out or sys.stdout
    _header("single-shot majority vote", 40, out)
    print(f"  rows      : {'  '.join(f'{r}={b}' for r, b in vote.bits.items())}", file=out)
    print(f"  decision  : {vote.decision}", file=out)
    if vote.unanimous:
        print("  dissent   : none", file=out)
    else:
        print(f"  dissent   : {vote.dissenting} (corrupted)", file=out)
    if vote.expected is not None:
        print(f"  expected  : {vote.expected} ({'correct' if vote.correct else 'WRONG'})", file=out)
    print(file=out)


# ═══════════════════════════════════════════════════════════════════
# Result rows
# ═══════════════════════════════════════════════════════════════════

def print_table(rows: Sequence[dict[str, Any]], columns: Sequence[str], out: TextIO | None = None) -> None:
    """Aligned table; column widths are auto-computed from content."""
    out = out or sys.stdout
    cells = [[_cell(r.get(c, "")) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    print("  " + "  ".join(f"{c:>{w}}" for c, w in zip(columns, widths)), file=out)
    print("  " + "  ".join("─" * w for w in widths), file=out)
    for row in cells:
        print("  " + "  ".join(f"{v:>{w}}" for v, w in zip(row, widths)), file=out)
    print(file=out)
