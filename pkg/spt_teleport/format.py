"""
Per-factor formatting of Pauli strings and byproduct operators.

Each piece of a rendered operator (phase, single-site factor, product,
outcome-parity exponent) has a method on the Format class.  Implement a
Format subclass to produce a new output format.

Built-in formats:
    TextFormat    — terminal rendering, one factor per vertex:  -X1 Z3 Y5
    SparseFormat  — compact, factors joined by "·":             -X1·Z3·Y5
    LatexFormat   — LaTeX math:                                  -X_{1} Z_{3} Y_{5}

Usage:
    from spt_teleport.format import render_pauli, TextFormat, LatexFormat

    render_pauli(s, TextFormat(), g)     # vertex labels: I, m, "1,0", O
    render_byproduct(byp, LatexFormat())
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Sequence

from .pauli import PauliString

if TYPE_CHECKING:
    from .graphs import GraphSpec
    from .teleport import ByproductOperator


# ═══════════════════════════════════════════════════════════════════
# Format protocol
# ═══════════════════════════════════════════════════════════════════

class Format(ABC):
    """Base class for operator formatters."""

    @abstractmethod
    def fmt_phase(self, phase: int) -> str:
        """Prefix for i^phase (phase mod 4)."""

    @abstractmethod
    def fmt_factor(self, letter: str, site: str) -> str: ...

    @abstractmethod
    def fmt_product(self, factors: list[str]) -> str: ...

    @abstractmethod
    def fmt_identity(self) -> str: ...

    @abstractmethod
    def fmt_exponent(self, sites: list[str], offset: int) -> str:
        """Outcome parity s_a ⊕ s_b ⊕ … ⊕ offset."""

    @abstractmethod
    def fmt_power(self, letter: str, exponent: str) -> str: ...

    @abstractmethod
    def fmt_hadamard(self) -> str: ...


# ═══════════════════════════════════════════════════════════════════
# Walkers
# ═══════════════════════════════════════════════════════════════════

def render_pauli(p: PauliString, fmt: Format, g: GraphSpec | None = None) -> str:
    """Render a string with each qubit named by its vertex label in `g` (default: 1-based id)."""
    if p.is_identity:
        return fmt.fmt_phase(p.phase) + fmt.fmt_identity()
    factors = [
        fmt.fmt_factor(p.letter(q), g.vertex(q + 1).label if g else str(q + 1))
        for q in p.support
    ]
    return fmt.fmt_phase(p.phase) + fmt.fmt_product(factors)


def render_byproduct(b: ByproductOperator, fmt: Format, g: GraphSpec | None = None) -> str:
    """W = Z^z X^x [H] with z, x written as outcome parities."""
    def sites(vs: Sequence[int]) -> list[str]:
        return [g.vertex(v).label if g else str(v) for v in vs]

    parts = [
        fmt.fmt_power("Z", fmt.fmt_exponent(sites(b.z_vertices), b.z_offset)),
        fmt.fmt_power("X", fmt.fmt_exponent(sites(b.x_vertices), b.x_offset)),
    ]
    if b.fixup.value == "hadamard":
        parts.append(fmt.fmt_hadamard())
    return fmt.fmt_product(parts)


# ═══════════════════════════════════════════════════════════════════
# TextFormat
# ═══════════════════════════════════════════════════════════════════

_TEXT_PHASES = ("", "i", "-", "-i")


class TextFormat(Format):
    def fmt_phase(self, phase):
        return _TEXT_PHASES[phase % 4]

    def fmt_factor(self, letter, site):
        return f"{letter}{site}"

    def fmt_product(self, factors):
        return " ".join(factors)

    def fmt_identity(self):
        return "I"

    def fmt_exponent(self, sites, offset):
        terms = [f"s{s}" for s in sites] + (["1"] if offset else [])
        return " ⊕ ".join(terms) or "0"

    def fmt_power(self, letter, exponent):
        return f"{letter}^({exponent})"

    def fmt_hadamard(self):
        return "H"


class SparseFormat(TextFormat):
    """Dense enough for CSV cells and log lines."""

    def fmt_product(self, factors):
        return "·".join(factors)

    def fmt_exponent(self, sites, offset):
        terms = [f"s{s}" for s in sites] + (["1"] if offset else [])
        return "+".join(terms) or "0"


# ═══════════════════════════════════════════════════════════════════
# LatexFormat
# ═══════════════════════════════════════════════════════════════════

_LATEX_PHASES = ("", "i", "-", "-i")


def _latex_site(site: str) -> str:
    """1 → 1;  "2,0" → 2,0;  "m" → \\text{m}."""
    if site.replace(",", "").isdigit():
        return site
    return f"\\text{{{site}}}"


class LatexFormat(Format):
    def fmt_phase(self, phase):
        return _LATEX_PHASES[phase % 4]

    def fmt_factor(self, letter, site):
        return f"{letter}_{{{_latex_site(site)}}}"

    def fmt_product(self, factors):
        return " ".join(factors)

    def fmt_identity(self):
        return "\\mathbb{1}"

    def fmt_exponent(self, sites, offset):
        terms = [f"s_{{{_latex_site(s)}}}" for s in sites] + (["1"] if offset else [])
        return " \\oplus ".join(terms) or "0"

    def fmt_power(self, letter, exponent):
        return f"{letter}^{{{exponent}}}"

    def fmt_hadamard(self):
        return "H"


FORMATS: dict[str, Format] = {
    "text": TextFormat(),
    "sparse": SparseFormat(),
    "latex": LatexFormat(),
}
