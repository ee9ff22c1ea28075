"""
Tests for spt_teleport.format and the terminal reports in printer.
"""
import io
import math

from spt_teleport.calibration import calibrate_path, majority_vote_teleport
from spt_teleport.defs import InputState
from spt_teleport.format import FORMATS, LatexFormat, SparseFormat, TextFormat, render_byproduct, render_pauli
from spt_teleport.graphs import compile_preparation
from spt_teleport.noise import SingleQubitError, ZZCrosstalk
from spt_teleport.pauli import PauliString
from spt_teleport.printer import print_calibration, print_graph, print_majority, print_spectrum, print_table
from spt_teleport.sim import prepare
from spt_teleport.spt import entanglement_spectrum
from spt_teleport.teleport import byproduct_for_path


class TestRenderPauli:
    """Pauli strings in the three formats."""

    def test_text(self, diamond_strings):
        assert render_pauli(diamond_strings["s135"], TextFormat()) == "X1 X3 X5 Z6"

    def test_sparse(self, diamond_strings):
        assert render_pauli(diamond_strings["s246"], SparseFormat()) == "Z1·X2·X4·X6"

    def test_latex(self, diamond_strings):
        assert render_pauli(diamond_strings["s135"], LatexFormat()) == "X_{1} X_{3} X_{5} Z_{6}"

    def test_phase_and_identity(self):
        assert render_pauli(PauliString.from_label("-ZZ"), TextFormat()) == "-Z1 Z2"
        assert render_pauli(PauliString.identity(3), TextFormat()) == "I"
        assert render_pauli(PauliString.identity(2).with_phase(2), LatexFormat()) == "-\\mathbb{1}"

    def test_vertex_labels(self, hourglass2):
        s_z = hourglass2.path("upper").s_z
        assert render_pauli(s_z, TextFormat(), hourglass2) == "ZI Xm Y2,0 ZO"
        assert render_pauli(s_z, LatexFormat(), hourglass2) == "Z_{\\text{I}} X_{\\text{m}} Y_{2,0} Z_{\\text{O}}"

    def test_registry(self):
        assert sorted(FORMATS) == ["latex", "sparse", "text"]


class TestRenderByproduct:
    """Byproducts written as outcome parities."""

    def test_text_with_labels(self, hourglass2):
        b = byproduct_for_path(hourglass2, "upper")
        assert render_byproduct(b, TextFormat(), hourglass2) == "Z^(sI ⊕ s1,0 ⊕ 1) X^(sm ⊕ s2,0 ⊕ 1)"

    def test_latex_hadamard(self, diamond):
        b = byproduct_for_path(diamond, "p1")
        assert render_byproduct(b, LatexFormat()) == "Z^{s_{2} \\oplus s_{4}} X^{s_{1} \\oplus s_{3} \\oplus s_{5}} H"


class TestPrinter:
    """Reports land in the given stream."""

    def test_graph_report(self, diamond):
        out = io.StringIO()
        print_graph(diamond, out=out)
        text = out.getvalue()
        assert "diamond" in text
        assert "Qubits : 6" in text
        assert "s_x = X1 X3 X5 Z6" in text
        assert "W   = Z^(s2 ⊕ s4) X^(s1 ⊕ s3 ⊕ s5) H" in text

    def test_spectrum_report(self, chain6):
        spec = entanglement_spectrum(prepare(compile_preparation(chain6)), [4, 5, 6])
        out = io.StringIO()
        print_spectrum(chain6, spec, out)
        assert "A = {4,5,6}" in out.getvalue()
        assert "Rank : 2" in out.getvalue()

    def test_calibration_report(self, diamond):
        res = calibrate_path(diamond, [ZZCrosstalk(3, 5, 0.3)], shots=None)
        out = io.StringIO()
        print_calibration(diamond, res, out)
        assert "protected, use path p1" in out.getvalue()
        assert "exact" in out.getvalue()

    def test_table(self):
        out = io.StringIO()
        print_table([{"path": "p1", "fidelity": 1.0}, {"path": "p2", "fidelity": 0.91234567}],
                    ["path", "fidelity"], out)
        lines = out.getvalue().splitlines()
        assert "fidelity" in lines[0]
        assert lines[3].endswith("0.912346")

    def test_majority_report(self, hourglass3):
        vote = majority_vote_teleport(hourglass3, [SingleQubitError(7, "X", math.pi)], InputState.zero(), seed=5)
        out = io.StringIO()
        print_majority(vote, out)
        lines = out.getvalue().splitlines()
        assert lines[0] == "=" * 40
        assert lines[1] == "  single-shot majority vote"
        assert "dissent   : row1 (corrupted)" in out.getvalue()
        assert "expected  : 0 (correct)" in out.getvalue()
