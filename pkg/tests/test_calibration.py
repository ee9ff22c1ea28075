"""
Tests for spt_teleport.calibration: path selection and the single-shot
majority vote.
"""
import math

import pytest

from spt_teleport.calibration import calibrate_path, majority_vote_teleport
from spt_teleport.defs import InputState
from spt_teleport.errors import ProtocolError
from spt_teleport.graphs import DIAMOND_LINKS, build_hourglass
from spt_teleport.noise import SingleQubitError, ZZCrosstalk, error_generators
from spt_teleport.pauli import commutes


def commuting_paths(g, errors):
    gens = error_generators(g, errors)
    paths = (g.path(pid) for pid in sorted(g.paths))
    return [p.path_id for p in paths if all(commutes(p.s_x, e) and commutes(p.s_z, e) for e in gens)]


class TestCalibratePath:
    """Known states along every path; the best path wins."""

    def test_picks_the_protected_path(self, diamond):
        res = calibrate_path(diamond, [ZZCrosstalk(3, 5, 0.3)], shots=None)
        assert res.chosen == "p1"
        assert res.status == "protected"
        assert res.means["p1"] == pytest.approx(1.0, abs=1e-9)
        assert res.means["p2"] < res.means["p1"]
        assert len(res.fidelities["p1"]) == 2

    def test_ties_go_to_the_first_path(self, diamond):
        res = calibrate_path(diamond, [], shots=None)
        assert res.chosen == "p1"

    def test_nothing_clears_the_threshold(self, diamond):
        # ε = π/2 turns the crosstalk into an exact Z3 Z4 on both paths
        res = calibrate_path(diamond, [ZZCrosstalk(3, 4, math.pi / 2)], shots=None)
        assert res.chosen is None
        assert res.status == "unprotected"
        assert max(res.means.values()) == pytest.approx(0.0, abs=1e-9)

    def test_sampled_is_reproducible(self, diamond):
        errors = [ZZCrosstalk(3, 5, 0.3)]
        a = calibrate_path(diamond, errors, shots=50, seed=3)
        b = calibrate_path(diamond, errors, shots=50, seed=3)
        assert a.fidelities == b.fidelities
        assert a.chosen == "p1"
        assert a.shots == 50

    def test_custom_known_states(self, diamond):
        states = (InputState.one(), InputState.minus(), InputState(1.2, 0.4))
        res = calibrate_path(diamond, [], known_states=states, shots=None)
        assert len(res.fidelities["p2"]) == 3

    def test_needs_two_paths(self, diamond):
        with pytest.raises(ProtocolError):
            calibrate_path(diamond, [], paths=["p1"])


class TestMajorityVote:
    """Three rows decode one shot; a broken row is outvoted."""

    @pytest.mark.parametrize("state, bit", [(InputState.zero(), 0), (InputState.one(), 1)])
    def test_ideal_rows_agree(self, hourglass3, state, bit):
        vote = majority_vote_teleport(hourglass3, [], state, seed=1)
        assert vote.unanimous
        assert vote.decision == bit
        assert vote.correct is True
        assert set(vote.bits) == {"row0", "row1", "row2"}

    def test_flipped_row_dissents(self, hourglass3):
        # an exact X on (2,1) flips the X exponent of row1 only
        assert hourglass3.vid("2,1") == 7
        vote = majority_vote_teleport(hourglass3, [SingleQubitError(7, "X", math.pi)], InputState.zero(), seed=5)
        assert vote.dissenting == "row1"
        assert vote.decision == 0
        assert vote.correct is True

    def test_off_axis_input_has_no_expected_bit(self, hourglass3):
        vote = majority_vote_teleport(hourglass3, [], InputState.plus(), seed=2)
        assert vote.expected is None
        assert vote.correct is None

    def test_needs_three_rows(self, diamond, hourglass2):
        with pytest.raises(ProtocolError):
            majority_vote_teleport(diamond, [], InputState.zero(), seed=0)
        with pytest.raises(ProtocolError):
            majority_vote_teleport(hourglass2, [], InputState.zero(), seed=0)


class TestEverySingleError:
    """Noiseless calibration and voting over every single-error placement."""

    @pytest.mark.parametrize("link", DIAMOND_LINKS)
    def test_diamond_links(self, diamond, link):
        errors = [ZZCrosstalk(*link, 0.3)]
        protected = commuting_paths(diamond, errors)
        res = calibrate_path(diamond, errors, shots=None)
        if protected:
            assert res.chosen in protected
            assert res.means[res.chosen] == pytest.approx(1.0, abs=1e-9)
        else:
            assert max(res.means.values()) < 1.0 - 1e-6

    def test_some_links_protect_a_path(self, diamond):
        covered = [link for link in DIAMOND_LINKS if commuting_paths(diamond, [ZZCrosstalk(*link, 0.3)])]
        assert covered == [(2, 3), (4, 5), (2, 4), (3, 5)]

    @pytest.mark.parametrize("n", [1, 2])
    @pytest.mark.parametrize("axis", ["X", "Z"])
    def test_hourglass_bulk_vertices(self, n, axis):
        g = build_hourglass(n)
        bulk = [v.id for v in g.vertices if "," in v.label]
        assert len(bulk) == 2 * n
        for v in bulk:
            errors = [SingleQubitError(v, axis, 0.6)]
            protected = commuting_paths(g, errors)
            assert len(protected) == 1
            res = calibrate_path(g, errors, shots=None)
            assert res.chosen == protected[0]
            assert res.status == "protected"

    @pytest.mark.parametrize("row", [0, 1, 2])
    @pytest.mark.parametrize("axis", ["X", "Z"])
    @pytest.mark.parametrize("state, bit", [(InputState.zero(), 0), (InputState.one(), 1)])
    def test_vote_names_the_flipped_row(self, hourglass3, row, axis, state, bit):
        # the logical Z bit of row k is carried by its (2,k) outcome
        v = hourglass3.vid(f"2,{row}")
        vote = majority_vote_teleport(hourglass3, [SingleQubitError(v, axis, math.pi)], state, seed=row)
        assert vote.dissenting == f"row{row}"
        assert vote.decision == bit
        assert vote.correct is True
