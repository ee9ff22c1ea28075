"""
Tests for spt_teleport.teleport: byproducts, exact fidelities, sampled
runs, channel classes and tomography.
"""
import math

import numpy as np
import pytest

from spt_teleport.defs import InputState, MeasureBasis
from spt_teleport.errors import InvalidParameterError, ProtocolError
from spt_teleport.graphs import build_hourglass
from spt_teleport.noise import parse_error
from spt_teleport.registry import builtin_config
from spt_teleport.sim import make_rng
from spt_teleport.teleport import (
    ChannelClass,
    OutputFixup,
    byproduct_for_path,
    classify_channel,
    fidelity_exact,
    run_teleport,
    sample_inputs,
    teleport_branches,
    tomography_exact,
    tomography_teleport,
)

EXACT = 1e-9


class TestByproducts:
    """Byproduct operators derived from the path strings."""

    def test_diamond_green(self, diamond):
        b = byproduct_for_path(diamond, "p1")
        assert b.fixup is OutputFixup.HADAMARD
        assert b.z_vertices == (2, 4)
        assert b.x_vertices == (1, 3, 5)
        assert (b.z_offset, b.x_offset) == (0, 0)
        assert b.describe() == "Z^(s2+s4)·X^(s1+s3+s5)·H"

    def test_hourglass_upper_counts_minus_y_signs(self, hourglass2):
        b = byproduct_for_path(hourglass2, "upper")
        assert b.fixup is OutputFixup.IDENTITY
        assert b.z_vertices == (1, 3)
        assert b.x_vertices == (2, 5)
        assert (b.z_offset, b.x_offset) == (1, 1)

    def test_exponents_from_outcomes(self, diamond):
        b = byproduct_for_path(diamond, "p1")
        outcomes = {1: 1, 2: 1, 3: 0, 4: 0, 5: 1}
        assert b.exponents(outcomes) == (1, 0)

    def test_correction_undoes_the_byproduct(self, diamond):
        b = byproduct_for_path(diamond, "p1")
        outcomes = {1: 1, 2: 1, 3: 0, 4: 0, 5: 0}
        assert b.exponents(outcomes) == (1, 1)
        w = b.pauli(outcomes) @ OutputFixup.HADAMARD.matrix
        assert np.allclose(b.correction_matrix(outcomes) @ w, np.eye(2))

    def test_input_must_be_measured_in_x(self, diamond):
        with pytest.raises(ProtocolError):
            byproduct_for_path(diamond, "p1", {1: MeasureBasis.Z})

    def test_string_must_match_measured_bases(self, diamond):
        with pytest.raises(ProtocolError):
            byproduct_for_path(diamond, "p1", {3: MeasureBasis.Y})

    def test_needs_an_input_vertex(self):
        g = build_hourglass(2, with_input=False)
        with pytest.raises(ProtocolError):
            byproduct_for_path(g, "upper")
        with pytest.raises(ProtocolError):
            teleport_branches(g, [], InputState.plus())


class TestIdealTeleportation:
    """Without errors every path teleports perfectly."""

    def test_diamond(self, diamond, cardinal_inputs, generic_input):
        for pid in ("p1", "p2"):
            for s in cardinal_inputs + [generic_input]:
                assert fidelity_exact(diamond, [], s, pid) == pytest.approx(1.0, abs=EXACT)

    def test_chain(self, chain6, generic_input):
        assert fidelity_exact(chain6, [], generic_input, "main") == pytest.approx(1.0, abs=EXACT)

    def test_every_hourglass_path(self, hourglass2, generic_input):
        for pid in hourglass2.path_ids():
            assert fidelity_exact(hourglass2, [], generic_input, pid) == pytest.approx(1.0, abs=EXACT)

    def test_three_row_hourglass(self, hourglass3, generic_input):
        for pid in ("row0", "row1", "row2"):
            assert fidelity_exact(hourglass3, [], generic_input, pid) == pytest.approx(1.0, abs=EXACT)


class TestProtection:
    """A path whose strings commute with the error keeps F = 1."""

    @pytest.mark.parametrize("eps", [-0.45, -0.1, 0.2, 0.45])
    def test_diamond_crosstalk(self, diamond, generic_input, eps):
        errors = [parse_error(f"zz:3,5,{eps}")]
        assert fidelity_exact(diamond, errors, generic_input, "p1") == pytest.approx(1.0, abs=EXACT)
        assert fidelity_exact(diamond, errors, generic_input, "p2") < 1.0 - 1e-6

    def test_chain_idle_crosstalk_is_harmless(self, chain6, generic_input):
        f = fidelity_exact(chain6, [parse_error("zz:2,4,0.3")], generic_input, "main")
        assert f == pytest.approx(1.0, abs=EXACT)

    def test_chain_link_crosstalk_breaks(self, chain6, generic_input):
        f = fidelity_exact(chain6, [parse_error("zz:3,4,0.3")], generic_input, "main")
        assert f < 1.0 - 1e-6

    def test_hourglass_bulk_x_error(self, hourglass2, generic_input):
        errors = [parse_error("x1q:4,X,0.6")]
        assert fidelity_exact(hourglass2, errors, generic_input, "upper") == pytest.approx(1.0, abs=EXACT)
        assert fidelity_exact(hourglass2, errors, generic_input, "lower") < 1.0 - 1e-6

    def test_hourglass_bulk_z_error(self, hourglass2, generic_input):
        errors = [parse_error("x1q:5,Z,0.6")]
        assert fidelity_exact(hourglass2, errors, generic_input, "lower") == pytest.approx(1.0, abs=EXACT)
        assert fidelity_exact(hourglass2, errors, generic_input, "upper") < 1.0 - 1e-6

    def test_half_the_hourglass_paths_survive(self, generic_input):
        g = build_hourglass(2)
        errors = [parse_error("x1q:4,X,0.6")]
        perfect = [pid for pid in g.path_ids()
                   if fidelity_exact(g, errors, generic_input, pid) > 1.0 - 1e-9]
        assert perfect == ["k=00", "k=01"]

    @pytest.mark.parametrize("path", ["p1", "p2"])
    def test_depolarizing_is_monotone(self, diamond, generic_input, path):
        fids = [fidelity_exact(diamond, [parse_error(f"depol2q:{p}")], generic_input, path)
                for p in (0.0, 0.02, 0.05, 0.1)]
        assert fids[0] == pytest.approx(1.0, abs=EXACT)
        assert fids[0] > fids[1] > fids[2] > fids[3]

    def test_depolarizing_pair_brackets_the_midpoint(self, diamond, generic_input):
        doc = builtin_config("fig9_depolarizing")
        low, high = doc["sweep"]["p"]
        mid = (low + high) / 2
        for eps in doc["sweep"]["eps"]:
            for path in doc["paths"]:
                f = [fidelity_exact(diamond, [parse_error(f"zz:3,5,{eps}"), parse_error(f"depol2q:{p}")],
                                    generic_input, path) for p in (low, mid, high)]
                assert f[0] > f[1] > f[2], (eps, path)

    def test_hourglass_lower_rotation_sweep(self, hourglass2, generic_input):
        lower_bulk = (hourglass2.vid("1,1"), hourglass2.vid("2,1"))
        assert lower_bulk == (4, 6)
        for theta in np.linspace(0.0, math.pi, 13):
            errors = [parse_error(f"x1q:{v},X,{theta}") for v in lower_bulk]
            upper = fidelity_exact(hourglass2, errors, generic_input, "upper")
            assert upper == pytest.approx(1.0, abs=EXACT), theta
            if 0.0 < theta < math.pi:
                assert fidelity_exact(hourglass2, errors, generic_input, "lower") < 1.0 - 1e-6, theta


class TestSampledRuns:
    """Shot-by-shot protocol."""

    def test_protected_path_always_succeeds(self, diamond, generic_input):
        run = run_teleport(diamond, [parse_error("zz:3,5,0.3")], generic_input, "green", 200, seed=1)
        assert run.path_id == "p1"
        assert run.shots == 200
        assert run.fidelity == pytest.approx(1.0)
        assert run.channel_class is ChannelClass.QUANTUM

    def test_same_seed_same_run(self, diamond, generic_input):
        errors = [parse_error("zz:3,5,0.4")]
        a = run_teleport(diamond, errors, generic_input, "p2", 100, seed=42, cell=(0, 1))
        b = run_teleport(diamond, errors, generic_input, "p2", 100, seed=42, cell=(0, 1))
        assert [r.success for r in a.results] == [r.success for r in b.results]
        assert a.fidelity == b.fidelity

    def test_sampled_matches_exact(self, diamond, generic_input):
        errors = [parse_error("zz:3,5,0.4")]
        exact = fidelity_exact(diamond, errors, generic_input, "p2")
        run = run_teleport(diamond, errors, generic_input, "p2", 4000, seed=5)
        assert abs(run.fidelity - exact) < 5 * max(run.stderr, 1e-3)

    def test_shots_must_be_positive(self, diamond):
        with pytest.raises(InvalidParameterError):
            run_teleport(diamond, [], InputState.plus(), "p1", 0, seed=0)


class TestChannelClass:
    """Quantum above 2/3, random near 1/2, classical otherwise."""

    def test_thresholds(self):
        assert classify_channel(1.0) is ChannelClass.QUANTUM
        assert classify_channel(0.7) is ChannelClass.QUANTUM
        assert classify_channel(2 / 3) is ChannelClass.CLASSICAL
        assert classify_channel(0.6) is ChannelClass.CLASSICAL
        assert classify_channel(0.505) is ChannelClass.RANDOM

    def test_out_of_range(self):
        with pytest.raises(InvalidParameterError):
            classify_channel(1.2)


class TestInputs:
    """Random input sampling."""

    def test_xy_inputs_lie_on_the_equator(self):
        states = sample_inputs(make_rng(0), 10, "xy")
        assert len(states) == 10
        assert all(s.in_xy_plane for s in states)

    def test_bloch_inputs_are_unit_vectors(self):
        for s in sample_inputs(make_rng(0), 10):
            assert np.linalg.norm(s.bloch) == pytest.approx(1.0)

    def test_reproducible(self):
        a = sample_inputs(make_rng(9, 2), 5)
        b = sample_inputs(make_rng(9, 2), 5)
        assert a == b

    def test_unknown_distribution(self):
        with pytest.raises(InvalidParameterError):
            sample_inputs(make_rng(0), 3, "gaussian")


class TestTomography:
    """Reconstructed output states."""

    def test_exact_ideal(self, diamond, generic_input):
        res = tomography_exact(diamond, [], generic_input, "p1")
        assert np.allclose(res.bloch, generic_input.bloch, atol=1e-9)
        assert res.fidelity == pytest.approx(1.0, abs=EXACT)
        assert not res.clipped

    def test_exact_broken_path_shrinks_the_bloch_vector(self, diamond):
        res = tomography_exact(diamond, [parse_error("zz:3,5,0.3")], InputState.in_plane(0.3), "p2")
        assert np.linalg.norm(res.bloch) < 1.0
        assert res.fidelity < 1.0

    def test_sampled(self, diamond):
        s = InputState.in_plane(math.pi / 4)
        res = tomography_teleport(diamond, [], s, "p1", 2000, seed=3)
        assert res.shots_per_basis == 2000
        assert res.fidelity == pytest.approx(1.0, abs=0.05)
        assert np.trace(res.rho).real == pytest.approx(1.0)
