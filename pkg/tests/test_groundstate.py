"""
Tests for spt_teleport.groundstate: perturbed stabilizer Hamiltonians,
their ground states, and teleportation through them.
"""
import math

import numpy as np
import pytest

from spt_teleport.defs import InputState
from spt_teleport.errors import InvalidParameterError, SizeLimitError
from spt_teleport.groundstate import (
    HamiltonianFamily,
    HamiltonianSpec,
    fidelity_vs_alpha_sweep,
    ground_state,
    hamiltonian_matrix,
    hamiltonian_operator,
    hamiltonian_terms,
    perturbation_terms,
    symmetry_certificate,
    teleport_through_ground_state,
)


class TestHamiltonian:
    """Terms, operator and dense matrix."""

    def test_family_names(self):
        assert HamiltonianFamily.parse("HY") is HamiltonianFamily.HY
        assert HamiltonianFamily.parse(" hz_lower ") is HamiltonianFamily.HZ_LOWER
        with pytest.raises(InvalidParameterError):
            HamiltonianFamily.parse("hx")

    def test_spec_limits(self):
        with pytest.raises(InvalidParameterError):
            HamiltonianSpec(HamiltonianFamily.HY, 2, 2.0)
        with pytest.raises(InvalidParameterError):
            HamiltonianSpec(HamiltonianFamily.HY, 0, 0.1)
        with pytest.raises(SizeLimitError):
            HamiltonianSpec(HamiltonianFamily.HY, 8, 0.1)

    def test_term_counts(self):
        spec = HamiltonianSpec(HamiltonianFamily.HY, 2, 0.3)
        assert spec.L == 6
        assert len(hamiltonian_terms(spec)) == 6 + 4
        lower = HamiltonianSpec(HamiltonianFamily.HZ_LOWER, 2, 0.3)
        assert len(hamiltonian_terms(lower)) == 6 + 2
        assert {p.letters.replace("I", "") for p in perturbation_terms(lower)} == {"Z"}

    def test_no_perturbation_at_zero(self):
        assert perturbation_terms(HamiltonianSpec(HamiltonianFamily.HZ, 2, 0.0)) == []

    def test_operator_matches_matrix(self):
        spec = HamiltonianSpec(HamiltonianFamily.HZ, 2, 0.7)
        v = np.random.default_rng(3).standard_normal(64) + 0j
        assert np.allclose(hamiltonian_operator(spec).matvec(v), hamiltonian_matrix(spec) @ v)

    def test_matrix_is_hermitian(self):
        h = hamiltonian_matrix(HamiltonianSpec(HamiltonianFamily.HY, 2, 0.4))
        assert np.allclose(h, h.conj().T)


class TestGroundState:
    """Lowest eigenvector and its symmetries."""

    def test_unperturbed(self):
        gs = ground_state(HamiltonianSpec(HamiltonianFamily.HY, 2, 0.0))
        assert gs.energy == pytest.approx(-6.0)
        assert gs.gap == pytest.approx(2.0)
        assert not gs.degenerate
        assert gs.residual < 1e-8

    @pytest.mark.parametrize("family, path, algebraic", [
        ("hy", "upper", True),
        ("hy", "lower", True),
        ("hz", "upper", False),
        ("hz_lower", "upper", True),
        ("hz_lower", "lower", False),
    ])
    def test_certificate(self, family, path, algebraic):
        spec = HamiltonianSpec(HamiltonianFamily.parse(family), 2, 0.3)
        cert = symmetry_certificate(spec, path)
        assert cert.algebraic is algebraic
        if algebraic:
            assert cert.max_deviation < 1e-6

    @pytest.mark.slow
    def test_sparse_solver(self):
        gs = ground_state(HamiltonianSpec(HamiltonianFamily.HY, 4, 0.0))
        assert gs.energy == pytest.approx(-10.0, abs=1e-8)


class TestTeleportThroughGroundState:
    """Readout on the ground state with the input attached."""

    def test_unperturbed_is_perfect(self):
        spec = HamiltonianSpec(HamiltonianFamily.HY, 2, 0.0)
        for s in (InputState.in_plane(0.9), InputState(1.2, 0.4)):
            for path in ("upper", "lower"):
                res = teleport_through_ground_state(spec, s, path, None, 0)
                assert res.fidelity == pytest.approx(1.0, abs=1e-9)
                assert res.shots is None

    def test_symmetric_path_survives_the_tilt(self):
        spec = HamiltonianSpec(HamiltonianFamily.HZ_LOWER, 2, 0.5)
        gs = ground_state(spec)
        s = InputState.in_plane(0.9)
        upper = teleport_through_ground_state(spec, s, "upper", None, 0, ground=gs)
        lower = teleport_through_ground_state(spec, s, "lower", None, 0, ground=gs)
        assert upper.fidelity == pytest.approx(1.0, abs=1e-6)
        assert lower.fidelity < upper.fidelity

    def test_sampled(self):
        spec = HamiltonianSpec(HamiltonianFamily.HY, 2, 0.0)
        res = teleport_through_ground_state(spec, InputState.in_plane(2.0), "upper", 50, 4, (0, 0, 0))
        assert res.shots == 50
        assert res.successes == 50
        assert res.stderr == 0.0

    def test_shots_must_be_positive(self):
        spec = HamiltonianSpec(HamiltonianFamily.HY, 2, 0.0)
        with pytest.raises(InvalidParameterError):
            teleport_through_ground_state(spec, InputState.plus(), "upper", 0, 0)

    def test_size_is_checked_before_diagonalizing(self, monkeypatch):
        def no_solve(spec):
            raise AssertionError("ground state solved for an oversized request")

        monkeypatch.setattr("spt_teleport.groundstate.ground_state", no_solve)
        spec = HamiltonianSpec(HamiltonianFamily.HY, 7, 0.1)
        with pytest.raises(SizeLimitError):
            teleport_through_ground_state(spec, InputState.plus(), "upper", None, 0)
        with pytest.raises(SizeLimitError):
            fidelity_vs_alpha_sweep(HamiltonianFamily.HY, [0.1], [2, 7], inputs=1, shots=None, seed=0)


class TestSweep:
    """Mean success per (n, α, path)."""

    def test_row_layout(self):
        rows = fidelity_vs_alpha_sweep(HamiltonianFamily.HY, [0.0, 0.5], [2], inputs=3, shots=None, seed=1)
        assert [(r["n"], r["alpha"], r["path"]) for r in rows] == [
            (2, 0.0, "upper"), (2, 0.0, "lower"), (2, 0.5, "upper"), (2, 0.5, "lower"),
        ]
        assert all(r["N"] == 7 for r in rows)
        assert rows[0]["shots"] == "exact"
        assert rows[0]["fidelity"] == pytest.approx(1.0, abs=1e-9)

    def test_same_seed_same_rows(self):
        a = fidelity_vs_alpha_sweep(HamiltonianFamily.HZ, [0.4], [2], inputs=2, shots=20, seed=11)
        b = fidelity_vs_alpha_sweep(HamiltonianFamily.HZ, [0.4], [2], inputs=2, shots=20, seed=11)
        assert a == b

    def test_alpha_range(self):
        with pytest.raises(InvalidParameterError):
            fidelity_vs_alpha_sweep(HamiltonianFamily.HY, [math.pi], [2], inputs=1, shots=None, seed=0)

    @pytest.mark.slow
    def test_hy_upper_path_is_protected(self):
        rows = fidelity_vs_alpha_sweep(HamiltonianFamily.HY, [0.2, 0.6, 1.0], [2], inputs=25, shots=100,
                                       seed=7, paths=("upper",))
        assert [r["alpha"] for r in rows] == [0.2, 0.6, 1.0]
        for r in rows:
            assert r["fidelity"] == pytest.approx(1.0, abs=3 * r["stderr"] + 1e-9)

    @pytest.mark.slow
    def test_hz_lower_degrades_with_length(self):
        ring = [InputState.in_plane(2 * math.pi * j / 8) for j in range(8)]
        lower = []
        for n in (2, 4, 6):
            spec = HamiltonianSpec(HamiltonianFamily.HZ_LOWER, n, 1.0)
            gs = ground_state(spec)
            upper = [teleport_through_ground_state(spec, s, "upper", None, 0, ground=gs).fidelity for s in ring]
            assert np.allclose(upper, 1.0, atol=1e-6)
            lower.append(np.mean([teleport_through_ground_state(spec, s, "lower", None, 0, ground=gs).fidelity
                                  for s in ring]))
        assert lower[0] > lower[1] > lower[2]
        assert lower[0] < 1.0 - 1e-3

        rows = fidelity_vs_alpha_sweep(HamiltonianFamily.HZ_LOWER, [1.0], [2, 4, 6], inputs=4, shots=None, seed=3)
        assert [r["N"] for r in rows if r["path"] == "upper"] == [7, 11, 15]
        assert all(r["fidelity"] == pytest.approx(1.0, abs=1e-6) for r in rows if r["path"] == "upper")
