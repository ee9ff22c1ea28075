"""
Tests for spt_teleport.sim: states, gates, measurement and branch tables.
"""
import math

import numpy as np
import pytest

from spt_teleport.defs import Gate, GateKind, MeasureBasis
from spt_teleport.errors import DimensionError, InvalidParameterError, NonHermitianError, ProtocolError, SizeLimitError
from spt_teleport.graphs import compile_preparation
from spt_teleport.pauli import PauliString
from spt_teleport.sim import (
    CZ,
    DensityMatrix,
    Measurement,
    MeasurementPlan,
    StateVector,
    apply_gate,
    branch_table,
    check_invariants,
    enumerate_branches,
    expectation,
    ising,
    make_rng,
    measure,
    observable,
    partial_trace,
    prepare,
    rotation,
    schmidt_spectrum,
)


@pytest.fixture
def bell():
    return StateVector(2, np.array([1, 0, 0, 1]) / math.sqrt(2))


class TestRng:
    """Seeded, keyed Philox streams."""

    def test_same_seed_same_stream(self):
        assert np.array_equal(make_rng(42, 3).random(5), make_rng(42, 3).random(5))

    def test_keys_are_independent(self):
        assert not np.array_equal(make_rng(42, 0).random(5), make_rng(42, 1).random(5))
        assert not np.array_equal(make_rng(42, 0, 1).random(5), make_rng(42, 1, 0).random(5))


class TestStates:
    """Construction limits and invariants."""

    def test_amplitude_count(self):
        with pytest.raises(DimensionError):
            StateVector(2, np.ones(3))

    def test_statevector_cap(self):
        with pytest.raises(SizeLimitError):
            StateVector(17, np.ones(1))

    def test_density_cap(self):
        with pytest.raises(SizeLimitError):
            DensityMatrix(11, np.ones((1, 1)))

    def test_zeros_checks_the_cap_first(self):
        with pytest.raises(SizeLimitError):
            StateVector.zeros(40)
        with pytest.raises(SizeLimitError):
            DensityMatrix.zeros(30)

    def test_product_order(self):
        s = StateVector.product([np.array([0, 1]), np.array([1, 0])])
        assert s.amplitudes[2] == 1

    def test_invariants(self):
        check_invariants(StateVector.zeros(3))
        check_invariants(DensityMatrix.zeros(2))
        with pytest.raises(AssertionError):
            check_invariants(StateVector(1, np.array([1.0, 1.0])))

    def test_mixed_preparation_matches_pure(self, diamond):
        circuit = compile_preparation(diamond)
        pure = prepare(circuit)
        mixed = prepare(circuit, mixed=True)
        assert isinstance(mixed, DensityMatrix)
        s = diamond.path("p1").s_x
        assert expectation(pure, s) == pytest.approx(1.0)
        assert expectation(mixed, s) == pytest.approx(1.0)


class TestGates:
    """Gate matrices."""

    def test_ising_is_cz_up_to_local_z(self):
        local = np.kron(rotation("Z", math.pi / 2), rotation("Z", math.pi / 2))
        assert np.allclose(ising(0.0), np.exp(1j * math.pi / 4) * local @ CZ)

    def test_rotation_is_unitary(self):
        for letter in "XYZ":
            u = rotation(letter, 0.7)
            assert np.allclose(u @ u.conj().T, np.eye(2))

    def test_channel_needs_density_matrix(self):
        with pytest.raises(ProtocolError):
            apply_gate(StateVector.zeros(2), Gate(GateKind.DEPOLARIZE2, (0, 1), 0.1))

    def test_gate_arity(self):
        with pytest.raises(ValueError):
            Gate(GateKind.ISING, (0,))
        with pytest.raises(ValueError):
            Gate(GateKind.CZ, (1, 1))


class TestMeasurement:
    """Expectations, single-qubit sampling and branch enumeration."""

    def test_expectation(self):
        plus = StateVector.product([np.array([1, 1]) / math.sqrt(2)])
        assert expectation(plus, PauliString.from_letters("X")) == pytest.approx(1.0)
        assert expectation(plus, PauliString.from_letters("Z")) == pytest.approx(0.0)

    def test_expectation_needs_hermitian(self):
        with pytest.raises(NonHermitianError):
            expectation(StateVector.zeros(1), PauliString.from_label("iZ"))

    def test_expectation_width(self):
        with pytest.raises(DimensionError):
            expectation(StateVector.zeros(2), PauliString.from_letters("Z"))

    def test_deterministic_outcomes(self):
        bit, _ = measure(StateVector.zeros(1), 0, MeasureBasis.Z, 0)
        assert bit == 0
        minus = StateVector.product([np.array([1, -1]) / math.sqrt(2)])
        bit, post = measure(minus, 0, MeasureBasis.X, 1)
        assert bit == 1
        assert expectation(post, PauliString.from_letters("X")) == pytest.approx(-1.0)

    def test_collapse_of_bell_pair(self, bell):
        bit, post = measure(bell, 0, MeasureBasis.Z, 7)
        z1 = expectation(post, PauliString.from_letters("IZ"))
        assert z1 == pytest.approx(1.0 if bit == 0 else -1.0)

    def test_axis_observable(self):
        assert np.allclose(observable([0, 0, 2]), np.diag([1, -1]))
        with pytest.raises(InvalidParameterError):
            observable([0, 0, 0])

    def test_branch_table_of_bell_pair(self, bell):
        plan = MeasurementPlan((Measurement(1, 0, MeasureBasis.Z),), 1)
        table = branch_table(bell, plan)
        assert np.allclose(table.probabilities, [0.5, 0.5])
        assert np.allclose(np.abs(table.normalized_output(0)), [1, 0])
        assert np.allclose(np.abs(table.normalized_output(1)), [0, 1])
        assert table.record(1).outcomes == {1: 1}

    def test_plan_must_cover_every_qubit(self):
        plan = MeasurementPlan((Measurement(1, 0, MeasureBasis.Z),), 1)
        with pytest.raises(ProtocolError):
            branch_table(StateVector.zeros(3), plan)

    def test_branches_sum_to_one(self, diamond):
        state = prepare(compile_preparation(diamond))
        branches = enumerate_branches(state, diamond.measurement_plan())
        assert len(branches) == 2 ** 5
        assert sum(b.record.probability for b in branches) == pytest.approx(1.0)

    def test_mixed_branches_sum_to_one(self, diamond):
        state = prepare(compile_preparation(diamond), mixed=True)
        table = branch_table(state, diamond.measurement_plan())
        assert table.mixed
        assert table.probabilities.sum() == pytest.approx(1.0)


class TestReducedStates:
    """Partial traces and Schmidt spectra."""

    def test_bell_reduced_state(self, bell):
        rho = partial_trace(bell, [0])
        assert np.allclose(rho.matrix, np.eye(2) / 2)

    def test_schmidt_spectrum(self, bell):
        assert np.allclose(schmidt_spectrum(bell, [1]), [0.5, 0.5])

    def test_product_state_is_pure(self):
        s = StateVector.product([np.array([1, 0]), np.array([1, 1]) / math.sqrt(2)])
        assert np.allclose(schmidt_spectrum(s, [0]), [1.0, 0.0])

    def test_partial_trace_of_density_matrix(self, bell):
        rho = partial_trace(DensityMatrix.from_state(bell), [1])
        assert np.allclose(rho.matrix, np.eye(2) / 2)
