import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from preptomo.errors import ConfigError, DimensionError, LinearDependenceError
from preptomo.operators import bloch_to_state, pauli
from preptomo.states import (
    InputSet,
    compute_duals,
    dual_basis,
    expand_in_inputs,
    reassemble,
    standard_inputs,
)

I2 = np.eye(2)
S1, S2, S3 = pauli(1), pauli(2), pauli(3)


def printed_duals():
    return [0.5 * (I2 - S1 - S2 - S3), 0.5 * (I2 + S1 - S2 - S3), S2, S3]


def printed_p_duals(p):
    return [
        (p * I2 - S1 - S2 - S3) / (2 * p),
        (p * I2 + S1 - S2 - S3) / (2 * p),
        S2 / p,
        S3 / p,
    ]


def biortho(inputs, duals):
    return np.array([[np.trace(d.conj().T @ s.matrix) for s in inputs.states] for d in duals])


def test_projector_set():
    inputs = standard_inputs("projector_set")
    expected = [0.5 * (I2 - S1), 0.5 * (I2 + S1), 0.5 * (I2 + S2), 0.5 * (I2 + S3)]
    for s, e in zip(inputs.states, expected):
        assert np.allclose(s.matrix, e)
    assert inputs.labels == ("(1,-)", "(1,+)", "(2,+)", "(3,+)")


def test_p_scaled_limit():
    a = standard_inputs("p_scaled", 1.0)
    b = standard_inputs("projector_set")
    for x, y in zip(a.states, b.states):
        assert np.array_equal(x.matrix, y.matrix)


def test_multi_pin_set():
    inputs = standard_inputs("multi_pin_set")
    expected = [I2 / 2, 0.5 * (I2 + S1), 0.5 * (I2 + S2), 0.5 * (I2 + S3)]
    for s, e in zip(inputs.states, expected):
        assert np.allclose(s.matrix, e)


@pytest.mark.parametrize("p", [0, -0.1, 1.2])
def test_p_out_of_range(p):
    with pytest.raises(ConfigError):
        standard_inputs("p_scaled", p)


def test_unknown_family():
    with pytest.raises(ConfigError):
        standard_inputs("bogus")


def test_projector_duals_match_printed():
    duals = compute_duals(standard_inputs("projector_set"))
    for d, e in zip(duals.duals, printed_duals()):
        assert np.max(np.abs(d - e)) <= 1e-12


@pytest.mark.parametrize("p", [0.3, 0.5, 0.9, 1.0])
def test_p_scaled_duals_match_printed(p):
    duals = compute_duals(standard_inputs("p_scaled", p))
    for d, e in zip(duals.duals, printed_p_duals(p)):
        assert np.max(np.abs(d - e)) <= 1e-12


def test_multi_pin_duals_hand_inversion():
    hand = [I2 - S1 - S2 - S3, S1, S2, S3]
    inputs = standard_inputs("multi_pin_set")
    assert np.allclose(biortho(inputs, hand), np.eye(4), atol=1e-15)
    duals = compute_duals(inputs)
    for d, e in zip(duals.duals, hand):
        assert np.max(np.abs(d - e)) <= 1e-12


@pytest.mark.parametrize("family", ["projector_set", "p_scaled", "multi_pin_set"])
def test_biorthogonality_and_sum(family):
    inputs = standard_inputs(family, 0.7)
    duals = compute_duals(inputs)
    assert np.max(np.abs(biortho(inputs, duals.duals) - np.eye(4))) <= 1e-10
    assert np.max(np.abs(sum(duals.duals) - I2)) <= 1e-10
    back = dual_basis(duals.duals)
    for a, b in zip(back, inputs.matrices):
        assert np.max(np.abs(a - b)) <= 1e-9


def test_linearly_dependent_inputs():
    states = [bloch_to_state(v) for v in ([1, 0, 0], [-1, 0, 0], [0, 0, 0], [0, 0, 1])]
    with pytest.raises(LinearDependenceError):
        InputSet(("a", "b", "c", "d"), states)


def test_wrong_number_of_inputs():
    with pytest.raises(DimensionError):
        InputSet(("a",), [bloch_to_state([0, 0, 1])])


def test_expand_basis_element():
    inputs = standard_inputs("projector_set")
    duals = compute_duals(inputs)
    x = expand_in_inputs(inputs["(2,+)"], inputs, duals)
    assert np.allclose(x, [0, 0, 1, 0], atol=1e-15)


def test_expand_non_convex():
    inputs = standard_inputs("projector_set")
    duals = compute_duals(inputs)
    x = expand_in_inputs(bloch_to_state([0, -1, 0]), inputs, duals)
    assert np.allclose(x, [1, 1, -1, 0], atol=1e-14)


def test_expand_multi_pin_hand_solution():
    a = np.array([0.2, -0.3, 0.4])
    inputs = standard_inputs("multi_pin_set")
    x = expand_in_inputs(bloch_to_state(a), inputs, compute_duals(inputs))
    assert np.allclose(x, [1 - a.sum(), *a], atol=1e-14)


def test_expand_mismatch():
    a = standard_inputs("projector_set")
    b = standard_inputs("multi_pin_set")
    with pytest.raises(DimensionError):
        expand_in_inputs(bloch_to_state([0, 0, 0]), a, compute_duals(b))


@settings(max_examples=100, deadline=None)
@given(
    st.sampled_from(["projector_set", "p_scaled", "multi_pin_set"]),
    st.lists(st.floats(-3, 3), min_size=3, max_size=3),
)
def test_reconstruction_of_unit_trace_hermitian(family, v):
    # unit trace Hermitian, not necessarily positive
    rho = bloch_to_state(v, checked=False)
    inputs = standard_inputs(family, 0.6)
    x = expand_in_inputs(rho, inputs, compute_duals(inputs))
    assert np.max(np.abs(reassemble(x, inputs) - rho.matrix)) <= 1e-9
    assert abs(x.sum() - 1) < 1e-10
