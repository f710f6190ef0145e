import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from preptomo.errors import ConfigError, NotPhysicalError, NotPreparableError
from preptomo.operators import (
    BipartiteState,
    bloch_to_state,
    ket_to_state,
    partial_trace_env,
    partial_trace_sys,
    pauli,
    state_to_bloch,
    tensor,
)
from preptomo.preparation import (
    CorrelatedFamily,
    IdealPin,
    MixedPin,
    MultiPin,
    NoPin,
    PinWithControlError,
    apply_pin,
    erroneous_rotation,
    initial_state,
    prepare_input,
    rotation_for_target,
)
from preptomo.states import PROJECTOR_LABELS, standard_inputs

I2 = np.eye(2)
S1, S2, S3 = pauli(1), pauli(2), pauli(3)
RHO_SE = initial_state((0.0, 0.0, 0.0), 0.5)


def random_joint_state(rng):
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = m @ m.conj().T
    return BipartiteState(rho / np.trace(rho))


def random_pure(rng):
    v = rng.normal(size=3)
    return bloch_to_state(v / np.linalg.norm(v))


def test_initial_state_matches_formula():
    a = (0.1, -0.2, 0.3)
    rho = initial_state(a, 0.4)
    expected = 0.25 * (np.eye(4) + sum(x * tensor(s, I2) for x, s in zip(a, (S1, S2, S3)))
                       + 0.4 * tensor(S2, S3))
    assert np.allclose(rho.matrix, expected)


def test_pin_on_correlated_state():
    phi = ket_to_state([np.cos(0.3), np.exp(0.2j) * np.sin(0.3)])
    out = apply_pin(initial_state((0.2, 0.1, 0.0), 0.5), phi)
    assert np.allclose(out.matrix, tensor(phi.matrix, I2 / 2), atol=1e-15)


def test_pin_on_product_state():
    p = bloch_to_state([0.3, 0, 0.1]).matrix
    tau = bloch_to_state([0, 0.4, 0]).matrix
    phi = bloch_to_state([0, 0, 1])
    out = apply_pin(BipartiteState(tensor(p, tau)), phi)
    assert np.allclose(out.matrix, tensor(phi.matrix, tau))


def test_pin_keeps_environment_marginal():
    rng = np.random.default_rng(0)
    for _ in range(10):
        rho = random_joint_state(rng)
        out = apply_pin(rho, random_pure(rng))
        assert np.max(np.abs(partial_trace_sys(out.matrix) - partial_trace_sys(rho.matrix))) <= 1e-12


def test_pin_rejects_mixed_target():
    with pytest.raises(NotPhysicalError):
        apply_pin(RHO_SE, bloch_to_state([0, 0, 0.5]))


def test_rotation_identity_when_aligned():
    phi = bloch_to_state([0, 0, 1])
    assert np.array_equal(rotation_for_target(phi, phi), I2)


def test_rotation_to_plus_x():
    v = rotation_for_target(bloch_to_state([0, 0, 1]), bloch_to_state([1, 0, 0]))
    out = v @ bloch_to_state([0, 0, 1]).matrix @ v.conj().T
    assert np.max(np.abs(state_to_bloch(out) - [1, 0, 0])) <= 1e-12


@pytest.mark.parametrize("a,b", [([0, 0, 1], [0, 0, -1]), ([1, 0, 0], [-1, 0, 0]), ([0, 1, 0], [0, -1, 0])])
def test_rotation_antipodal(a, b):
    phi, tgt = bloch_to_state(a), bloch_to_state(b)
    v = rotation_for_target(phi, tgt)
    assert np.allclose(v @ phi.matrix @ v.conj().T, tgt.matrix, atol=1e-12)


def test_rotation_unitary_and_correct_random():
    rng = np.random.default_rng(1)
    for _ in range(100):
        phi, tgt = random_pure(rng), random_pure(rng)
        v = rotation_for_target(phi, tgt)
        assert np.max(np.abs(v.conj().T @ v - I2)) <= 1e-12
        assert np.max(np.abs(v @ phi.matrix @ v.conj().T - tgt.matrix)) <= 1e-12


def test_rotation_has_ket_bra_form():
    # V = |psi><phi| + |psi_perp><phi_perp| maps the orthocomplement to the orthocomplement
    rng = np.random.default_rng(2)
    phi, tgt = random_pure(rng), random_pure(rng)
    v = rotation_for_target(phi, tgt)
    perp_in = I2 - phi.matrix
    perp_out = I2 - tgt.matrix
    assert np.allclose(v @ perp_in @ v.conj().T, perp_out, atol=1e-12)


def test_rotation_requires_pure():
    with pytest.raises(NotPhysicalError):
        rotation_for_target(bloch_to_state([0, 0, 0.9]), bloch_to_state([1, 0, 0]))


def faulty_state(eps):
    v = erroneous_rotation(eps)
    return v @ np.diag([0, 1]) @ v.conj().T


def test_erroneous_rotation_zero_error():
    assert np.allclose(faulty_state(0.0), 0.5 * (I2 - S1), atol=1e-15)


def test_erroneous_rotation_column():
    eps = 0.1
    v = erroneous_rotation(eps)
    expected = np.array([-np.sqrt(1 + eps), np.sqrt(1 - eps)]) / np.sqrt(2)
    assert np.allclose(v[:, 1], expected)
    assert np.allclose(v[:, 0], np.array([np.sqrt(1 - eps), np.sqrt(1 + eps)]) / np.sqrt(2))


def test_erroneous_rotation_state():
    bloch = [np.real(np.trace(faulty_state(0.1) @ s)) for s in (S1, S2, S3)]
    assert np.allclose(bloch, [-np.sqrt(0.99), 0, 0.1], atol=1e-14)


@pytest.mark.parametrize("eps", [0.0, 0.1, 0.5])
def test_erroneous_rotation_unitary(eps):
    v = erroneous_rotation(eps)
    assert np.max(np.abs(v.conj().T @ v - I2)) <= 1e-12


@pytest.mark.parametrize("eps", [-0.1, 1.0, 1.5])
def test_erroneous_rotation_range(eps):
    with pytest.raises(ConfigError):
        erroneous_rotation(eps)


@pytest.mark.parametrize("label", PROJECTOR_LABELS)
def test_ideal_pin_prepares_product_inputs(label):
    out = prepare_input(IdealPin(), RHO_SE, label)
    target = standard_inputs("projector_set")[label].matrix
    assert np.allclose(partial_trace_env(out.matrix), target, atol=1e-15)
    assert np.allclose(out.matrix, tensor(target, I2 / 2), atol=1e-15)


def test_ideal_pin_environment_constant():
    envs = [partial_trace_sys(m.matrix) for m in IdealPin().prepare_all(initial_state((0.3, 0, 0.2), 0.4)).values()]
    for e in envs[1:]:
        assert np.max(np.abs(e - envs[0])) <= 1e-12


def test_unknown_label():
    with pytest.raises(KeyError):
        IdealPin().prepare_input(RHO_SE, "(3,-)")


def test_control_error_only_one_input_faulty():
    proc = PinWithControlError(epsilon=0.1)
    out = proc.prepare_all(RHO_SE)
    v = 0.1 * S3 - np.sqrt(0.99) * S1
    assert np.allclose(out["(1,-)"].matrix, tensor(0.5 * (I2 + v), I2 / 2), atol=1e-14)
    for lab in ("(1,+)", "(2,+)", "(3,+)"):
        assert np.allclose(out[lab].matrix, IdealPin().prepare_input(RHO_SE, lab).matrix)


def test_control_error_zero_reduces_to_ideal():
    out = PinWithControlError(epsilon=0.0).prepare_input(RHO_SE, "(1,-)")
    assert np.allclose(out.matrix, IdealPin().prepare_input(RHO_SE, "(1,-)").matrix, atol=1e-15)


def test_mixed_pin_inputs():
    p = 0.7
    out = MixedPin(p=p).prepare_all(RHO_SE)
    for lab, s in zip(PROJECTOR_LABELS, standard_inputs("p_scaled", p).states):
        assert np.allclose(out[lab].matrix, tensor(s.matrix, I2 / 2), atol=1e-15)


def test_mixed_pin_probe_limits():
    proc = MixedPin(p=0.6)
    probe = bloch_to_state([0.2, 0.3, -0.1])
    out = proc.prepare_probe(RHO_SE, probe)
    assert np.allclose(out.matrix, tensor(probe.matrix, I2 / 2), atol=1e-14)
    with pytest.raises(NotPreparableError):
        proc.prepare_probe(RHO_SE, bloch_to_state([0.7, 0, 0]))


def test_correlated_family_input():
    p, c23 = 0.4, 0.5
    out = CorrelatedFamily(p=p, c23=c23).prepare_input(RHO_SE, "(3,+)")
    expected = 0.25 * (np.eye(4) + p * tensor(S3, I2) + c23 * tensor(S2, S3))
    assert np.allclose(out.matrix, expected, atol=1e-15)


def test_correlated_family_same_chi_for_all_inputs():
    proc = CorrelatedFamily(p=0.4, c23=0.5)
    for lab, s in zip(PROJECTOR_LABELS, standard_inputs("p_scaled", 0.4).states):
        diff = proc.prepare_input(RHO_SE, lab).matrix - tensor(s.matrix, I2 / 2)
        assert np.allclose(diff, 0.125 * tensor(S2, S3), atol=1e-15)


def test_correlated_family_unphysical():
    # (2,+) input: eigenvalues (1 +- p +- c23)/4
    with pytest.raises(NotPhysicalError):
        CorrelatedFamily(p=0.9, c23=0.5).prepare_input(RHO_SE, "(2,+)")


def brute_swap_decohere():
    # evolve P(3,+) (x) I/2 for 2wt = pi/2 by explicit matrix arithmetic
    wt = np.pi / 4
    u = np.eye(4, dtype=complex)
    for s in (S1, S2, S3):
        u = u @ (np.cos(wt) * np.eye(4) - 1j * np.sin(wt) * np.kron(s, s))
    rho = np.kron(0.5 * (I2 + S3), I2 / 2)
    return u @ rho @ u.conj().T


def test_multi_pin_mixed_input():
    out = MultiPin().prepare_input(RHO_SE, "I")
    expected = 0.25 * (np.eye(4) + tensor(I2, S3))
    assert np.allclose(brute_swap_decohere(), expected, atol=1e-15)
    assert np.max(np.abs(out.matrix - expected)) <= 1e-12
    assert np.allclose(out.system().matrix, I2 / 2, atol=1e-15)


def test_multi_pin_environment_inconsistent():
    out = MultiPin().prepare_all(initial_state((0.2, 0.0, 0.1), 0.5))
    env_mixed = partial_trace_sys(out["I"].matrix)
    for lab in ("(1,+)", "(2,+)", "(3,+)"):
        assert np.max(np.abs(env_mixed - partial_trace_sys(out[lab].matrix))) >= 0.49


def test_multi_pin_initial_swap_source():
    a = (0.1, 0.2, 0.3)
    out = MultiPin(swap_source="initial").prepare_input(initial_state(a, 0.0), "I")
    expected = 0.25 * (np.eye(4) + sum(x * tensor(I2, s) for x, s in zip(a, (S1, S2, S3))))
    assert np.allclose(out.matrix, expected, atol=1e-14)


def test_multi_pin_labels():
    assert MultiPin().labels == ("I", "(1,+)", "(2,+)", "(3,+)")


def test_no_pin_is_local_rotation():
    rho = initial_state((0.0, 0.0, 0.3), 0.5)
    for lab in PROJECTOR_LABELS:
        out = NoPin().prepare_input(rho, lab)
        assert np.allclose(np.linalg.eigvalsh(out.matrix), np.linalg.eigvalsh(rho.matrix), atol=1e-12)


def test_no_pin_pure_probe_equals_rotation():
    rho = initial_state((0.1, 0.0, 0.3), 0.2)
    proc = NoPin()
    for lab in PROJECTOR_LABELS:
        target = standard_inputs("projector_set")[lab]
        assert np.allclose(proc.prepare_probe(rho, target).matrix,
                           proc.prepare_input(rho, lab).matrix, atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_prepared_states_unit_trace_and_psd(seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=3)
    a *= rng.uniform(0, 0.6) / np.linalg.norm(a)
    rho = initial_state(a, rng.uniform(-0.4, 0.4))
    procs = [IdealPin(), MixedPin(p=0.8), MultiPin(), PinWithControlError(epsilon=0.2), NoPin()]
    for proc in procs:
        for out in proc.prepare_all(rho).values():
            assert abs(np.trace(out.matrix) - 1) <= 1e-12
            assert out.min_eigenvalue() >= -1e-10
