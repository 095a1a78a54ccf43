import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qgeomcap import states

from conftest import random_bloch, random_density


def test_pure_state_is_projector(rng):
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    rho = states.pure_state(v)
    assert np.allclose(rho @ rho, rho, atol=1e-12)
    assert abs(np.trace(rho) - 1.0) < 1e-12


def test_check_density_matrix_rejects_bad_inputs():
    with pytest.raises(ValueError):
        states.check_density_matrix(np.array([[1.0, 0.5], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        states.check_density_matrix(np.eye(2))  # trace 2
    with pytest.raises(ValueError):
        states.check_density_matrix(np.diag([1.5, -0.5]))  # negative eigenvalue


def test_bloch_round_trip(rng):
    for _ in range(50):
        r = random_bloch(rng)
        back = states.density_to_bloch(states.bloch_to_density(r))
        assert np.allclose(back, r, atol=1e-12)


def test_entropy_closed_form(rng):
    for _ in range(50):
        r = random_bloch(rng)
        rho = states.bloch_to_density(r)
        expected = states.binary_entropy((1.0 + np.linalg.norm(r)) / 2.0)
        assert abs(states.von_neumann_entropy(rho) - expected) < 1e-12


def test_relative_entropy_to_maximally_mixed(rng):
    # D(rho || I/2) = 1 - S(rho)
    for _ in range(100):
        rho = random_density(rng)
        d = states.relative_entropy(rho, np.eye(2) / 2.0)
        assert abs(d - (1.0 - states.von_neumann_entropy(rho))) < 1e-9


def test_relative_entropy_bloch_matches_matrix(rng):
    for _ in range(200):
        r1, r2 = random_bloch(rng), random_bloch(rng)
        d_bloch = states.relative_entropy_bloch(r1, r2)
        d_mat = states.relative_entropy(
            states.bloch_to_density(r1), states.bloch_to_density(r2)
        )
        assert abs(d_bloch - d_mat) < 1e-9


def test_relative_entropy_support_violation():
    pure0 = states.pure_state(np.array([1.0, 0.0]))
    pure1 = states.pure_state(np.array([0.0, 1.0]))
    assert states.relative_entropy(pure0, pure1) == np.inf
    assert states.relative_entropy(pure0, pure0) == pytest.approx(0.0, abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=6, max_size=6))
def test_relative_entropy_nonnegative(vals):
    r1 = np.array(vals[:3])
    r2 = np.array(vals[3:])
    for r in (r1, r2):
        n = np.linalg.norm(r)
        if n > 0.98:
            r *= 0.98 / n
    d = states.relative_entropy_bloch(r1, r2)
    assert d >= -1e-12
    if np.allclose(r1, r2):
        assert d < 1e-9


def test_partial_trace_of_product(rng):
    rho_a, rho_b = random_density(rng), random_density(rng)
    joint = states.tensor(rho_a, rho_b)
    assert np.allclose(states.partial_trace(joint, "A", (2, 2)), rho_a, atol=1e-12)
    assert np.allclose(states.partial_trace(joint, "B", (2, 2)), rho_b, atol=1e-12)


def test_fidelity_pure_states(rng):
    for _ in range(20):
        a = rng.normal(size=2) + 1j * rng.normal(size=2)
        b = rng.normal(size=2) + 1j * rng.normal(size=2)
        a /= np.linalg.norm(a)
        b /= np.linalg.norm(b)
        f = states.fidelity(states.pure_state(a), states.pure_state(b))
        assert abs(f - abs(np.vdot(a, b)) ** 2) < 1e-7


def test_holevo_quantity_orthogonal_pure_ensemble():
    ens = [(0.5, states.pure_state(np.array([1.0, 0.0]))),
           (0.5, states.pure_state(np.array([0.0, 1.0])))]
    assert abs(states.holevo_quantity(ens) - 1.0) < 1e-12


def test_binary_entropy_endpoints():
    assert states.binary_entropy(0.0) == 0.0
    assert states.binary_entropy(1.0) == 0.0
    assert abs(states.binary_entropy(0.5) - 1.0) < 1e-15
