import numpy as np
import pytest

from qgeomcap import capacity, channels, states


def _chan(kind, p=None):
    params = {} if p is None else {"p": p}
    return channels.build_channel(channels.ChannelSpec(kind, params))


def test_fibonacci_sphere_unit_norm():
    dirs = capacity.fibonacci_sphere(128)
    assert np.allclose(np.linalg.norm(dirs, axis=1), 1.0, atol=1e-12)
    assert abs(dirs.mean(axis=0)).max() < 0.05  # roughly balanced


@pytest.mark.parametrize("p", [0.1, 0.3, 0.5, 0.7, 0.9])
def test_hsw_depolarizing_closed_form(p):
    ch = _chan("depolarizing", p)
    res = capacity.hsw_capacity(ch)
    exact = 1.0 - states.binary_entropy(p / 2.0)
    assert abs(res.value - exact) <= 1e-3
    assert res.converged


@pytest.mark.parametrize("kind", ["bit_flip", "phase_flip", "bit_phase_flip",
                                  "dephasing"])
@pytest.mark.parametrize("p", [0.2, 0.5])
def test_hsw_unital_closed_form(kind, p):
    ch = _chan(kind, p)
    res = capacity.hsw_capacity(ch)
    assert abs(res.value - capacity.unital_hsw_closed_form(ch)) <= 1e-3


def test_hsw_identity_channel():
    res = capacity.hsw_capacity(_chan("identity"))
    assert abs(res.value - 1.0) <= 1e-3


def test_hsw_ensemble_reproduces_center():
    res = capacity.hsw_capacity(_chan("amplitude_damping", 0.3))
    ch = _chan("amplitude_damping", 0.3)
    avg = states.ensemble_average(
        [(w, channels.apply(ch, s)) for w, s in res.optimal_ensemble]
    )
    assert np.abs(avg - res.center).max() < 1e-6
    weights = [w for w, _ in res.optimal_ensemble]
    assert abs(sum(weights) - 1.0) < 1e-9


def test_hsw_equals_holevo_of_reported_ensemble():
    ch = _chan("depolarizing", 0.3)
    res = capacity.hsw_capacity(ch)
    chi = capacity.channel_holevo(ch, res.optimal_ensemble)
    assert abs(chi - res.value) < 1e-4


def test_hsw_rejects_non_qubit():
    with pytest.raises(ValueError):
        capacity.hsw_capacity(_chan("erasure", 0.5))


def test_unital_closed_form_rejects_nonunital():
    with pytest.raises(ValueError):
        capacity.unital_hsw_closed_form(_chan("amplitude_damping", 0.3))


def test_coherent_info_identity():
    ch = _chan("identity")
    assert abs(capacity.coherent_info(ch, np.eye(2) / 2.0) - 1.0) < 1e-9


def test_erasure_half_quantum_capacity_zero():
    ch = _chan("erasure", 0.5)
    cands = capacity.qubit_candidate_states(200, include_axis_family=False)
    res = capacity.quantum_capacity_single_use(ch, cands)
    assert abs(res.value) <= 1e-6
    assert abs(res.ball_pair.r_coh - (res.ball_pair.r_AB - res.ball_pair.r_AE)) < 1e-12


def test_erasure_quantum_capacity_monotone():
    cands = capacity.qubit_candidate_states(100, include_axis_family=False)
    vals = []
    for p in (0.1, 0.3, 0.5):
        res = capacity.quantum_capacity_single_use(_chan("erasure", p), cands)
        vals.append(res.value)
    # Q(erasure p) = max(0, 1 - 2p)
    for p, v in zip((0.1, 0.3, 0.5), vals):
        assert abs(v - max(0.0, 1.0 - 2.0 * p)) < 1e-6


def test_amplitude_damping_coherent_positive():
    cands = capacity.qubit_candidate_states()
    res = capacity.quantum_capacity_single_use(_chan("amplitude_damping", 0.9), cands)
    assert res.value > 0.3  # low damping keeps most of a qubit


def test_private_info_declared_spec():
    spec = channels.ChannelSpec("declared_capacity",
                                private_capacity_bits=0.02,
                                activation_window=(0.0, 0.0041))
    assert capacity.private_info(spec) == 0.02


def test_private_info_requires_ensemble():
    with pytest.raises(ValueError):
        capacity.private_info(_chan("bit_flip", 0.2))


def test_private_info_degradable_matches_coherent():
    # for amplitude damping (degradable at p > 1/2 in this convention) the
    # private information at the best pure-input eigen-ensemble equals the
    # coherent information
    ch = _chan("amplitude_damping", 0.8)
    cands = capacity.qubit_candidate_states()
    res = capacity.quantum_capacity_single_use(ch, cands)
    pi = capacity.private_info(ch, res.optimal_ensemble)
    assert abs(pi - res.ball_pair.r_coh) < 1e-9
