import numpy as np
import pytest

from qgeomcap import channels, states

from conftest import random_bloch, random_density

QUBIT_KINDS = [
    ("identity", {}),
    ("bit_flip", {"p": 0.3}),
    ("phase_flip", {"p": 0.25}),
    ("bit_phase_flip", {"p": 0.4}),
    ("depolarizing", {"p": 0.5}),
    ("amplitude_damping", {"p": 0.35}),
    ("dephasing", {"p": 0.6}),
]


def test_kraus_completeness_enforced():
    with pytest.raises(ValueError):
        channels.KrausChannel([np.eye(2) * 0.5], 2, 2)


def test_kraus_shape_enforced():
    with pytest.raises(ValueError):
        channels.KrausChannel([np.eye(3)], 2, 2)


@pytest.mark.parametrize("kind,params", QUBIT_KINDS)
def test_apply_preserves_density(kind, params, rng):
    ch = channels.build_channel(channels.ChannelSpec(kind, params))
    for _ in range(10):
        out = channels.apply(ch, random_density(rng))
        states.check_density_matrix(out)


@pytest.mark.parametrize("kind,params", QUBIT_KINDS)
def test_affine_map_matches_kraus(kind, params, rng):
    ch = channels.build_channel(channels.ChannelSpec(kind, params))
    aff = channels.kraus_to_affine(ch)
    for _ in range(20):
        r = random_bloch(rng)
        via_kraus = states.density_to_bloch(
            channels.apply(ch, states.bloch_to_density(r))
        )
        assert np.allclose(aff(r), via_kraus, atol=1e-10)


def test_unital_kinds_have_zero_shift():
    for kind in ("bit_flip", "phase_flip", "bit_phase_flip", "depolarizing",
                 "dephasing"):
        ch = channels.build_channel(channels.ChannelSpec(kind, {"p": 0.3}))
        aff = channels.kraus_to_affine(ch)
        assert np.linalg.norm(aff.b) < 1e-12


def test_complementary_matches_isometry_oracle(rng):
    # the environment output of the complementary channel must equal the
    # environment reduction of U rho U^dag for the explicit isometry U
    for kind, params in QUBIT_KINDS:
        ch = channels.build_channel(channels.ChannelSpec(kind, params))
        comp = channels.complementary_channel(ch)
        u = channels.isometric_extension(ch)
        assert np.allclose(u.conj().T @ u, np.eye(ch.in_dim), atol=1e-12)
        k = len(ch.kraus)
        for _ in range(5):
            rho = random_density(rng)
            joint = u @ rho @ u.conj().T
            env = states.partial_trace(joint, "B", (ch.out_dim, k))
            sys = states.partial_trace(joint, "A", (ch.out_dim, k))
            assert np.abs(env - channels.apply(comp, rho)).max() < 1e-9
            assert np.abs(sys - channels.apply(ch, rho)).max() < 1e-9


def test_erasure_channel_flags():
    ch = channels.build_channel(channels.ChannelSpec("erasure", {"p": 0.5}))
    rho = states.pure_state(np.array([1.0, 0.0]))
    out = channels.apply(ch, rho)
    assert out.shape == (3, 3)
    assert abs(out[2, 2] - 0.5) < 1e-12
    assert abs(out[0, 0] - 0.5) < 1e-12


def test_cp_check_eta():
    assert channels.cp_check_eta((0.5, 0.5, 0.5))
    assert channels.cp_check_eta((1.0, 1.0, 1.0))
    assert not channels.cp_check_eta((1.0, 1.0, -1.0))
    assert not channels.cp_check_eta((0.9, 0.9, 0.0))


def test_tensor_channels(rng):
    ch1 = channels.build_channel(channels.ChannelSpec("bit_flip", {"p": 0.3}))
    ch2 = channels.build_channel(channels.ChannelSpec("dephasing", {"p": 0.4}))
    joint = channels.tensor_channels(ch1, ch2)
    rho1, rho2 = random_density(rng), random_density(rng)
    lhs = channels.apply(joint, states.tensor(rho1, rho2))
    rhs = states.tensor(channels.apply(ch1, rho1), channels.apply(ch2, rho2))
    assert np.abs(lhs - rhs).max() < 1e-12


def test_parse_channel_spec_basic():
    spec = channels.parse_channel_spec('kind = "depolarizing"\np = 0.25\n')
    assert spec.kind == "depolarizing"
    assert spec.params["p"] == 0.25
    ch = channels.build_channel(spec)
    assert ch.in_dim == 2


def test_parse_channel_spec_declared():
    text = (
        'kind = "declared_capacity"\n'
        "private_capacity_bits = 0.02\n"
        "activation_window = [0.0, 0.0041]\n"
    )
    spec = channels.parse_channel_spec(text)
    assert spec.private_capacity_bits == 0.02
    assert spec.activation_window == (0.0, 0.0041)
    with pytest.raises(ValueError):
        channels.build_channel(spec)


def test_parse_channel_spec_errors():
    with pytest.raises(ValueError):
        channels.parse_channel_spec("p = 0.5\n")  # missing kind
    with pytest.raises(ValueError):
        channels.parse_channel_spec("kind depolarizing\n")
    with pytest.raises(ValueError):
        channels.parse_channel_spec('kind = "no_such_channel"\n')


def test_custom_kraus_round_trip(rng):
    ch = channels.build_channel(channels.ChannelSpec("amplitude_damping", {"p": 0.3}))
    text = 'kind = "custom_kraus"\nkraus = ' + repr(
        [channels.matrix_to_pairs(k) for k in ch.kraus]
    )
    spec = channels.parse_channel_spec(text)
    ch2 = channels.build_channel(spec)
    rho = random_density(rng)
    assert np.abs(channels.apply(ch, rho) - channels.apply(ch2, rho)).max() < 1e-12


def test_bad_parameter_range():
    with pytest.raises(ValueError):
        channels.build_channel(channels.ChannelSpec("bit_flip", {"p": 1.5}))
