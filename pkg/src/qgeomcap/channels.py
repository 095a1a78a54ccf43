"""Quantum channel models: Kraus sets, affine Bloch maps, complementary
channels and parallel composition.

A channel is a ``KrausChannel`` (CPTP map given by its Kraus operators).
Qubit channels additionally admit a geometric description as an affine map
r -> A r + b on Bloch vectors (``BlochAffineMap``). Named models are built
from a ``ChannelSpec``, which also supports externally declared capacities
for channels whose Kraus form is not available.
"""

from dataclasses import dataclass, field

import ast

import numpy as np

from . import states

COMPLETENESS_TOL = 1e-10

_PAULI = {
    "x": states.PAULI_X,
    "y": states.PAULI_Y,
    "z": states.PAULI_Z,
}

KNOWN_KINDS = (
    "identity",
    "bit_flip",
    "phase_flip",
    "bit_phase_flip",
    "depolarizing",
    "amplitude_damping",
    "dephasing",
    "erasure",
    "declared_capacity",
    "custom_kraus",
)

UNITAL_KINDS = ("identity", "bit_flip", "phase_flip", "bit_phase_flip",
                "depolarizing", "dephasing")


@dataclass
class KrausChannel:
    """CPTP map rho -> sum_i K_i rho K_i^dag."""

    kraus: list
    in_dim: int
    out_dim: int

    def __post_init__(self):
        self.kraus = [np.asarray(k, dtype=complex) for k in self.kraus]
        for k in self.kraus:
            if k.shape != (self.out_dim, self.in_dim):
                raise ValueError(
                    f"Kraus operator shape {k.shape}, expected "
                    f"({self.out_dim}, {self.in_dim})"
                )
        comp = sum(k.conj().T @ k for k in self.kraus)
        if np.abs(comp - np.eye(self.in_dim)).max() > COMPLETENESS_TOL:
            raise ValueError("Kraus completeness sum K^dag K = I violated")


@dataclass
class BlochAffineMap:
    """Qubit channel as r -> A r + b on Bloch vectors."""

    A: np.ndarray
    b: np.ndarray

    def __call__(self, r):
        return self.A @ np.asarray(r, dtype=float) + self.b


@dataclass
class ChannelSpec:
    """Declarative channel description.

    kind names a model from the zoo; params carries its reals (usually a
    single probability p). custom_kraus supplies explicit operators;
    declared_capacity wraps externally known scalar capacities for channels
    whose map is not modeled.
    """

    kind: str
    params: dict = field(default_factory=dict)
    kraus: list = None
    in_dim: int = None
    out_dim: int = None
    private_capacity_bits: float = None
    activation_window: tuple = None

    def __post_init__(self):
        if self.kind not in KNOWN_KINDS:
            raise ValueError(f"unknown channel kind {self.kind!r}")


def _p(spec, default=None):
    p = spec.params.get("p", default)
    if p is None:
        raise ValueError(f"channel kind {spec.kind!r} requires parameter p")
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"parameter p={p} outside [0, 1]")
    return p


def _pauli_mix(p, axis):
    return [
        np.sqrt(1.0 - p) * np.eye(2, dtype=complex),
        np.sqrt(p) * _PAULI[axis],
    ]


def build_channel(spec):
    """KrausChannel for a ChannelSpec; raises ValueError on bad input."""
    kind = spec.kind
    if kind == "identity":
        d = spec.in_dim or 2
        return KrausChannel([np.eye(d, dtype=complex)], d, d)
    if kind == "bit_flip":
        return KrausChannel(_pauli_mix(_p(spec), "x"), 2, 2)
    if kind == "phase_flip":
        return KrausChannel(_pauli_mix(_p(spec), "z"), 2, 2)
    if kind == "bit_phase_flip":
        return KrausChannel(_pauli_mix(_p(spec), "y"), 2, 2)
    if kind == "depolarizing":
        p = _p(spec)
        ops = [np.sqrt(1.0 - 3.0 * p / 4.0) * np.eye(2, dtype=complex)]
        ops += [np.sqrt(p / 4.0) * _PAULI[ax] for ax in ("x", "y", "z")]
        return KrausChannel(ops, 2, 2)
    if kind == "amplitude_damping":
        p = _p(spec)
        a1 = np.array([[np.sqrt(p), 0.0], [0.0, 1.0]], dtype=complex)
        a2 = np.array([[0.0, 0.0], [np.sqrt(1.0 - p), 0.0]], dtype=complex)
        return KrausChannel([a1, a2], 2, 2)
    if kind == "dephasing":
        p = _p(spec)
        k0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - p)]], dtype=complex)
        k1 = np.array([[0.0, 0.0], [0.0, np.sqrt(p)]], dtype=complex)
        return KrausChannel([k0, k1], 2, 2)
    if kind == "erasure":
        p = _p(spec)
        embed = np.zeros((3, 2), dtype=complex)
        embed[0, 0] = 1.0
        embed[1, 1] = 1.0
        k0 = np.sqrt(1.0 - p) * embed
        k1 = np.zeros((3, 2), dtype=complex)
        k1[2, 0] = np.sqrt(p)
        k2 = np.zeros((3, 2), dtype=complex)
        k2[2, 1] = np.sqrt(p)
        return KrausChannel([k0, k1, k2], 2, 3)
    if kind == "custom_kraus":
        if not spec.kraus:
            raise ValueError("custom_kraus requires explicit Kraus operators")
        ops = [np.asarray(k, dtype=complex) for k in spec.kraus]
        out_dim, in_dim = ops[0].shape
        return KrausChannel(ops, in_dim, out_dim)
    if kind == "declared_capacity":
        raise ValueError(
            "declared_capacity carries scalar capacities only; "
            "it has no Kraus realization to build"
        )
    raise ValueError(f"unknown channel kind {kind!r}")


def apply(ch, rho):
    """N(rho) = sum_i K_i rho K_i^dag."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (ch.in_dim, ch.in_dim):
        raise ValueError(
            f"state dim {rho.shape[0]} does not match channel input {ch.in_dim}"
        )
    out = np.zeros((ch.out_dim, ch.out_dim), dtype=complex)
    for k in ch.kraus:
        out += k @ rho @ k.conj().T
    return out


def complementary_channel(ch):
    """Channel from input to environment of the isometric extension.

    With Kraus operators K_i the environment state has matrix elements
    E(rho)_ij = Tr(K_i rho K_j^dag); the returned channel has one output
    dimension per Kraus operator.
    """
    k = len(ch.kraus)
    comp = []
    for m in range(ch.out_dim):
        op = np.zeros((k, ch.in_dim), dtype=complex)
        for i, ki in enumerate(ch.kraus):
            op[i, :] = ki[m, :]
        comp.append(op)
    return KrausChannel(comp, ch.in_dim, k)


def isometric_extension(ch):
    """Isometry U = sum_i K_i (x) |i>_E, shape (out_dim * k, in_dim).

    Reference construction used for cross-checking entropies: the joint
    output U rho U^dag reduces to N(rho) on the system and to the
    complementary output on the environment.
    """
    k = len(ch.kraus)
    u = np.zeros((ch.out_dim * k, ch.in_dim), dtype=complex)
    for i, ki in enumerate(ch.kraus):
        env = np.zeros(k, dtype=complex)
        env[i] = 1.0
        u += np.kron(ki, env.reshape(k, 1))
    return u


def kraus_to_affine(ch):
    """BlochAffineMap of a qubit channel (2 -> 2 only)."""
    if ch.in_dim != 2 or ch.out_dim != 2:
        raise ValueError("affine Bloch form requires a qubit-to-qubit channel")
    basis = [np.eye(3)[:, i] for i in range(3)]
    b = states.density_to_bloch(apply(ch, states.bloch_to_density([0, 0, 0])))
    cols = [
        states.density_to_bloch(apply(ch, states.bloch_to_density(e))) - b
        for e in basis
    ]
    return BlochAffineMap(np.column_stack(cols), b)


def cp_check_eta(eta):
    """Complete positivity of a diagonal unital qubit map diag(eta).

    The map r -> diag(eta) r is CP iff |eta_x +- eta_y| <= |1 +- eta_z|.
    """
    ex, ey, ez = (float(v) for v in eta)
    return abs(ex + ey) <= abs(1.0 + ez) + 1e-12 and abs(ex - ey) <= abs(1.0 - ez) + 1e-12


def tensor_channels(ch1, ch2):
    """Parallel composition N1 (x) N2 with pairwise Kronecker Kraus."""
    ops = [np.kron(k1, k2) for k1 in ch1.kraus for k2 in ch2.kraus]
    return KrausChannel(ops, ch1.in_dim * ch2.in_dim, ch1.out_dim * ch2.out_dim)


def _complex_matrix(nested):
    """Matrix from nested [re, im] pairs."""
    arr = np.asarray(nested, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ValueError("complex matrices are nested [re, im] pairs")
    return arr[:, :, 0] + 1j * arr[:, :, 1]


def parse_channel_spec(text):
    """ChannelSpec from a flat key=value document.

    One assignment per line; values are Python literals, e.g.::

        kind = "depolarizing"
        p = 0.25

    custom_kraus supplies kraus as nested [re, im] arrays;
    declared_capacity supplies private_capacity_bits and
    activation_window = [lo, hi].
    """
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value, got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        try:
            fields[key] = ast.literal_eval(val.strip())
        except (ValueError, SyntaxError) as exc:
            raise ValueError(f"line {lineno}: cannot parse value for {key}: {exc}")
    if "kind" not in fields:
        raise ValueError("channel spec missing required key 'kind'")
    kind = fields.pop("kind")
    kraus = fields.pop("kraus", None)
    if kraus is not None:
        kraus = [_complex_matrix(k) for k in kraus]
    window = fields.pop("activation_window", None)
    if window is not None:
        window = (float(window[0]), float(window[1]))
    spec = ChannelSpec(
        kind=kind,
        kraus=kraus,
        in_dim=fields.pop("in_dim", None),
        out_dim=fields.pop("out_dim", None),
        private_capacity_bits=fields.pop("private_capacity_bits", None),
        activation_window=window,
        params=fields,
    )
    return spec


def matrix_to_pairs(m):
    """Inverse of the [re, im] encoding, for report serialization."""
    m = np.asarray(m, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]
