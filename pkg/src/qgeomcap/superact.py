"""Superactivation analysis.

Two channels with zero individual quantum capacity can have positive joint
capacity. The reference construction mixes a channel of positive private
capacity (selected with probability p_C, flagged by |0><0|) with a 50%
erasure channel (flagged by |1><1|); its joint single-use capacity is half
the first channel's private information, and the superball radius follows
r_super = p_C^2 r_HH + 2 p_C (1 - p_C) r_H2 with r_HH = 0.

The activation window (0, 0.0041) and the inside-window radius 0.01 bits
are external data of the reference model (the underlying four-dimensional
channel has no published Kraus form); the sweep engine is generic over any
model supplying these numbers, and a user with an explicit channel can plug
it in as a custom Kraus spec.
"""

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from . import channels, states


@dataclass
class ReferenceModel:
    """Declared data of the reference superactivation pair."""

    P1_horodecki: float = 0.02
    activation_window: tuple = (0.0, 0.0041)
    r_H2_inside: float = 0.01

    def __post_init__(self):
        expected = 0.5 * self.P1_horodecki
        if abs(self.r_H2_inside - expected) > 1e-12:
            raise ValueError(
                f"r_H2_inside must equal P1/2 = {expected}, got {self.r_H2_inside}"
            )


@dataclass
class JointConstruction:
    """Convex combination of two flagged channel branches."""

    p_C: float
    ch1: channels.ChannelSpec = None
    ch2: channels.ChannelSpec = None

    def __post_init__(self):
        if not 0.0 <= self.p_C <= 1.0:
            raise ValueError(f"p_C must lie in [0, 1], got {self.p_C}")


@dataclass
class SweepResult:
    """Rows of (p_C, r_H2, r_super) plus the grid metadata."""

    rows: list
    grid_lo: float
    grid_hi: float
    step: float
    model: ReferenceModel = field(default_factory=ReferenceModel)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["p_C", "r_H2", "r_super"])
        for row in self.rows:
            w.writerow([f"{row[0]:.12g}", f"{row[1]:.12g}", f"{row[2]:.12g}"])
        return buf.getvalue()


def superactivation_value(P1):
    """Joint single-use quantum capacity P1/2 of (private-capacity-P1
    channel) tensored with a 50% erasure channel.

    For a degradable first channel this lower bound is the exact asymptotic
    value.
    """
    P1 = float(P1)
    if P1 < 0:
        raise ValueError("private capacity must be nonnegative")
    return 0.5 * P1


def r_h2(p_C, model):
    """Inside-window pairwise radius: model.r_H2_inside on the open
    activation window, zero elsewhere."""
    lo, hi = model.activation_window
    return model.r_H2_inside if lo < p_C < hi else 0.0


def joint_radius(construction, model=None):
    """(r_H2, r_super) of the joint construction at its p_C.

    r_super = 2 p_C (1 - p_C) r_H2; the like-branch term p_C^2 r_HH
    vanishes because the first channel alone has zero quantum capacity.
    """
    if model is None:
        model = ReferenceModel()
    p = construction.p_C if isinstance(construction, JointConstruction) else float(construction)
    rh = r_h2(p, model)
    return rh, 2.0 * p * (1.0 - p) * rh


def sweep(grid, model=None):
    """SweepResult over an iterable of p_C values (sorted ascending)."""
    if model is None:
        model = ReferenceModel()
    grid = np.sort(np.asarray(list(grid), dtype=float))
    if grid.size == 0:
        raise ValueError("empty sweep grid")
    if grid.min() < 0.0 or grid.max() > 1.0:
        raise ValueError("sweep grid must lie in [0, 1]")
    rows = []
    for p in grid:
        rh, rs = joint_radius(JointConstruction(p_C=float(p)), model)
        rows.append((float(p), rh, rs))
    step = float(grid[1] - grid[0]) if grid.size > 1 else 0.0
    return SweepResult(rows=rows, grid_lo=float(grid[0]), grid_hi=float(grid[-1]),
                       step=step, model=model)


def detected_window(result, tol=0.0):
    """p_C values of the sweep whose r_super exceeds tol."""
    return [p for p, _, rs in result.rows if rs > tol]


def decomposition_check(rho1, rho2, sigma1=None, sigma2=None):
    """(lhs, rhs) of the product decomposition of relative entropy.

    With four states, lhs = D(rho1 x rho2 || sigma1 x sigma2) and
    rhs = D(rho1||sigma1) + D(rho2||sigma2); these agree for any product
    inputs. Called with two states, decomposition_check(rho_12, sigma_12),
    the first is a joint state and the second its reference: lhs is the
    joint divergence and rhs the sum over the reduced (marginal) states,
    which exhibits the gap for entangled inputs.
    """
    if sigma1 is None and sigma2 is None:
        rho12 = np.asarray(rho1, dtype=complex)
        sigma12 = np.asarray(rho2, dtype=complex)
        d = int(round(np.sqrt(rho12.shape[0])))
        lhs = states.relative_entropy(rho12, sigma12)
        r1 = states.partial_trace(rho12, "A", (d, d))
        r2 = states.partial_trace(rho12, "B", (d, d))
        s1 = states.partial_trace(sigma12, "A", (d, d))
        s2 = states.partial_trace(sigma12, "B", (d, d))
        rhs = states.relative_entropy(r1, s1) + states.relative_entropy(r2, s2)
        return lhs, rhs
    lhs = states.relative_entropy(states.tensor(rho1, rho2),
                                  states.tensor(sigma1, sigma2))
    rhs = states.relative_entropy(rho1, sigma1) + states.relative_entropy(rho2, sigma2)
    return lhs, rhs


def depolarizing_erasure_radius(p):
    """Joint radius (1 - H(p/2))/2 of depolarizing(p) with 50% erasure."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return 0.5 * (1.0 - states.binary_entropy(p / 2.0))


def superball_center_and_boundary(candidates):
    """(center, boundary) picked by entropy extremes.

    center: the maximum-entropy candidate (the most mixed, hence the best
    averaging point); boundary: the minimum-entropy candidate (the most
    extreme state of the ball). Ties resolve to the lowest index.
    """
    candidates = list(candidates)
    if not candidates:
        raise ValueError("empty candidate list")
    ent = [states.von_neumann_entropy(c) for c in candidates]
    center = candidates[int(np.argmax(ent))]
    boundary = candidates[int(np.argmin(ent))]
    return center, boundary


def parse_model_file(text):
    """ReferenceModel from a flat key/value document with keys
    P1_horodecki, window_lo, window_hi."""
    vals = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, v = line.partition("=")
        vals[key.strip()] = float(v.strip())
    p1 = vals.get("P1_horodecki", 0.02)
    lo = vals.get("window_lo", 0.0)
    hi = vals.get("window_hi", 0.0041)
    return ReferenceModel(P1_horodecki=p1, activation_window=(lo, hi),
                          r_H2_inside=0.5 * p1)
