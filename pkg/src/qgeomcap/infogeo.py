"""Bregman-divergence geometry: generators, smallest enclosing information
balls, a brute-force minimax oracle, and Laguerre-lifted Delaunay structures.

Two divergence families are provided. ``neg_von_neumann`` works on qubit
Bloch vectors, where the generator F(r) = Tr(rho log2 rho) has the closed
forms used by the compiled kernels and the Bregman divergence equals the
quantum relative entropy in bits. ``squared_euclidean`` works on plain real
vectors and recovers ||x - y||^2; it is the sanity geometry for the solvers.

Gradient-space interpolation grad_inv((1-t) grad(c) + t grad(s)) is the
geodesic used by both enclosing-ball algorithms. For qubits this path is
identical to applying matrix log/exp to the density matrices and
renormalizing the trace, so centers always remain valid states.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels

NUDGE = 1e-9
_LN2 = np.log(2.0)


class Generator:
    """Convex generator F with gradient, inverse gradient and divergence.

    name: "neg_von_neumann" (qubit Bloch vectors, divergence in bits) or
    "squared_euclidean" (real vectors).
    """

    def __init__(self, name):
        if name not in ("neg_von_neumann", "squared_euclidean"):
            raise ValueError(f"unknown generator {name!r}")
        self.name = name

    def F(self, x):
        x = np.asarray(x, dtype=float)
        if self.name == "squared_euclidean":
            return float(x @ x)
        r = min(float(np.linalg.norm(x)), 1.0)
        out = 0.0
        for lam in ((1.0 + r) / 2.0, (1.0 - r) / 2.0):
            if lam > 1e-15:
                out += lam * np.log2(lam)
        return out

    def grad(self, x):
        x = np.asarray(x, dtype=float)
        if self.name == "squared_euclidean":
            return 2.0 * x
        r = float(np.linalg.norm(x))
        if r < 1e-15:
            return np.zeros_like(x)
        if r >= 1.0:
            raise ValueError("gradient singular at a pure state (|r| = 1)")
        return (0.5 * np.log2((1.0 + r) / (1.0 - r)) / r) * x

    def grad_inv(self, y):
        y = np.asarray(y, dtype=float)
        if self.name == "squared_euclidean":
            return 0.5 * y
        m = float(np.linalg.norm(y))
        if m < 1e-15:
            return np.zeros_like(y)
        return (np.tanh(m * _LN2) / m) * y

    def div(self, x, y):
        """Bregman divergence D_F(x || y) = F(x) - F(y) - <x - y, grad F(y)>."""
        if self.name == "squared_euclidean":
            d = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
            return float(d @ d)
        return kernels.bloch_relative_entropy(
            np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        )

    def batch_div(self, points, center):
        """D_F(p_i || center) for all rows of points."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        center = np.asarray(center, dtype=float)
        if self.name == "squared_euclidean":
            d = points - center
            return (d * d).sum(axis=1)
        return kernels.batch_divergence(points, center)

    def interpolate(self, c, s, t):
        """Point at parameter t on the gradient-space geodesic from c to s."""
        gc = self.grad(np.asarray(c, dtype=float))
        gs = self.grad(np.asarray(s, dtype=float))
        return self.grad_inv((1.0 - t) * gc + t * gs)


def bregman_div(g, x, y):
    """D_F(x || y) for generator g."""
    return g.div(x, y)


def symmetric_div(g, x, y):
    """(D(x||y) + D(y||x)) / 2."""
    return 0.5 * (g.div(x, y) + g.div(y, x))


@dataclass
class InfoBall:
    """Left-sided information ball {x : D(x || center) <= radius}."""

    center: np.ndarray
    radius: float
    history: list = field(default_factory=list)

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("ball radius must be nonnegative")


@dataclass
class WeightedPointSet:
    """Point set with optional weights and per-point ball radii."""

    points: np.ndarray
    weights: np.ndarray = None
    radii: np.ndarray = None

    def __post_init__(self):
        self.points = np.atleast_2d(np.asarray(self.points, dtype=float))
        n = self.points.shape[0]
        if n == 0:
            raise ValueError("empty point set")
        if self.weights is None:
            self.weights = np.ones(n)
        else:
            self.weights = np.asarray(self.weights, dtype=float)
        if self.radii is None:
            self.radii = np.zeros(n)
        else:
            self.radii = np.asarray(self.radii, dtype=float)
        if len(self.weights) != n or len(self.radii) != n:
            raise ValueError("weights/radii length mismatch with points")
        if (self.weights < 0).any():
            raise ValueError("weights must be nonnegative")
        if (self.radii < 0).any():
            raise ValueError("ball radii must be nonnegative")

    def __len__(self):
        return self.points.shape[0]


def nudge_interior(points, amount=NUDGE):
    """Shrink Bloch vectors by mixing with the maximally mixed state.

    rho -> (1 - amount) rho + amount I/2 keeps eigenvalues strictly positive
    so gradients and lifts stay finite; the perturbation is disclosed and
    bounded by amount.
    """
    return (1.0 - amount) * np.atleast_2d(np.asarray(points, dtype=float))


def _farthest(g, points, radii, center):
    """(index, value) of max_i D(p_i||center) + r_i; ties -> lowest index."""
    vals = g.batch_div(points, center) + radii
    idx = int(np.argmax(vals))
    return idx, float(vals[idx])


def minimax_center_oracle(g, pset, grid_resolution=61, refinements=2):
    """Brute-force grid minimizer of max_i D(p_i || c) + r_i.

    Scans a cubic grid over the feasible region (the open Bloch ball for
    the quantum generator, the bounding box of the points otherwise), then
    refines twice around the incumbent. Testing oracle for the approximate
    solvers; accuracy ~ box-width / grid_resolution after refinement.
    """
    pts = pset.points
    rad = pset.radii
    if len(pset) == 1 and rad[0] == 0.0:
        return pts[0].copy(), 0.0
    if g.name == "neg_von_neumann":
        lo = np.full(3, -1.0)
        hi = np.full(3, 1.0)
    else:
        lo = pts.min(axis=0)
        hi = pts.max(axis=0)
        span = np.maximum(hi - lo, 1e-12)
        lo = lo - 0.05 * span
        hi = hi + 0.05 * span
    best_c, best_v = None, np.inf
    for level in range(refinements + 1):
        axes = [np.linspace(lo[k], hi[k], grid_resolution) for k in range(pts.shape[1])]
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, pts.shape[1])
        if g.name == "neg_von_neumann":
            inside = np.linalg.norm(mesh, axis=1) < 1.0 - 1e-9
            mesh = mesh[inside]
            vals = kernels.scan_centers(pts, rad, mesh)
        else:
            d = mesh[:, None, :] - pts[None, :, :]
            vals = ((d * d).sum(axis=2) + rad[None, :]).max(axis=1)
        j = int(np.argmin(vals))
        if vals[j] < best_v:
            best_v = float(vals[j])
            best_c = mesh[j].copy()
        step = (hi - lo) / (grid_resolution - 1)
        lo = best_c - step
        hi = best_c + step
        if g.name == "neg_von_neumann":
            lo = np.clip(lo, -1.0, 1.0)
            hi = np.clip(hi, -1.0, 1.0)
    return best_c, best_v


def seb_basic(g, pset, eps, seed=None):
    """Smallest enclosing information ball by iterated geodesic averaging.

    Starts from the first point (or a seeded random point) and runs
    ceil(1/eps^2) rounds: find the farthest point, move the center a step
    1/(i+1) toward it along the gradient-space geodesic. The returned radius
    is within a factor (1 + eps) of optimal. Per-point radii, when present,
    make this the enclosing ball of balls.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    pts = pset.points
    if g.name == "neg_von_neumann":
        pts = nudge_interior(pts)
    rad = pset.radii
    if seed is None:
        c = pts[0].copy()
    else:
        c = pts[np.random.default_rng(seed).integers(len(pset))].copy()
    n_iter = int(np.ceil(1.0 / (eps * eps)))
    history = []
    for i in range(1, n_iter + 1):
        idx, val = _farthest(g, pts, rad, c)
        history.append(val)
        c = g.interpolate(c, pts[idx], 1.0 / (i + 1.0))
    _, radius = _farthest(g, pts, rad, c)
    history.append(radius)
    return InfoBall(center=c, radius=radius, history=history)


def _touch_parameter(g, points, radii, c, s_idx, r):
    """Step t on the geodesic from c toward points[s_idx] at which the ball
    of radius r touches that point, i.e. D(s||c(t)) + r_s = r, by bisection."""
    s = points[s_idx]
    r_s = radii[s_idx]

    def overshoot(t):
        ct = g.interpolate(c, s, t)
        return g.div(s, ct) + r_s - r

    if overshoot(0.0) <= 0.0:
        return 0.0
    lo_t, hi_t = 0.0, 1.0
    if overshoot(1.0) > 0.0:
        return 1.0
    for _ in range(60):
        mid = 0.5 * (lo_t + hi_t)
        if overshoot(mid) > 0.0:
            lo_t = mid
        else:
            hi_t = mid
    return hi_t


def two_point_minimax(g, p, q, rp=0.0, rq=0.0):
    """min over c of max(D(p||c) + rp, D(q||c) + rq).

    Starts from the equalization point on the gradient-space geodesic and
    polishes with a derivative-free simplex search (the exact optimum need
    not lie on the geodesic). The value lower-bounds the minimax radius of
    any set containing both points.
    """
    from scipy.optimize import minimize

    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)

    def val(c):
        if g.name == "neg_von_neumann" and np.linalg.norm(c) >= 1.0 - 1e-9:
            return np.inf
        return max(g.div(p, c) + rp, g.div(q, c) + rq)

    def imbalance(t):
        c = g.interpolate(p, q, t)
        return (g.div(p, c) + rp) - (g.div(q, c) + rq)

    lo, hi = 0.0, 1.0
    if imbalance(0.0) > 0.0:
        t0 = 0.0
    elif imbalance(1.0) < 0.0:
        t0 = 1.0
    else:
        for _ in range(50):
            mid = 0.5 * (lo + hi)
            if imbalance(mid) <= 0.0:
                lo = mid
            else:
                hi = mid
        t0 = 0.5 * (lo + hi)
    c0 = g.interpolate(p, q, t0)
    res = minimize(val, c0, method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 2000})
    if res.fun <= val(c0):
        return res.x, float(res.fun)
    return c0, float(val(c0))


def seb_improved(g, pset, eps, seed=None, max_rounds=None):
    """Enclosing-ball solver with a certified optimal-radius bracket.

    The center follows the touch-and-shrink schedule: move the current ball
    along the geodesic until it touches the farthest point; if the new
    farthest sticks out by more than 3*delta/4 grow the radius by delta/4,
    and shrink delta by 3/4 either way, until delta <= eps. That schedule
    is a metric argument, so it runs on the length scale sqrt(D), and its
    lower bound is additionally capped by exact two-point minimax radii
    over the core-set points (each is a true lower bound on r*), while the
    reported upper bound never drops below the best actual enclosure.
    History entries (r, delta) therefore satisfy r <= r* <= r + delta.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    pts = pset.points
    if g.name == "neg_von_neumann":
        pts = nudge_interior(pts)
    rad = pset.radii
    if seed is None:
        # start from the 1-center-in-S point: divergences to a near-pure
        # point blow up logarithmically, which would wreck the lower bound
        start = int(np.argmin([_farthest(g, pts, rad, p)[1] for p in pts]))
    else:
        start = int(np.random.default_rng(seed).integers(len(pset)))
    c = pts[start].copy()
    far_idx, d0 = _farthest(g, pts, rad, c)

    core = []
    cert = 0.0

    def add_core(i):
        nonlocal cert
        if i in core:
            return
        for j in core:
            _, v = two_point_minimax(g, pts[i], pts[j], rad[i], rad[j])
            cert = max(cert, v)
        core.append(i)

    add_core(start)
    add_core(far_idx)

    best_c = c.copy()
    best_u = d0
    ell = 0.5 * np.sqrt(d0)
    gap = 0.5 * np.sqrt(d0)

    def bracket():
        # lower: schedule capped by the certified pair bound; upper: best
        # enclosure actually achieved, so r <= r* <= r + delta by construction
        r_lo = min(ell * ell, cert)
        return r_lo, best_u - r_lo

    history = [bracket()]
    if max_rounds is None:
        # gap shrinks by 3/4 per round; generous cap over ceil(1/eps)
        max_rounds = max(int(np.ceil(1.0 / eps)), 64)
    rounds = 0
    while (ell + gap) ** 2 - ell * ell > eps and rounds < max_rounds:
        idx, _ = _farthest(g, pts, rad, c)
        add_core(idx)
        t = _touch_parameter(g, pts, rad, c, idx, ell * ell)
        if t > 0.0:
            c = g.interpolate(c, pts[idx], t)
        _, val = _farthest(g, pts, rad, c)
        if val < best_u:
            best_u = val
            best_c = c.copy()
        slack = np.sqrt(max(val, 0.0)) - ell
        if slack <= 0.75 * gap:
            gap *= 0.75
        else:
            ell += 0.25 * gap
            gap *= 0.75
        history.append(bracket())
        rounds += 1
    _, final = _farthest(g, pts, rad, c)
    if final < best_u:
        best_u = final
        best_c = c.copy()
    return InfoBall(center=best_c, radius=best_u, history=history)


def seb_of_balls(g, pset, eps=0.01, method="basic"):
    """Smallest information ball enclosing balls B(p_i, r_i).

    The covering condition max_i D(b_i || c) reduces to
    max_i (D(p_i || c) + r_i), so this is the point solver with additive
    offsets; with all r_i = 0 it coincides with the plain enclosing ball.
    """
    solver = seb_basic if method == "basic" else seb_improved
    return solver(g, pset, eps)


def laguerre_lift(g, pset):
    """Euclidean spheres equivalent to the Bregman balls of the points.

    Each point lifts to a sphere centered at grad F(p_i) with squared
    radius <p'_i, p'_i> + 2 (F(p_i) - <p_i, p'_i>) where p'_i = grad F(p_i);
    Laguerre (power) distances to these spheres reproduce the divergences.
    Pure qubit states sit on the gradient singularity and are rejected.
    """
    pts = pset.points
    centers = []
    sq_radii = []
    for p in pts:
        if g.name == "neg_von_neumann" and np.linalg.norm(p) >= 1.0 - 1e-12:
            raise ValueError(
                "pure state on the divergence singularity cannot be lifted"
            )
        gp = g.grad(p)
        centers.append(gp)
        sq_radii.append(float(gp @ gp) + 2.0 * (g.F(p) - float(p @ gp)))
    return np.array(centers), np.array(sq_radii)


def _circumcenter(g, simplex_pts):
    """Bregman circumcenter of d+1 points in dimension d.

    Solves the linear system expressing equal divergence to all vertices in
    the lifted coordinates: D(p||c) = D(q||c) reduces to a condition linear
    in grad F(c), then c = grad_inv(solution). Returns None when degenerate.
    """
    p0 = simplex_pts[0]
    rows = []
    rhs = []
    for p in simplex_pts[1:]:
        rows.append(p - p0)
        rhs.append(g.F(p) - g.F(p0))
    rows = np.array(rows)
    rhs = np.array(rhs)
    if np.linalg.matrix_rank(rows, tol=1e-10) < rows.shape[0]:
        return None
    # grad F(c) restricted to the affine hull; the component orthogonal to
    # the hull is fixed by requiring c = grad_inv(y) to exist; for full
    # dimensional simplices (d+1 points in R^d) the system is square
    if rows.shape[0] != rows.shape[1]:
        y, *_ = np.linalg.lstsq(rows, rhs, rcond=None)
    else:
        y = np.linalg.solve(rows, rhs)
    c = g.grad_inv(y)
    return c


def bregman_delaunay(g, pset):
    """Delaunay simplices under the generator's divergence, brute force.

    Enumerates all (d+1)-subsets, computes the Bregman circumcenter, and
    keeps simplices whose circumball is empty of other points (left-sided
    divergence). Intended for small n (the empty-ball check is exact).
    Returns (simplices, degenerate_flag); degenerate_flag is True when some
    circumball has another point exactly on its boundary (co-circular
    input), in which case the triangulation is not unique.
    """
    from itertools import combinations

    pts = pset.points
    if g.name == "neg_von_neumann":
        pts = nudge_interior(pts)
    n, d = pts.shape
    if n > 50:
        raise ValueError("brute-force Delaunay is limited to n <= 50")
    simplices = []
    degenerate = False
    for combo in combinations(range(n), d + 1):
        sub = pts[list(combo)]
        c = _circumcenter(g, sub)
        if c is None:
            continue
        if g.name == "neg_von_neumann" and np.linalg.norm(c) >= 1.0 - 1e-9:
            continue
        rad = float(g.batch_div(sub, c).mean())
        others = [i for i in range(n) if i not in combo]
        empty = True
        for i in others:
            di = g.div(pts[i], c)
            if di < rad - 1e-9:
                empty = False
                break
            if abs(di - rad) <= 1e-9:
                degenerate = True
        if empty:
            simplices.append(tuple(combo))
    return simplices, degenerate
