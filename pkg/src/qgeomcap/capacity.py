"""Channel capacity estimation.

HSW (classical) capacity of qubit channels via the minimax iteration on the
channel ellipsoid; private information and coherent information through the
complementary channel; and the single-use quantum capacity as a difference
of two information-ball radii evaluated at the same ensemble.
"""

from dataclasses import dataclass, field

import numpy as np

from . import channels, infogeo, kernels, states

CONVERGENCE_TOL = 1e-7
CONVERGENCE_WINDOW = 10
DEFAULT_MAX_ITER = 10_000
DEFAULT_CANDIDATES = 200


@dataclass
class CapacityResult:
    """Capacity estimate with the geometric witnesses that produced it."""

    value: float
    optimal_ensemble: list = field(default_factory=list)
    center: np.ndarray = None
    radius: float = 0.0
    iterations: int = 0
    converged: bool = True
    ball_pair: "BallPair" = None


@dataclass
class BallPair:
    """Radii of the output ball, environment ball, and their difference."""

    r_AB: float
    r_AE: float
    r_coh: float


def fibonacci_sphere(n):
    """n near-uniform unit directions on the sphere (golden-angle spiral)."""
    i = np.arange(n, dtype=float)
    z = 1.0 - (2.0 * i + 1.0) / n
    theta = np.pi * (1.0 + np.sqrt(5.0)) * i
    s = np.sqrt(np.maximum(1.0 - z * z, 0.0))
    return np.column_stack([s * np.cos(theta), s * np.sin(theta), z])


def channel_holevo(ch, ensemble):
    """Holevo quantity of the output ensemble {p_i, N(rho_i)}."""
    out = [(p, channels.apply(ch, rho)) for p, rho in ensemble]
    return states.holevo_quantity(out)


def _sphere_dir(angles):
    th, ph = angles
    return np.array([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])


def _polish_direction(aff, sigma, u0):
    """Locally maximize D(N(u)||sigma) over unit input directions."""
    from scipy.optimize import minimize

    th0 = np.arccos(np.clip(u0[2], -1.0, 1.0))
    ph0 = np.arctan2(u0[1], u0[0])

    def neg(angles):
        out = infogeo.nudge_interior(aff(_sphere_dir(angles)))[0]
        return -kernels.bloch_relative_entropy(out, sigma)

    res = minimize(neg, [th0, ph0], method="Nelder-Mead",
                   options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 500})
    return _sphere_dir(res.x), -float(res.fun)


def _polish_center(outs, c0):
    """Locally minimize max_i D(out_i || c) over centers from c0."""
    from scipy.optimize import minimize

    def worst(c):
        if np.linalg.norm(c) >= 1.0 - 1e-9:
            return np.inf
        return float(kernels.batch_divergence(outs, c).max())

    res = minimize(worst, c0, method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 2000})
    if res.fun <= worst(c0):
        return np.asarray(res.x, dtype=float), float(res.fun)
    return np.asarray(c0, dtype=float), worst(c0)


def _mixture_weights(outs, sigma):
    """Nonnegative weights summing to 1 with weights @ outs ~ sigma.

    Solved as nonnegative least squares with the normalization appended as
    a heavily weighted row; returns (weights, residual of the mixture).
    """
    from scipy.optimize import nnls

    kappa = 1e3
    a = np.vstack([outs.T, kappa * np.ones(outs.shape[0])])
    b = np.concatenate([sigma, [kappa]])
    w, _ = nnls(a, b)
    s = w.sum()
    if s > 0:
        w = w / s
    resid = float(np.linalg.norm(w @ outs - sigma))
    return w, resid


def hsw_capacity(ch, eps=None, max_iter=DEFAULT_MAX_ITER,
                 n_candidates=DEFAULT_CANDIDATES, polish_rounds=5):
    """HSW capacity of a qubit channel as a minimax information radius.

    Alternates farthest-output selection over the channel ellipsoid with the
    center update r_sigma <- (1 - eps_l) r_sigma + eps_l r_rho. eps=None
    uses the harmonic schedule eps_l = 1/(l+1), which makes the center an
    exact probability mixture of the selected outputs; a fixed eps in (0,1)
    is also accepted. Candidate inputs are pure states on a golden-angle
    sphere grid, refined by local search after each convergence phase.
    """
    if ch.in_dim != 2 or ch.out_dim != 2:
        raise ValueError("the minimax iteration is implemented for qubit channels")
    if eps is not None and not 0.0 < eps < 1.0:
        raise ValueError("fixed step size must lie in (0, 1)")
    aff = channels.kraus_to_affine(ch)
    dirs = list(fibonacci_sphere(n_candidates))
    outs = infogeo.nudge_interior(np.array([aff(u) for u in dirs]))
    weights = np.zeros(len(dirs))
    weights[0] = 1.0
    sigma = outs[0].copy()

    history = []
    total_iters = 0
    converged = False
    for _ in range(polish_rounds + 1):
        window = []
        while total_iters < max_iter:
            vals = kernels.batch_divergence(outs, sigma)
            idx = int(np.argmax(vals))
            radius = float(vals[idx])
            total_iters += 1
            step = eps if eps is not None else 1.0 / (total_iters + 1.0)
            weights *= 1.0 - step
            weights[idx] += step
            sigma = (1.0 - step) * sigma + step * outs[idx]
            history.append(radius)
            window.append(radius)
            if len(window) > CONVERGENCE_WINDOW:
                window.pop(0)
                if max(window) - min(window) < CONVERGENCE_TOL:
                    converged = True
                    break
        # refine the center directly (the harmonic average forgets its
        # startup transient only as 1/l, too slowly near pure outputs),
        # then check whether a better extreme direction exists off-grid
        sigma_new, rad_new = _polish_center(outs, sigma)
        moved = float(np.linalg.norm(sigma_new - sigma)) > 1e-10
        sigma = sigma_new
        # multi-start over the best grid candidates: a single start can sit
        # on a local maximum (e.g. one pole of a degenerate ellipsoid)
        grid_vals = kernels.batch_divergence(outs[:n_candidates], sigma)
        starts = np.argsort(grid_vals)[-4:]
        u_new, v_new = None, -np.inf
        for s in starts:
            u_s, v_s = _polish_direction(aff, sigma, dirs[int(s)])
            if v_s > v_new:
                u_new, v_new = u_s, v_s
        cur = float(kernels.batch_divergence(outs, sigma).max())
        if v_new > cur + 1e-10:
            dirs.append(u_new)
            outs = np.vstack([outs, infogeo.nudge_interior(aff(u_new))])
            weights = np.append(weights, 0.0)
            converged = False
        elif not moved:
            converged = True
            break
        else:
            converged = True

    sigma, _ = _polish_center(outs, sigma)
    # express the center as an exact mixture of candidate outputs so the
    # reported ensemble reproduces it; of the least-squares recovery and the
    # raw iteration weights, keep whichever mixture encloses more tightly
    # (the polished center can drift off a degenerate output hull)
    w_fit, _ = _mixture_weights(outs, sigma)
    w_iter = weights / weights.sum()
    candidates_w = [w_fit, w_iter]
    radii = [float(kernels.batch_divergence(outs, w @ outs).max())
             for w in candidates_w]
    pick = int(np.argmin(radii))
    weights = candidates_w[pick]
    sigma = weights @ outs
    radius = radii[pick]
    ensemble = [
        (float(w), states.pure_state(_bloch_ket(u)))
        for w, u in zip(weights, dirs)
        if w > 1e-12
    ]
    return CapacityResult(
        value=radius,
        optimal_ensemble=ensemble,
        center=states.bloch_to_density(sigma),
        radius=radius,
        iterations=total_iters,
        converged=converged,
    )


def _bloch_ket(u):
    """State vector of the pure qubit with Bloch direction u."""
    th = np.arccos(np.clip(u[2], -1.0, 1.0))
    ph = np.arctan2(u[1], u[0])
    return np.array([np.cos(th / 2.0), np.exp(1j * ph) * np.sin(th / 2.0)])


def unital_hsw_closed_form(ch):
    """1 - H((1 + r_max)/2) for a unital qubit channel.

    r_max is the largest singular value of the affine matrix; valid only
    when the shift b vanishes (the output ellipsoid is centered).
    """
    aff = channels.kraus_to_affine(ch)
    if np.linalg.norm(aff.b) > 1e-9:
        raise ValueError("closed form requires a unital channel (b = 0)")
    r_max = float(np.linalg.svd(aff.A, compute_uv=False)[0])
    return 1.0 - states.binary_entropy((1.0 + min(r_max, 1.0)) / 2.0)


def private_info(ch, ensemble=None):
    """Single-ensemble private information X_AB - X_AE.

    X_AB is the Holevo quantity of the channel outputs and X_AE that of the
    complementary (environment) outputs; the raw difference is returned and
    may be negative for poorly chosen ensembles. A ChannelSpec carrying a
    declared private capacity short-circuits to the declared value.
    """
    if isinstance(ch, channels.ChannelSpec):
        if ch.private_capacity_bits is not None:
            return float(ch.private_capacity_bits)
        ch = channels.build_channel(ch)
    if ensemble is None:
        raise ValueError("an ensemble is required for channels without declared capacity")
    x_ab = channel_holevo(ch, ensemble)
    x_ae = channel_holevo(channels.complementary_channel(ch), ensemble)
    return x_ab - x_ae


def coherent_info(ch, rho):
    """I_coh(rho, N) = S(N(rho)) - S(E(rho)) with E the complementary channel."""
    s_b = states.von_neumann_entropy(channels.apply(ch, rho))
    s_e = states.von_neumann_entropy(
        channels.apply(channels.complementary_channel(ch), rho)
    )
    return s_b - s_e


def _pure_decomposition(rho):
    """Eigen-ensemble of rho: [(lambda_i, |v_i><v_i|)] over nonzero weights."""
    evals, evecs = np.linalg.eigh(np.asarray(rho, dtype=complex))
    ens = []
    for lam, v in zip(evals.real, evecs.T):
        if lam > 1e-12:
            ens.append((float(lam), np.outer(v, v.conj())))
    # renormalize away eigenvalue clipping noise
    tot = sum(p for p, _ in ens)
    return [(p / tot, s) for p, s in ens]


def quantum_capacity_single_use(ch, candidates):
    """Best coherent information over candidate inputs, with ball radii.

    For the maximizing candidate, reports r_AB = X_AB and r_AE = X_AE of its
    pure eigen-ensemble (both Holevo terms at the same ensemble) so that
    r_coh = r_AB - r_AE equals the coherent information. The capacity
    estimate is max(0, best coherent information), a lower bound on Q^(1).
    """
    candidates = list(candidates)
    if not candidates:
        raise ValueError("empty candidate set")
    comp = channels.complementary_channel(ch)
    best_val = -np.inf
    best_rho = None
    for rho in candidates:
        val = coherent_info(ch, rho)
        if val > best_val:
            best_val = val
            best_rho = rho
    ens = _pure_decomposition(best_rho)
    r_ab = channel_holevo(ch, ens)
    r_ae = channel_holevo(comp, ens)
    pair = BallPair(r_AB=r_ab, r_AE=r_ae, r_coh=r_ab - r_ae)
    return CapacityResult(
        value=max(best_val, 0.0),
        optimal_ensemble=ens,
        center=channels.apply(ch, best_rho),
        radius=max(best_val, 0.0),
        iterations=len(candidates),
        converged=True,
        ball_pair=pair,
    )


def qubit_candidate_states(n=DEFAULT_CANDIDATES, include_axis_family=True):
    """Default qubit candidate inputs: sphere-grid pure states, mixed
    z-axis states, and the maximally mixed state."""
    cands = [states.bloch_to_density(u * (1.0 - 1e-12)) for u in fibonacci_sphere(n)]
    if include_axis_family:
        for z in np.linspace(-0.99, 0.99, 67):
            cands.append(states.bloch_to_density([0.0, 0.0, z]))
    cands.append(np.eye(2, dtype=complex) / 2.0)
    return cands
