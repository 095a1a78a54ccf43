"""Pure-numpy implementations of the hot Bloch-space divergence kernels.

Used as the fallback backend when the compiled extension is unavailable.
All divergences are in bits (base-2 logarithms). A qubit state with Bloch
vector r has eigenvalues (1 +- |r|)/2, so every quantity below is a closed
form in the Bloch coordinates; no matrix diagonalization is needed.
"""

import numpy as np

_EPS_PURE = 1e-12
_EPS_CENTER = 1e-12
_SINGULAR_CENTER = 1.0 - 1e-9


def _neg_entropy(r):
    """Tr(rho log2 rho) for Bloch radius r (elementwise, clamped at purity)."""
    r = np.clip(np.asarray(r, dtype=float), 0.0, 1.0)
    lam_p = (1.0 + r) / 2.0
    lam_m = (1.0 - r) / 2.0
    out = np.zeros_like(r)
    for lam in (lam_p, lam_m):
        mask = lam > _EPS_PURE
        out = out + np.where(mask, lam * np.log2(np.where(mask, lam, 1.0)), 0.0)
    return out


def _center_coeffs(rc):
    """(a, b/rc) terms of log2(sigma) for a center of Bloch radius rc.

    a is the isotropic coefficient 0.5*log2((1-rc^2)/4); the second term is
    0.5*log2((1+rc)/(1-rc))/rc, continuous at rc = 0 with limit 1/ln(2).
    """
    rc = float(rc)
    a = 0.5 * np.log2((1.0 - rc * rc) / 4.0)
    if rc < _EPS_CENTER:
        b_over_r = 1.0 / np.log(2.0)
    else:
        b_over_r = 0.5 * np.log2((1.0 + rc) / (1.0 - rc)) / rc
    return a, b_over_r


def bloch_relative_entropy(r_rho, r_sigma):
    """D(rho || sigma) in bits from Bloch vectors.

    Returns +inf for a singular (pure) center unless both states coincide.
    """
    r_rho = np.asarray(r_rho, dtype=float)
    r_sigma = np.asarray(r_sigma, dtype=float)
    rr = float(np.linalg.norm(r_rho))
    rc = float(np.linalg.norm(r_sigma))
    if rc >= _SINGULAR_CENTER:
        if np.linalg.norm(r_rho - r_sigma) <= 1e-9:
            return 0.0
        return np.inf
    a, b_over_r = _center_coeffs(rc)
    return float(_neg_entropy(rr) - a - b_over_r * float(r_rho @ r_sigma))


def batch_divergence(points, center):
    """D(p_i || center) for an (n, 3) array of Bloch points."""
    points = np.asarray(points, dtype=float)
    center = np.asarray(center, dtype=float)
    rc = float(np.linalg.norm(center))
    radii = np.linalg.norm(points, axis=1)
    if rc >= _SINGULAR_CENTER:
        out = np.full(points.shape[0], np.inf)
        same = np.linalg.norm(points - center, axis=1) <= 1e-9
        out[same] = 0.0
        return out
    a, b_over_r = _center_coeffs(rc)
    return _neg_entropy(radii) - a - b_over_r * (points @ center)


def scan_centers(points, radii, centers):
    """max_i (D(p_i || c) + radii_i) for every candidate center.

    points: (n, 3); radii: (n,) additive per-point offsets; centers: (m, 3).
    Centers at or beyond the singular shell get +inf.
    """
    points = np.asarray(points, dtype=float)
    radii = np.asarray(radii, dtype=float)
    centers = np.asarray(centers, dtype=float)
    rc = np.linalg.norm(centers, axis=1)
    ok = rc < _SINGULAR_CENTER
    rc_safe = np.where(ok, rc, 0.0)
    a = 0.5 * np.log2(np.where(ok, (1.0 - rc_safe**2) / 4.0, 1.0))
    small = rc_safe < _EPS_CENTER
    denom = np.where(small, 1.0, rc_safe)
    b_over_r = np.where(
        small,
        1.0 / np.log(2.0),
        0.5 * np.log2(np.where(small, 1.0, (1.0 + rc_safe) / (1.0 - rc_safe))) / denom,
    )
    head = _neg_entropy(np.linalg.norm(points, axis=1)) + radii  # (n,)
    cross = centers @ points.T  # (m, n)
    vals = head[None, :] - cross * b_over_r[:, None]
    out = vals.max(axis=1) - a
    out[~ok] = np.inf
    return out
