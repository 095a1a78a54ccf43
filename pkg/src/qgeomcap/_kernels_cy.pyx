# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled Bloch-space divergence kernels (hot inner loops).

Mirrors the API of _kernels_py; selected at import time by the kernels
module when available.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport log, log2, INFINITY, sqrt

cdef double _EPS_PURE = 1e-12
cdef double _EPS_CENTER = 1e-12
cdef double _SINGULAR_CENTER = 1.0 - 1e-9
cdef double _INV_LN2 = 1.4426950408889634


cdef inline double _neg_entropy_c(double r) noexcept nogil:
    cdef double lam_p, lam_m, out
    if r > 1.0:
        r = 1.0
    if r < 0.0:
        r = 0.0
    lam_p = (1.0 + r) / 2.0
    lam_m = (1.0 - r) / 2.0
    out = 0.0
    if lam_p > _EPS_PURE:
        out += lam_p * log2(lam_p)
    if lam_m > _EPS_PURE:
        out += lam_m * log2(lam_m)
    return out


def bloch_relative_entropy(r_rho, r_sigma):
    """D(rho || sigma) in bits from Bloch vectors."""
    cdef double px = r_rho[0], py = r_rho[1], pz = r_rho[2]
    cdef double cx = r_sigma[0], cy = r_sigma[1], cz = r_sigma[2]
    cdef double rr = sqrt(px * px + py * py + pz * pz)
    cdef double rc = sqrt(cx * cx + cy * cy + cz * cz)
    cdef double a, b_over_r, dx, dy, dz
    if rc >= _SINGULAR_CENTER:
        dx = px - cx
        dy = py - cy
        dz = pz - cz
        if sqrt(dx * dx + dy * dy + dz * dz) <= 1e-9:
            return 0.0
        return INFINITY
    a = 0.5 * log2((1.0 - rc * rc) / 4.0)
    if rc < _EPS_CENTER:
        b_over_r = _INV_LN2
    else:
        b_over_r = 0.5 * log2((1.0 + rc) / (1.0 - rc)) / rc
    return _neg_entropy_c(rr) - a - b_over_r * (px * cx + py * cy + pz * cz)


def batch_divergence(points, center):
    """D(p_i || center) for an (n, 3) array of Bloch points."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] pts = np.ascontiguousarray(points, dtype=np.float64)
    cdef double cx = center[0], cy = center[1], cz = center[2]
    cdef double rc = sqrt(cx * cx + cy * cy + cz * cz)
    cdef Py_ssize_t n = pts.shape[0], i
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double a, b_over_r, px, py, pz, rr, dx, dy, dz
    if rc >= _SINGULAR_CENTER:
        for i in range(n):
            dx = pts[i, 0] - cx
            dy = pts[i, 1] - cy
            dz = pts[i, 2] - cz
            out[i] = 0.0 if sqrt(dx * dx + dy * dy + dz * dz) <= 1e-9 else INFINITY
        return out
    a = 0.5 * log2((1.0 - rc * rc) / 4.0)
    if rc < _EPS_CENTER:
        b_over_r = _INV_LN2
    else:
        b_over_r = 0.5 * log2((1.0 + rc) / (1.0 - rc)) / rc
    for i in range(n):
        px = pts[i, 0]
        py = pts[i, 1]
        pz = pts[i, 2]
        rr = sqrt(px * px + py * py + pz * pz)
        out[i] = _neg_entropy_c(rr) - a - b_over_r * (px * cx + py * cy + pz * cz)
    return out


def scan_centers(points, radii, centers):
    """max_i (D(p_i || c) + radii_i) for every candidate center."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] pts = np.ascontiguousarray(points, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] rad = np.ascontiguousarray(radii, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] cen = np.ascontiguousarray(centers, dtype=np.float64)
    cdef Py_ssize_t n = pts.shape[0], m = cen.shape[0], i, j
    cdef cnp.ndarray[cnp.float64_t, ndim=1] head = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m, dtype=np.float64)
    cdef double px, py, pz, cx, cy, cz, rc, a, b_over_r, best, v
    for i in range(n):
        px = pts[i, 0]
        py = pts[i, 1]
        pz = pts[i, 2]
        head[i] = _neg_entropy_c(sqrt(px * px + py * py + pz * pz)) + rad[i]
    with nogil:
        for j in range(m):
            cx = cen[j, 0]
            cy = cen[j, 1]
            cz = cen[j, 2]
            rc = sqrt(cx * cx + cy * cy + cz * cz)
            if rc >= _SINGULAR_CENTER:
                out[j] = INFINITY
                continue
            a = 0.5 * log2((1.0 - rc * rc) / 4.0)
            if rc < _EPS_CENTER:
                b_over_r = _INV_LN2
            else:
                b_over_r = 0.5 * log2((1.0 + rc) / (1.0 - rc)) / rc
            best = -INFINITY
            for i in range(n):
                v = head[i] - b_over_r * (pts[i, 0] * cx + pts[i, 1] * cy + pts[i, 2] * cz)
                if v > best:
                    best = v
            out[j] = best - a
    return out
