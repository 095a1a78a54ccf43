"""Density-matrix arithmetic, entropies and quantum relative entropy.

States are plain complex numpy arrays. Validation is explicit via
``check_density_matrix``; operations assume validated inputs unless noted.
All entropic quantities are in bits (base-2 logs).
"""

import numpy as np

from . import kernels

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
EIG_FLOOR = 1e-14
SUPPORT_TOL = 1e-12

KET0 = np.array([1.0, 0.0], dtype=complex)
KET1 = np.array([0.0, 1.0], dtype=complex)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def pure_state(ket):
    """|psi><psi| from a (normalized) state vector."""
    ket = np.asarray(ket, dtype=complex)
    ket = ket / np.linalg.norm(ket)
    return np.outer(ket, ket.conj())


def check_density_matrix(rho, tol=HERMITICITY_TOL):
    """Validate Hermiticity, unit trace and positivity; raises ValueError."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    herm = np.abs(rho - rho.conj().T).max()
    if herm > tol:
        raise ValueError(f"not Hermitian: max deviation {herm:.3e} > {tol:.1e}")
    tr = np.trace(rho)
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValueError(f"trace {tr} deviates from 1 by more than {TRACE_TOL:.1e}")
    evals = np.linalg.eigvalsh(rho)
    if evals.min() < -1e-10:
        raise ValueError(f"negative eigenvalue {evals.min():.3e}")
    return rho


def bloch_to_density(r):
    """Qubit state (I + r . sigma)/2 from a Bloch vector."""
    x, y, z = (float(v) for v in r)
    if x * x + y * y + z * z > 1.0 + 1e-12:
        raise ValueError("Bloch vector outside the unit ball")
    return 0.5 * np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]], dtype=complex)


def density_to_bloch(rho):
    """Bloch vector (x, y, z) of a qubit density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError("density_to_bloch requires a qubit (2x2) state")
    x = float(np.real(rho[0, 1] + rho[1, 0]))
    y = float(np.real(1j * (rho[0, 1] - rho[1, 0])))
    z = float(np.real(rho[0, 0] - rho[1, 1]))
    return np.array([x, y, z])


def _clamped_eigh(rho):
    evals, evecs = np.linalg.eigh(np.asarray(rho, dtype=complex))
    return np.clip(evals.real, 0.0, 1.0), evecs


def von_neumann_entropy(rho):
    """S(rho) = -sum lambda_i log2 lambda_i, with 0 log 0 := 0."""
    evals, _ = _clamped_eigh(rho)
    evals = evals[evals > EIG_FLOOR]
    return float(-(evals * np.log2(evals)).sum())


def binary_entropy(p):
    """H(p) in bits for p in [0, 1]."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"binary_entropy requires p in [0, 1], got {p}")
    out = 0.0
    if p > 0.0:
        out -= p * np.log2(p)
    if p < 1.0:
        out -= (1 - p) * np.log2(1 - p)
    return out


def relative_entropy(rho, sigma):
    """D(rho || sigma) = Tr[rho (log2 rho - log2 sigma)], bits.

    Returns +inf when the support of rho is not contained in the support of
    sigma; an eigenvalue of sigma below the floor counts as outside the
    support (the divergence is semantic, not numerical noise).
    """
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    if rho.shape != sigma.shape:
        raise ValueError("dimension mismatch")
    evr, vr = _clamped_eigh(rho)
    evs, vs = _clamped_eigh(sigma)
    # support check: weight of rho on the kernel of sigma
    kernel = evs <= EIG_FLOOR
    if kernel.any():
        vk = vs[:, kernel]
        weight = float(np.real(np.einsum("ij,jk,ki->", vk.conj().T, rho, vk)))
        if weight > SUPPORT_TOL:
            return np.inf
    term_rho = 0.0
    mask = evr > EIG_FLOOR
    if mask.any():
        term_rho = float((evr[mask] * np.log2(evr[mask])).sum())
    log_sigma = (vs * np.log2(np.maximum(evs, EIG_FLOOR))) @ vs.conj().T
    term_cross = float(np.real(np.trace(rho @ log_sigma)))
    return term_rho - term_cross


def relative_entropy_bloch(r_rho, r_sigma):
    """Closed-form qubit relative entropy on Bloch vectors, bits."""
    for r in (r_rho, r_sigma):
        if float(np.dot(r, r)) > 1.0 + 1e-9:
            raise ValueError("Bloch vector outside the unit ball")
    return kernels.bloch_relative_entropy(
        np.asarray(r_rho, dtype=float), np.asarray(r_sigma, dtype=float)
    )


def tensor(rho_a, rho_b):
    """Kronecker product of two states."""
    return np.kron(np.asarray(rho_a, dtype=complex), np.asarray(rho_b, dtype=complex))


def partial_trace(rho_ab, keep, dims):
    """Reduced state of a bipartite system.

    keep: "A" (trace out B) or "B" (trace out A); dims: (dim_A, dim_B).
    """
    da, db = dims
    rho_ab = np.asarray(rho_ab, dtype=complex)
    if rho_ab.shape != (da * db, da * db):
        raise ValueError(f"state shape {rho_ab.shape} inconsistent with dims {dims}")
    t = rho_ab.reshape(da, db, da, db)
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijil->jl", t)
    raise ValueError("keep must be 'A' or 'B'")


def fidelity(rho, sigma):
    """F(rho, sigma) = [Tr sqrt(sqrt(sigma) rho sqrt(sigma))]^2."""
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    if rho.shape != sigma.shape:
        raise ValueError("dimension mismatch")
    evs, vs = _clamped_eigh(sigma)
    sqrt_sigma = (vs * np.sqrt(evs)) @ vs.conj().T
    inner = sqrt_sigma @ rho @ sqrt_sigma
    ev_inner, _ = _clamped_eigh(inner)
    return float(np.sqrt(ev_inner).sum() ** 2)


def ensemble_average(ensemble):
    """sigma = sum_i p_i rho_i of an ensemble [(p_i, rho_i), ...]."""
    probs = np.array([p for p, _ in ensemble], dtype=float)
    if abs(probs.sum() - 1.0) > 1e-10:
        raise ValueError(f"probabilities sum to {probs.sum()}, not 1")
    return sum(p * np.asarray(rho, dtype=complex) for p, rho in ensemble)


def holevo_quantity(ensemble):
    """chi = S(sum p_i rho_i) - sum p_i S(rho_i), bits."""
    avg = ensemble_average(ensemble)
    return von_neumann_entropy(avg) - sum(
        p * von_neumann_entropy(rho) for p, rho in ensemble
    )
