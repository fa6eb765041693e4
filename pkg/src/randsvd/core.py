"""
Dense linear-algebra kernels used by every randomized algorithm.

Matrices are plain ``numpy.ndarray`` objects of dtype float64 stored in C
(row-major) order. The two factorization containers, :class:`SvdApprox`
and :class:`EvdApprox`, are frozen dataclasses holding such arrays.
"""
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from .errors import (
    AsymmetryError,
    ConvergenceError,
    DimensionError,
    NonFiniteError,
)

# above this min-dimension spectral_norm switches from a dense SVD to power iteration
DENSE_NORM_LIMIT = 512
POWER_TOL = 1e-10
POWER_MAXITER = 5000
POWER_BLOCK = 8
LSTSQ_RCOND = 1e-12


def as_matrix(M, name="matrix"):
    """Return ``M`` as a finite 2-D float64 C-ordered array (copy only if needed)."""
    M = np.ascontiguousarray(M, dtype=np.float64)
    if M.ndim == 1:
        M = M.reshape(-1, 1)
    if M.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {M.shape}")
    if M.size == 0:
        raise DimensionError(f"{name} must be non-empty, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise NonFiniteError(f"{name} contains NaN or Inf")
    return M


def _fix_signs(U, V=None):
    # largest-magnitude entry of each column of U made nonnegative; V follows U
    if U.shape[1] == 0:
        return U, V
    idx = np.argmax(np.abs(U), axis=0)
    signs = np.sign(U[idx, np.arange(U.shape[1])])
    signs[signs == 0] = 1.0
    U = U * signs
    if V is not None:
        V = V * signs
    return U, V


@dataclass(frozen=True)
class SvdApprox:
    """Factor triple ``A ~ U @ diag(sigma) @ V.T``.

    ``U`` is m x l and ``V`` is n x l, both with orthonormal columns, and
    ``sigma`` is nonnegative and nonincreasing.
    """

    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray

    @property
    def rank(self):
        return self.sigma.shape[0]

    def reconstruct(self):
        return (self.U * self.sigma) @ self.V.T

    def check(self, tol=1e-10):
        """Raise ``AssertionError`` if an invariant does not hold."""
        l = self.rank
        assert self.U.shape[1] == l and self.V.shape[1] == l
        assert np.max(np.abs(self.U.T @ self.U - np.eye(l)), initial=0) <= tol
        assert np.max(np.abs(self.V.T @ self.V - np.eye(l)), initial=0) <= tol
        assert np.all(self.sigma >= 0)
        assert np.all(np.diff(self.sigma) <= 0)


@dataclass(frozen=True)
class EvdApprox:
    """Symmetric factor pair ``A ~ U @ diag(lam) @ U.T``, ``|lam|`` nonincreasing."""

    U: np.ndarray
    lam: np.ndarray

    @property
    def rank(self):
        return self.lam.shape[0]

    def reconstruct(self):
        return (self.U * self.lam) @ self.U.T

    def check(self, tol=1e-10):
        l = self.rank
        assert self.U.shape[1] == l
        assert np.max(np.abs(self.U.T @ self.U - np.eye(l)), initial=0) <= tol
        assert np.all(np.diff(np.abs(self.lam)) <= 0)


def orthonormalize(M):
    """
    Orthonormal basis for the range of ``M`` via Householder QR.

    Always returns ``l`` columns for an m x l input with l <= m. When ``M``
    is rank deficient the extra columns are orthonormal directions that pad
    the range, so output shapes never depend on the data.
    """
    M = as_matrix(M)
    m, l = M.shape
    if l > m:
        raise DimensionError(f"cannot orthonormalize {l} columns in dimension {m}")
    # LAPACK geqrf/orgqr: Householder reflections
    Q, _ = la.qr(M, mode="economic", check_finite=False)
    return np.ascontiguousarray(Q)


def svd_small(M):
    """
    Thin SVD of a small dense matrix with a deterministic sign convention.

    Returns an :class:`SvdApprox` with ``min(m, l)`` factors. The entry of
    largest magnitude in each left singular vector is nonnegative.
    """
    M = as_matrix(M)
    U, s, Vt = la.svd(M, full_matrices=False, check_finite=False, lapack_driver="gesdd")
    U, V = _fix_signs(U, Vt.T)
    return SvdApprox(np.ascontiguousarray(U), s, np.ascontiguousarray(V))


def evd_symmetric(C, sym_tol=1e-8):
    """
    Eigendecomposition of a (numerically) symmetric matrix.

    The input is symmetrized as ``(C + C.T) / 2`` first. Eigenpairs are
    ordered by decreasing absolute eigenvalue.
    """
    C = as_matrix(C)
    if C.shape[0] != C.shape[1]:
        raise DimensionError(f"evd_symmetric needs a square matrix, got {C.shape}")
    asym = np.max(np.abs(C - C.T))
    if asym > sym_tol * (1.0 + np.max(np.abs(C))):
        raise AsymmetryError(f"matrix is not symmetric (max |C - C^T| = {asym:.3e})")
    Cs = 0.5 * (C + C.T)
    lam, U = la.eigh(Cs, check_finite=False)
    # ties in |lambda| broken by the signed value, largest first
    order = np.lexsort((-lam, -np.abs(lam)))
    lam = lam[order]
    U, _ = _fix_signs(U[:, order])
    return EvdApprox(np.ascontiguousarray(U), lam)


def solve_ls(G, H, rcond=LSTSQ_RCOND):
    """Minimum-norm least-squares solution X of ``G @ X ~ H``.

    Singular values of G below ``rcond * sigma_max`` are treated as zero.
    """
    G = as_matrix(G, "G")
    H = as_matrix(H, "H")
    if G.shape[0] != H.shape[0]:
        raise DimensionError(f"row mismatch: G is {G.shape}, H is {H.shape}")
    X, *_ = la.lstsq(G, H, cond=rcond, check_finite=False, lapack_driver="gelsd")
    return np.ascontiguousarray(X)


def spectral_norm(M):
    """Largest singular value of ``M``.

    Uses a dense SVD when ``min(M.shape) <= 512``, and otherwise block power
    iteration on ``M.T @ M`` (relative tolerance 1e-10, at most 5000
    iterations). Raises :class:`ConvergenceError` if the cap is reached.
    """
    M = as_matrix(M)
    if min(M.shape) <= DENSE_NORM_LIMIT:
        return float(la.svdvals(M, check_finite=False)[0]) if M.any() else 0.0
    return _power_norm(M)


def _power_norm(M, tol=POWER_TOL, maxiter=POWER_MAXITER, block=POWER_BLOCK):
    if not M.any():
        return 0.0
    n = M.shape[1]
    # fixed start block keeps the kernel deterministic
    X = np.random.default_rng(0x5EED).standard_normal((n, min(block, n)))
    X, _ = la.qr(X, mode="economic")
    prev = 0.0
    for _ in range(maxiter):
        Z = M.T @ (M @ X)
        X, R = la.qr(Z, mode="economic")
        # Rayleigh-Ritz on the current block
        MX = M @ X
        est = float(la.svdvals(MX)[0])
        if est == 0.0:
            return 0.0
        if abs(est - prev) <= tol * est:
            return est
        prev = est
    raise ConvergenceError(f"power iteration did not converge in {maxiter} iterations")


class CountingOperator:
    """
    Wraps a dense matrix and counts how often it is applied.

    ``matmat`` is one block application of A, ``rmatmat`` one of A.T.
    ``sketch_both`` forms ``A @ Oc`` and ``A.T @ Or`` in a single sweep over
    row blocks of A and counts as one of each.
    """

    def __init__(self, A, block_rows=512):
        self._A = as_matrix(A)
        self.block_rows = block_rows
        self.n_matmat = 0
        self.n_rmatmat = 0
        self.n_passes = 0

    @property
    def shape(self):
        return self._A.shape

    def matmat(self, X):
        self.n_matmat += 1
        self.n_passes += 1
        return self._A @ X

    def rmatmat(self, X):
        self.n_rmatmat += 1
        self.n_passes += 1
        return self._A.T @ X

    def sketch_both(self, Oc, Or):
        m, n = self._A.shape
        Yc = np.empty((m, Oc.shape[1]))
        Yr = np.zeros((n, Or.shape[1]))
        for start in range(0, m, self.block_rows):
            rows = self._A[start:start + self.block_rows]
            Yc[start:start + self.block_rows] = rows @ Oc
            Yr += rows.T @ Or[start:start + self.block_rows]
        self.n_matmat += 1
        self.n_rmatmat += 1
        self.n_passes += 1
        return Yc, Yr

    def symmetry_defect(self):
        A = self._A
        return float(np.max(np.abs(A - A.T))), float(np.max(np.abs(A)))
