"""
Single-pass factorizations: A is touched once and the core matrix is
recovered from the sketches by least squares.
"""
import numpy as np
import scipy.linalg as la

from .core import (
    CountingOperator,
    EvdApprox,
    SvdApprox,
    evd_symmetric,
    orthonormalize,
    solve_ls,
    svd_small,
)
from .errors import AsymmetryError, DimensionError
from .rangefinder import _check_sizes
from .sketch import gaussian, make_rng

# joint core solve switches from the stacked Kronecker system to the
# equivalent Sylvester normal equations above this sketch width
STACKED_MAX_WIDTH = 32


def _as_operator(A):
    return A if isinstance(A, CountingOperator) else CountingOperator(A)


def spevd_hermitian(A, k, p, rng):
    """
    Single-pass rank-k eigendecomposition of a symmetric matrix.

    ``A`` may be an array or a :class:`CountingOperator`; it is applied
    exactly once.
    """
    op = _as_operator(A)
    n, n2 = op.shape
    if n != n2:
        raise DimensionError(f"symmetric input must be square, got {op.shape}")
    defect, amax = op.symmetry_defect()
    if defect > 1e-8 * (1.0 + amax):
        raise AsymmetryError(f"matrix is not symmetric (max |A - A^T| = {defect:.3e})")
    _check_sizes(op.shape, k, p)
    rng = make_rng(rng)

    Omega = gaussian(n, k + p, rng)
    Y = op.matmat(Omega)
    Q = orthonormalize(Y)
    # C (Q^T Omega) = Q^T Y, solved transposed: (Q^T Omega)^T C^T = (Q^T Y)^T
    G = Q.T @ Omega
    C = solve_ls(G.T, (Q.T @ Y).T).T
    # the least-squares core is only approximately symmetric
    C = 0.5 * (C + C.T)
    small = evd_symmetric(C)
    U = Q @ small.U[:, :k]
    return EvdApprox(np.ascontiguousarray(U), small.lam[:k].copy())


def joint_core(G, R1, H, R2):
    """
    Least-squares C for the pair ``G @ C = R1`` and ``C @ H = R2``.

    Solved exactly as one stacked system in vec(C) for small widths and
    through the normal equations ``G^T G C + C H H^T = G^T R1 + R2 H^T``
    (a Sylvester equation) otherwise.
    """
    l = G.shape[1]
    if l <= STACKED_MAX_WIDTH:
        return stacked_core(G, R1, H, R2)
    rhs = G.T @ R1 + R2 @ H.T
    return la.solve_sylvester(G.T @ G, H @ H.T, rhs)


def stacked_core(G, R1, H, R2):
    # column-major vec: vec(G C) = (I kron G) vec C, vec(C H) = (H^T kron I) vec C
    a, b = G.shape[1], H.shape[0]
    top = np.kron(np.eye(b), G)
    bottom = np.kron(H.T, np.eye(a))
    M = np.vstack([top, bottom])
    rhs = np.concatenate([R1.ravel(order="F"), R2.ravel(order="F")])
    x = solve_ls(M, rhs[:, None])[:, 0]
    return x.reshape((a, b), order="F")


def spsvd_general(A, k, p, rng):
    """
    Single-pass rank-k SVD of a general matrix.

    Both sketches ``A @ Omega_c`` and ``A.T @ Omega_r`` are formed in one
    sweep over A.
    """
    op = _as_operator(A)
    m, n = op.shape
    _check_sizes(op.shape, k, p)
    rng = make_rng(rng)
    l = k + p

    Omega_c = gaussian(n, l, rng)
    Omega_r = gaussian(m, l, rng)
    Yc, Yr = op.sketch_both(Omega_c, Omega_r)
    Qc = orthonormalize(Yc)
    Qr = orthonormalize(Yr)

    # (Omega_r^T Qc) C = Yr^T Qr  and  C (Qr^T Omega_c) = Qc^T Yc
    C = joint_core(Omega_r.T @ Qc, Yr.T @ Qr, Qr.T @ Omega_c, Qc.T @ Yc)
    small = svd_small(C)
    U = Qc @ small.U[:, :k]
    V = Qr @ small.V[:, :k]
    return SvdApprox(np.ascontiguousarray(U), small.sigma[:k].copy(), np.ascontiguousarray(V))
