"""
Expectation bounds for ``||A - Q Q^T A||_2`` and canonical-angle bounds,
evaluated from the true singular values of the test matrix.
"""
import math
from dataclasses import dataclass

import numpy as np

from .core import as_matrix, solve_ls, spectral_norm, svd_small
from .errors import (
    DimensionError,
    GapError,
    OrderingError,
    OrthonormalityError,
    ParameterError,
    RankDeficiencyError,
)


@dataclass
class BoundReport:
    trial: int
    seed: int
    k: int
    p: int
    q: int
    mode: str
    computed_error: float
    estimated_bound: float
    sigma_k1: float
    wall_time: float = 0.0


def _check_common(k, p, m, n, sigma_k1=0.0, q=0):
    if p < 2:
        raise ParameterError(f"bounds need oversampling p >= 2, got {p}")
    if k < 1:
        raise ParameterError(f"target rank k must be >= 1, got {k}")
    if q < 0:
        raise ParameterError(f"power steps q must be >= 0, got {q}")
    if k + p > min(m, n):
        raise ParameterError(f"k + p = {k + p} exceeds min(m, n) = {min(m, n)}")
    if sigma_k1 < 0:
        raise ParameterError(f"sigma_(k+1) must be nonnegative, got {sigma_k1}")


def basic_factor(k, p, m, n):
    return 1.0 + 4.0 * math.sqrt(k + p) / (p - 1) * math.sqrt(min(m, n))


def bound_basic(k, p, m, n, sigma_k1):
    """Bound on the plain range finder: ``[1 + 4 sqrt(k+p)/(p-1) sqrt(min(m,n))] sigma_(k+1)``."""
    if k < 2:
        raise ParameterError(f"the basic bound needs k >= 2, got {k}")
    _check_common(k, p, m, n, sigma_k1)
    return basic_factor(k, p, m, n) * sigma_k1


def power_factor(k, p, q, m, n):
    return (1.0 + 4.0 * math.sqrt((k + p) * min(m, n)) / (p - 1)) ** (1.0 / (2 * q + 1))


def bound_power(k, p, q, m, n, sigma_k1):
    """Power-iteration bound: the basic bracket raised to ``1/(2q+1)``, times sigma_(k+1)."""
    _check_common(k, p, m, n, sigma_k1, q)
    return power_factor(k, p, q, m, n) * sigma_k1


def bound_ortho(k, p, q, sigmas, m, n, flat_tail=False):
    """
    Bound for subspace iteration with orthonormalization.

    With ``flat_tail=False`` this evaluates

        [(1 + sqrt(k/(p-1))) s_{k+1}^{2q+1}
         + e sqrt(k+p)/p (sum_{j>k} s_j^{2(2q+1)})^{1/2}]^{1/(2q+1)}

    over the full spectrum ``sigmas`` (length ``min(m, n)``). With
    ``flat_tail=True`` the tail is assumed constant at ``s_{k+1}`` and only
    ``sigmas[k]`` is read.
    """
    sigmas = np.asarray(sigmas, dtype=np.float64).ravel()
    _check_common(k, p, m, n, q=q)
    if sigmas.shape[0] <= k:
        raise DimensionError(f"need at least k+1 = {k + 1} singular values, got {sigmas.shape[0]}")
    if np.any(sigmas < 0):
        raise ParameterError("singular values must be nonnegative")
    if np.any(np.diff(sigmas) > 0):
        raise OrderingError("singular values must be nonincreasing")
    e = 2 * q + 1
    lead = 1.0 + math.sqrt(k / (p - 1))
    coef = math.e * math.sqrt(k + p) / p
    s_k1 = float(sigmas[k])
    if flat_tail:
        factor = (lead + coef * math.sqrt(min(m, n) - k)) ** (1.0 / e)
        return factor * s_k1
    if sigmas.shape[0] != min(m, n):
        raise DimensionError(f"full mode needs min(m, n) = {min(m, n)} singular values")
    if s_k1 == 0.0:
        return 0.0
    # scale by s_{k+1} so large exponents neither under- nor overflow
    tail = sigmas[k:] / s_k1
    inner = lead + coef * math.sqrt(float(np.sum(tail ** (2 * e))))
    return inner ** (1.0 / e) * s_k1


def computed_range_error(A, Q, tol=1e-8):
    """Spectral norm of ``A - Q (Q^T A)``."""
    A = as_matrix(A, "A")
    Q = as_matrix(Q, "Q")
    l = Q.shape[1]
    if np.max(np.abs(Q.T @ Q - np.eye(l))) > tol:
        raise OrthonormalityError("Q does not have orthonormal columns")
    return spectral_norm(A - Q @ (Q.T @ A))


def sketch_alignment(V, Omega, k):
    """``||Omega_2 Omega_1^+||_2`` where ``[Omega_1; Omega_2] = V^T Omega``.

    Only the leading ``k`` columns of V are needed: the trailing block is
    handled as the projection ``(I - V_k V_k^T) Omega``, which has the same
    singular values as ``V_perp^T Omega``.
    """
    V = as_matrix(V, "V")
    Omega = as_matrix(Omega, "Omega")
    Vk = V[:, :k]
    Om1 = Vk.T @ Omega
    s1 = svd_small(Om1).sigma
    if s1.shape[0] < k or s1[-1] <= 1e-10 * s1[0]:
        raise RankDeficiencyError("Omega_1 = V_k^T Omega does not have rank k")
    Om2 = Omega - Vk @ Om1
    # Omega_1 has full row rank, so its pseudoinverse is the min-norm solution of Omega_1 X = I
    pinv = solve_ls(Om1, np.eye(k))
    return spectral_norm(Om2 @ pinv)


def angle_bounds(V, Omega, sigmas, k, q):
    """
    Per-index upper bounds on the sines of the canonical angles between the
    dominant k-dimensional singular subspaces and the computed ones.

    Returns ``(theta, nu)`` arrays of length k for the left and right
    subspaces, with gap ratios ``gamma_j = sigma_(k+1) / sigma_j``.
    """
    sigmas = np.asarray(sigmas, dtype=np.float64).ravel()
    if sigmas.shape[0] <= k:
        raise DimensionError(f"need at least k+1 = {k + 1} singular values")
    if q < 0:
        raise ParameterError(f"power steps q must be >= 0, got {q}")
    if sigmas[k] >= sigmas[k - 1]:
        raise GapError(f"no spectral gap at k={k}: sigma_(k+1) >= sigma_k")
    gamma = sigmas[k] / sigmas[:k]
    if sigmas[k] == 0.0:
        return np.zeros(k), np.zeros(k)
    w = sketch_alignment(V, Omega, k)

    def shape(exp):
        g = gamma ** exp * w
        return g / np.sqrt(1.0 + g * g)

    return shape(2 * q + 1), shape(2 * q + 2)
