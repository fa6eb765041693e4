"""Canonical angles between computed and true dominant singular subspaces."""
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from .core import SvdApprox, as_matrix, svd_small
from .errors import DimensionError, OrthonormalityError


@dataclass
class AngleReport:
    k: int
    sin_theta: np.ndarray
    sin_nu: np.ndarray
    bound_theta: np.ndarray = None
    bound_nu: np.ndarray = None
    p: int = None
    q: int = None
    seed: int = None
    gap: float = None


def _check_orthonormal(X, name, tol):
    X = as_matrix(X, name)
    err = np.max(np.abs(X.T @ X - np.eye(X.shape[1])))
    if err > tol:
        raise OrthonormalityError(f"{name} is not orthonormal (max defect {err:.2e})")
    return X


def canonical_sines(X, Y, tol=1e-8):
    """
    Sines of the principal angles between ``range(X)`` and ``range(Y)``.

    Both inputs need orthonormal columns. The narrower basis is projected
    onto the orthogonal complement of the wider one; the singular values of
    that projection are the ``min(a, b)`` sines, returned ascending.
    """
    X = _check_orthonormal(X, "X", tol)
    Y = _check_orthonormal(Y, "Y", tol)
    if X.shape[0] != Y.shape[0]:
        raise DimensionError(f"bases live in different spaces: {X.shape} vs {Y.shape}")
    if X.shape[1] < Y.shape[1]:
        X, Y = Y, X
    R = Y - X @ (X.T @ Y)
    s = la.svdvals(R, check_finite=False)
    return np.clip(np.sort(s), 0.0, 1.0)


def subspace_quality(oracle, k, result, full_width=True):
    """
    Left and right canonical sines between the oracle's dominant k-dim
    singular subspaces and those of ``result``.

    ``oracle`` is an :class:`SvdApprox` (or a dense matrix, factored here).
    By default the whole computed basis is compared, which is what the
    angle bounds are stated for; ``full_width=False`` keeps only the first
    k computed vectors.
    """
    if not isinstance(oracle, SvdApprox):
        oracle = svd_small(oracle)
    if result.rank < k:
        raise DimensionError(f"result has {result.rank} factors, need at least {k}")
    width = result.rank if full_width else k
    Uk, Vk = oracle.U[:, :k], oracle.V[:, :k]
    sin_theta = canonical_sines(Uk, result.U[:, :width])
    sin_nu = canonical_sines(Vk, result.V[:, :width])
    return AngleReport(k=k, sin_theta=sin_theta, sin_nu=sin_nu)
