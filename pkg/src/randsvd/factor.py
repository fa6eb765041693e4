"""Stage 2 and the full two-pass randomized SVD pipelines."""
import numpy as np

from .core import SvdApprox, as_matrix, svd_small
from .errors import DimensionError
from .rangefinder import range_finder


def stage_two(A, Q):
    """Project onto ``range(Q)`` and factor: B = Q^T A = U~ S V^T, U = Q U~."""
    A = as_matrix(A, "A")
    B = Q.T @ A
    small = svd_small(B)
    return SvdApprox(Q @ small.U, small.sigma, small.V)


def rsvd(A, cfg, rng=None):
    """
    Randomized SVD of width ``cfg.k + cfg.p``.

    ``cfg.mode`` picks the range finder (``basic``, ``power`` or
    ``power-ortho``). The result is not truncated; use :func:`truncate`.
    """
    A = as_matrix(A, "A")
    Q = range_finder(A, cfg, rng)
    return stage_two(A, Q)


def truncate(f, k):
    """Keep the leading ``k`` singular triplets of ``f``."""
    if not 1 <= k <= f.rank:
        raise DimensionError(f"cannot truncate {f.rank} factors to {k}")
    return SvdApprox(
        np.ascontiguousarray(f.U[:, :k]),
        f.sigma[:k].copy(),
        np.ascontiguousarray(f.V[:, :k]),
    )
