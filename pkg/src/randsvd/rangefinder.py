"""
Stage 1 of the two-stage approach: an orthonormal Q with ``A ~ Q Q^T A``.

Three variants share one Gaussian draw so that equal seeds give directly
comparable bases:

* ``fixed_rank_range``   -- Q = orth(A @ Omega)
* ``power_range``        -- Q = orth((A A^T)^q A @ Omega), no intermediate
                            re-orthonormalization
* ``subspace_iter_range`` -- orthonormalize after every half step
"""
from dataclasses import dataclass

import numpy as np

from .core import as_matrix, orthonormalize
from .errors import DimensionError, ParameterError
from .sketch import gaussian, make_rng

MODES = ("basic", "power", "power-ortho")


@dataclass(frozen=True)
class SketchConfig:
    """Every tunable of Stage 1.

    ``q`` is forced to 0 in ``basic`` mode.
    """

    k: int
    p: int = 5
    q: int = 0
    mode: str = "basic"
    seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ParameterError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.k < 1:
            raise ParameterError(f"target rank k must be >= 1, got {self.k}")
        if self.p < 0:
            raise ParameterError(f"oversampling p must be >= 0, got {self.p}")
        if self.q < 0:
            raise ParameterError(f"power steps q must be >= 0, got {self.q}")
        if self.mode == "basic" and self.q != 0:
            object.__setattr__(self, "q", 0)

    @property
    def width(self):
        return self.k + self.p

    def check_shape(self, shape):
        _check_sizes(shape, self.k, self.p)


def _check_sizes(shape, k, p, q=0):
    m, n = shape
    if k < 1:
        raise ParameterError(f"target rank k must be >= 1, got {k}")
    if p < 0:
        raise ParameterError(f"oversampling p must be >= 0, got {p}")
    if q < 0:
        raise ParameterError(f"power steps q must be >= 0, got {q}")
    if k + p > min(m, n):
        raise DimensionError(f"k + p = {k + p} exceeds min(m, n) = {min(m, n)}")


def _sketch(A, k, p, rng):
    return A @ gaussian(A.shape[1], k + p, make_rng(rng))


def fixed_rank_range(A, k, p, rng):
    A = as_matrix(A, "A")
    _check_sizes(A.shape, k, p)
    Y = _sketch(A, k, p, rng)
    return orthonormalize(Y)


def power_range(A, k, p, q, rng):
    A = as_matrix(A, "A")
    _check_sizes(A.shape, k, p, q)
    Y = _sketch(A, k, p, rng)
    for _ in range(q):
        Z = A.T @ Y
        Y = A @ Z
    return orthonormalize(Y)


def subspace_iter_range(A, k, p, q, rng):
    A = as_matrix(A, "A")
    _check_sizes(A.shape, k, p, q)
    Y = _sketch(A, k, p, rng)
    Q = orthonormalize(Y)
    for _ in range(q):
        W = orthonormalize(A.T @ Q)
        Q = orthonormalize(A @ W)
    return Q


def range_finder(A, cfg, rng=None):
    """Dispatch on ``cfg.mode``; ``rng`` defaults to ``cfg.seed``."""
    rng = make_rng(cfg.seed if rng is None else rng)
    if cfg.mode == "basic":
        return fixed_rank_range(A, cfg.k, cfg.p, rng)
    if cfg.mode == "power":
        return power_range(A, cfg.k, cfg.p, cfg.q, rng)
    return subspace_iter_range(A, cfg.k, cfg.p, cfg.q, rng)
