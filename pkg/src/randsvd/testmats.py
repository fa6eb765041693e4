"""
Sparse nonnegative test matrices with a controlled singular-value gap:

    A = sum_{j<=r} (gap/j) x_j y_j^T + sum_{r<j<=n} (1/j) x_j y_j^T

with sparse, nonnegative, unit-norm x_j (length m) and y_j (length n).
"""
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .core import svd_small
from .errors import ParameterError
from .sketch import make_rng

DEFAULT_DENSITY = 0.025


@dataclass(frozen=True)
class GapSpec:
    m: int = 3000
    n: int = 300
    r: int = 15
    gap: float = 10.0
    density: float = DEFAULT_DENSITY
    seed: int = 0

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ParameterError(f"dimensions must be positive, got {self.m}x{self.n}")
        if not 1 <= self.r < self.n:
            raise ParameterError(f"gap location must satisfy 1 <= r < n, got r={self.r}")
        if self.gap < 1:
            raise ParameterError(f"gap must be >= 1, got {self.gap}")
        if not 0 < self.density <= 1:
            raise ParameterError(f"density must lie in (0, 1], got {self.density}")


@dataclass(frozen=True)
class SparseTriplets:
    """COO carrier: parallel arrays of row index, column index and value."""

    rows: int
    cols: int
    i: np.ndarray
    j: np.ndarray
    v: np.ndarray

    @property
    def nnz(self):
        return self.v.shape[0]


def coefficients(spec):
    j = np.arange(1, spec.n + 1, dtype=np.float64)
    c = 1.0 / j
    c[: spec.r] *= spec.gap
    return c


def _sparse_unit(dim, density, rng):
    size = math.ceil(density * dim)
    support = np.sort(rng.choice(dim, size=size, replace=False))
    vals = rng.random(size)
    while not vals.any():
        vals = rng.random(size)
    return support, vals / np.linalg.norm(vals)


def controlled_gap(spec, unit_vectors=False):
    """
    Assemble the test matrix as deduplicated triplets.

    ``unit_vectors=True`` uses x_j = e_j, y_j = e_j (requires n <= m), which
    makes the coefficients exactly the singular values.
    """
    c = coefficients(spec)
    if unit_vectors:
        if spec.n > spec.m:
            raise ParameterError("unit_vectors needs n <= m")
        idx = np.arange(spec.n)
        return SparseTriplets(spec.m, spec.n, idx, idx.copy(), c)

    rng = make_rng(spec.seed)
    I, J, V = [], [], []
    for jj in range(spec.n):
        xs, xv = _sparse_unit(spec.m, spec.density, rng)
        ys, yv = _sparse_unit(spec.n, spec.density, rng)
        I.append(np.repeat(xs, ys.shape[0]))
        J.append(np.tile(ys, xs.shape[0]))
        V.append(c[jj] * np.outer(xv, yv).ravel())
    coo = sp.coo_matrix(
        (np.concatenate(V), (np.concatenate(I), np.concatenate(J))),
        shape=(spec.m, spec.n),
    )
    coo.sum_duplicates()
    keep = coo.data != 0
    return SparseTriplets(spec.m, spec.n, coo.row[keep].astype(np.int64),
                          coo.col[keep].astype(np.int64), coo.data[keep])


def to_dense(t):
    M = np.zeros((t.rows, t.cols))
    # np.add.at tolerates repeated (i, j) pairs in hand-built triplets
    np.add.at(M, (t.i, t.j), t.v)
    return M


def from_dense(M):
    M = np.asarray(M, dtype=np.float64)
    i, j = np.nonzero(M)
    return SparseTriplets(M.shape[0], M.shape[1], i, j, M[i, j])


@lru_cache(maxsize=8)
def gap_matrix(spec):
    """Dense test matrix for ``spec`` (cached; do not mutate the result)."""
    A = to_dense(controlled_gap(spec))
    A.setflags(write=False)
    return A


@lru_cache(maxsize=8)
def oracle_svd(spec):
    """Dense SVD of the test matrix, computed once per spec."""
    return svd_small(gap_matrix(spec))
