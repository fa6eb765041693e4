"""Randomized SVD/EVD algorithms, error bounds and canonical-angle diagnostics."""
from .angles import AngleReport, canonical_sines, subspace_quality
from .bounds import (
    BoundReport,
    angle_bounds,
    bound_basic,
    bound_ortho,
    bound_power,
    computed_range_error,
)
from .core import (
    CountingOperator,
    EvdApprox,
    SvdApprox,
    evd_symmetric,
    orthonormalize,
    solve_ls,
    spectral_norm,
    svd_small,
)
from .factor import rsvd, stage_two, truncate
from .rangefinder import (
    SketchConfig,
    fixed_rank_range,
    power_range,
    range_finder,
    subspace_iter_range,
)
from .singlepass import spevd_hermitian, spsvd_general
from .sketch import gaussian, generator_identity, make_rng, srft
from .testmats import GapSpec, SparseTriplets, controlled_gap, gap_matrix, oracle_svd, to_dense

__version__ = "0.1.0"
