"""
Experiment drivers behind the CLI. Each returns plain rows so the CLI
only has to format and write them.

Trial ``t`` of a sweep always uses seed ``seed + t``, so results do not
depend on execution order.
"""
import shlex
import time
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .angles import subspace_quality
from .bounds import BoundReport, angle_bounds, bound_basic, bound_ortho, bound_power, computed_range_error
from .core import spectral_norm, svd_small
from .factor import rsvd, truncate
from .rangefinder import SketchConfig, fixed_rank_range, power_range, subspace_iter_range
from .singlepass import spevd_hermitian, spsvd_general
from .sketch import gaussian, generator_identity, make_rng

ALGORITHMS = ("basic", "power", "ortho", "sp-hermitian", "sp-general")
MODE_OF = {"basic": "basic", "power": "power", "ortho": "power-ortho"}

IMAGE_COLUMNS = ("k", "p", "q", "alg", "rel_frobenius_error", "spectral_error", "seed")
BOUNDS_COLUMNS = ("trial", "seed", "k", "p", "q", "alg", "computed_error", "estimated_bound", "sigma_k1")
ANGLES_COLUMNS = ("seed", "q", "j", "sin_theta", "sin_nu", "bound_theta", "bound_nu")


@dataclass
class RunManifest:
    command: str
    params: dict
    seeds: list
    generator: str = None
    version: str = __version__
    timestamp: str = None

    def __post_init__(self):
        if self.generator is None:
            self.generator = generator_identity()
        if self.timestamp is None:
            self.timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")

    def lines(self):
        params = " ".join(f"{k}={shlex.quote(str(self.params[k]))}" for k in sorted(self.params))
        seeds = self.seeds
        if len(seeds) > 8:
            seeds_txt = f"{seeds[0]}..{seeds[-1]} ({len(seeds)} seeds)"
        else:
            seeds_txt = ",".join(str(s) for s in seeds)
        return [
            f"command: {self.command}",
            f"params: {params}",
            f"seeds: {seeds_txt}",
            f"generator: {self.generator}",
            f"version: randsvd {self.version}",
            f"timestamp: {self.timestamp}",
        ]


def factorize(A, alg, k, p, q, seed):
    """Run one algorithm by CLI name. Single-pass results are rank k."""
    rng = make_rng(seed)
    if alg in MODE_OF:
        return rsvd(A, SketchConfig(k, p, q, MODE_OF[alg], seed), rng)
    if alg == "sp-hermitian":
        return spevd_hermitian(A, k, p, rng)
    if alg == "sp-general":
        return spsvd_general(A, k, p, rng)
    raise ValueError(f"unknown algorithm {alg!r}")


def stage_one(A, alg, k, p, q, seed):
    rng = make_rng(seed)
    if alg == "basic":
        return fixed_rank_range(A, k, p, rng)
    if alg == "power":
        return power_range(A, k, p, q, rng)
    if alg == "ortho":
        return subspace_iter_range(A, k, p, q, rng)
    raise ValueError(f"no range finder for algorithm {alg!r}")


# ------------------------------------------------------------------- image

def image_sweep(image, alg, ks, p, q, seeds, spectral=True):
    """
    Rank-k reconstructions of ``image`` for every k in ``ks`` and seed.

    Returns ``(rows, recon)`` where ``recon[k]`` is the reconstruction from
    the first seed.
    """
    rows, recon = [], {}
    fro = np.linalg.norm(image)
    for seed in seeds:
        for k in ks:
            f = factorize(image, alg, k, p, q, seed)
            if f.rank > k:
                f = truncate(f, k)
            approx = f.reconstruct()
            resid = image - approx
            rel = float(np.linalg.norm(resid) / fro) if fro else 0.0
            spec = spectral_norm(resid) if spectral else float("nan")
            rows.append((k, p, q, alg, rel, spec, seed))
            if seed == seeds[0]:
                recon[k] = approx
    return rows, recon


# ------------------------------------------------------------------ bounds

def estimated_bound(alg, k, p, q, m, n, sigmas, flat_tail=False):
    sk1 = float(sigmas[k])
    if alg == "basic":
        return bound_basic(k, p, m, n, sk1)
    if alg == "power":
        return bound_power(k, p, q, m, n, sk1)
    if alg == "ortho":
        return bound_ortho(k, p, q, sigmas, m, n, flat_tail=flat_tail)
    raise ValueError(f"no error bound for algorithm {alg!r}")


def bounds_sweep(A, sigmas, alg, points, trials, seed, flat_tail=False):
    """
    ``points`` is a list of (k, p, q). Bounds are evaluated for every point
    before any trial runs so invalid parameters fail fast.
    """
    m, n = A.shape
    if alg == "basic":
        points = [(k, p, 0) for k, p, _ in points]
    est = {pt: estimated_bound(alg, *pt, m, n, sigmas, flat_tail) for pt in points}
    reports = []
    for k, p, q in points:
        for t in range(trials):
            s = seed + t
            t0 = time.perf_counter()
            Q = stage_one(A, alg, k, p, q, s)
            err = computed_range_error(A, Q)
            reports.append(BoundReport(
                trial=t, seed=s, k=k, p=p, q=q, mode=alg,
                computed_error=err, estimated_bound=est[(k, p, q)],
                sigma_k1=float(sigmas[k]), wall_time=time.perf_counter() - t0,
            ))
    return reports


def bound_rows(reports):
    return [(r.trial, r.seed, r.k, r.p, r.q, r.mode, r.computed_error, r.estimated_bound, r.sigma_k1)
            for r in reports]


# ------------------------------------------------------------------ angles

def angle_trial(A, oracle, alg, k, p, q, seed):
    """Computed sines and their bounds for one seed; returns an AngleReport."""
    # the range finders draw Omega first from a fresh generator, so this is the same sketch
    Omega = gaussian(A.shape[1], k + p, make_rng(seed))
    f = factorize(A, alg, k, p, q, seed)
    rep = subspace_quality(oracle, k, f)
    rep.bound_theta, rep.bound_nu = angle_bounds(oracle.V, Omega, oracle.sigma, k, q)
    rep.p, rep.q, rep.seed = p, q, seed
    return rep


def angles_sweep(A, alg, k, p, qs, seeds, oracle=None):
    if oracle is None:
        oracle = svd_small(A)
    if alg == "basic":
        qs = [0]
    rows = []
    for seed in seeds:
        for q in qs:
            rep = angle_trial(A, oracle, alg, k, p, q, seed)
            for j in range(k):
                rows.append((seed, q, j + 1, rep.sin_theta[j], rep.sin_nu[j],
                             rep.bound_theta[j], rep.bound_nu[j]))
    return rows


# --------------------------------------------------------------- test image

def synthetic_image(m=804, n=1092, seed=2021):
    """
    Deterministic full-rank grayscale test image: a flower-like radial
    pattern over smooth shading plus fine texture, quantized to 0..255.
    """
    rng = make_rng(seed)
    y, x = np.mgrid[0:m, 0:n].astype(np.float64)
    img = 90.0 + 60.0 * np.sin(x / 97.0) * np.cos(y / 131.0)
    for cy, cx, rad in rng.uniform([0, 0, 60], [m, n, 220], size=(9, 3)):
        dy, dx = y - cy, x - cx
        r = np.hypot(dx, dy)
        petals = np.cos(rng.integers(8, 21) * np.arctan2(dy, dx))
        disk = np.exp(-((r / rad) ** 2))
        img += 110.0 * disk * (0.6 + 0.4 * petals) - 70.0 * np.exp(-((r / (0.3 * rad)) ** 2))
    img += 12.0 * rng.standard_normal((m, n))
    return np.floor(np.clip(img, 0, 255) + 0.5)
