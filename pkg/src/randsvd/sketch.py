"""
Seeded random test matrices: dense Gaussian sketches and the subsampled
random Fourier transform (SRFT).
"""
import numpy as np

from .errors import DimensionError, ParameterError

GENERATOR = "numpy.random.Generator(PCG64)"


def generator_identity():
    """Name and version of the normal sampler, recorded in run manifests."""
    return f"{GENERATOR} numpy-{np.__version__}"


def make_rng(seed):
    """
    Build a generator from a seed.

    ``seed`` may be an int (0 <= seed < 2**64) or an existing
    ``np.random.Generator``, which is returned unchanged.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ParameterError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def worker_rng(seed, worker):
    """Independent stream for worker ``worker`` derived from ``seed``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(worker),))
    return np.random.Generator(np.random.PCG64(ss))


def gaussian(n, l, rng):
    """n x l matrix of independent standard normal draws."""
    if n < 1 or l < 1:
        raise DimensionError(f"gaussian sketch needs n, l >= 1, got ({n}, {l})")
    return make_rng(rng).standard_normal((n, l))


def dft_matrix(n):
    """Unitary DFT with entries ``n**-0.5 * exp(-2j*pi*p*q/n)`` (0-based p, q)."""
    idx = np.arange(n)
    # reduce the exponent mod n before scaling so large p*q keep full accuracy
    phase = np.outer(idx, idx) % n
    return np.exp(-2j * np.pi * phase / n) / np.sqrt(n)


def srft(n, l, rng, *, identity_d=False, identity_r=False):
    """
    Dense n x l SRFT ``sqrt(n/l) * D @ F @ R``.

    D is diagonal with entries uniform on the complex unit circle, F is the
    unitary DFT and R picks ``l`` of the ``n`` coordinates uniformly without
    replacement. ``identity_d`` / ``identity_r`` replace D or R with the
    identity (``identity_r`` keeps the first ``l`` coordinates) and exist
    for testing.
    """
    if not 1 <= l <= n:
        raise DimensionError(f"srft needs 1 <= l <= n, got n={n}, l={l}")
    rng = make_rng(rng)
    if identity_d:
        d = np.ones(n, dtype=complex)
    else:
        d = np.exp(2j * np.pi * rng.random(n))
    if identity_r:
        cols = np.arange(l)
    else:
        cols = rng.choice(n, size=l, replace=False)
    F = dft_matrix(n)
    return np.sqrt(n / l) * (d[:, None] * F[:, cols])
