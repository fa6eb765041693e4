import numpy as np
import pytest

from randsvd import SketchConfig, computed_range_error, range_finder, rsvd, svd_small, truncate
from randsvd.errors import DimensionError

from conftest import oracle_sigma, planted

MODES = ("basic", "power", "power-ortho")


def test_diag_full_capture():
    A = np.diag([3.0, 2.0, 1.0])
    f = rsvd(A, SketchConfig(3, 0, mode="basic", seed=1))
    assert np.allclose(f.sigma, [3, 2, 1], atol=1e-10)
    assert np.max(np.abs(f.reconstruct() - A)) <= 1e-10


@pytest.mark.parametrize("mode", MODES)
def test_exact_rank(mode):
    A = planted(40, 30, 5, seed=3)
    f = rsvd(A, SketchConfig(5, 5, 2, mode, seed=11))
    assert f.rank == 10
    assert np.linalg.norm(A - f.reconstruct()) / np.linalg.norm(A) <= 1e-10


def test_leading_singular_values(gap10):
    A, oracle = gap10
    f = rsvd(A, SketchConfig(20, 5, 1, "power", seed=0))
    assert np.allclose(f.sigma[:15], oracle.sigma[:15], rtol=1e-6, atol=0)


@pytest.mark.parametrize("mode", MODES)
@pytest.mark.parametrize("seed", range(4))
def test_stage_two_exact(mode, seed):
    A = np.random.default_rng(seed).standard_normal((50, 35))
    cfg = SketchConfig(6, 4, 1, mode, seed)
    Q = range_finder(A, cfg)
    f = rsvd(A, cfg)
    f.check()
    nA = np.linalg.norm(A, 2)
    assert np.linalg.norm((A - f.reconstruct()) - (A - Q @ (Q.T @ A)), 2) <= 1e-9 * nA
    assert abs(np.linalg.norm(A - f.reconstruct(), 2) - computed_range_error(A, Q)) <= 1e-9 * nA


def test_basic_equals_power_q0(rng):
    A = rng.standard_normal((30, 20))
    a = rsvd(A, SketchConfig(5, 3, 0, "basic", seed=5))
    b = rsvd(A, SketchConfig(5, 3, 0, "power", seed=5))
    assert np.array_equal(a.U, b.U) and np.array_equal(a.sigma, b.sigma)


def test_explicit_rng_overrides_seed(rng):
    A = rng.standard_normal((20, 10))
    cfg = SketchConfig(3, 2, seed=1)
    assert np.array_equal(rsvd(A, cfg, 1).U, rsvd(A, cfg).U)
    assert not np.array_equal(rsvd(A, cfg, 2).U, rsvd(A, cfg).U)


class TestTruncate:
    def test_full_length(self, rng):
        f = svd_small(rng.standard_normal((5, 4)))
        g = truncate(f, 4)
        assert np.array_equal(g.U, f.U) and np.array_equal(g.sigma, f.sigma)

    def test_diag(self):
        f = svd_small(np.diag([3.0, 2.0, 1.0]))
        assert np.allclose(truncate(f, 2).sigma, [3, 2])

    def test_too_large(self, rng):
        with pytest.raises(DimensionError):
            truncate(svd_small(np.eye(3)), 4)

    @pytest.mark.parametrize("seed", range(5))
    def test_floor(self, seed):
        A = np.random.default_rng(seed).standard_normal((30, 25))
        s = oracle_sigma(A)
        f = rsvd(A, SketchConfig(8, 4, 1, "power", seed))
        for k in (1, 4, 8, 12):
            g = truncate(f, k)
            g.check()
            assert np.linalg.norm(A - g.reconstruct(), 2) >= s[k] - 1e-8 * s[0]
