import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from randsvd import (
    angle_bounds,
    bound_basic,
    bound_ortho,
    bound_power,
    computed_range_error,
    gaussian,
    make_rng,
)
from randsvd.bounds import sketch_alignment
from randsvd.errors import GapError, OrderingError, OrthonormalityError, ParameterError, RankDeficiencyError

from conftest import oracle_sigma

# reference factors from 30-digit mpmath arithmetic
BASIC_20_5 = 87.6025403784438646763723170753
POWER_20_5_Q1 = 4.44125354147856970431104589699
POWER_20_5_Q10 = 1.23737345574878893328907518271
FLAT_20_5_Q1 = 3.65236283892876460164961654597


class TestBasic:
    def test_zero_tail(self):
        assert bound_basic(20, 5, 3000, 300, 0.0) == 0.0

    def test_reference_parameters(self):
        assert bound_basic(20, 5, 3000, 300, 1.0) == pytest.approx(BASIC_20_5, rel=1e-14)

    def test_linear(self):
        assert bound_basic(20, 5, 3000, 300, 0.2) == pytest.approx(2 * bound_basic(20, 5, 3000, 300, 0.1))

    @pytest.mark.parametrize("k,p", [(1, 5), (5, 1), (5, 0)])
    def test_hypotheses(self, k, p):
        with pytest.raises(ParameterError):
            bound_basic(k, p, 100, 50, 1.0)

    def test_too_wide(self):
        with pytest.raises(ParameterError):
            bound_basic(40, 20, 100, 50, 1.0)


class TestPower:
    def test_q1(self):
        assert bound_power(20, 5, 1, 3000, 300, 1.0) == pytest.approx(POWER_20_5_Q1, rel=1e-14)

    def test_limit(self):
        f = bound_power(20, 5, 10, 3000, 300, 1.0)
        assert f == pytest.approx(POWER_20_5_Q10, rel=1e-14)
        assert f <= 1.6

    def test_q0_grid(self):
        # 50-point grid of valid parameters
        grid = list(itertools.product([2, 5, 10, 20, 30], [2, 3, 5, 10, 20], [(3000, 300), (60, 80)]))
        grid = [(k, p, m, n) for k, p, (m, n) in grid if k + p <= min(m, n)][:50]
        assert len(grid) == 50
        for k, p, m, n in grid:
            a = bound_basic(k, p, m, n, 0.37)
            b = bound_power(k, p, 0, m, n, 0.37)
            assert abs(a - b) <= 1e-12 * a

    def test_monotone_in_q(self):
        vals = [bound_power(20, 5, q, 3000, 300, 1.0) for q in range(6)]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert vals[-1] >= 1.0


class TestOrtho:
    def test_zero_tail(self):
        s = np.r_[np.linspace(5, 1, 20), np.zeros(280)]
        assert bound_ortho(20, 5, 1, s, 3000, 300) == 0.0

    def test_flat_reference_parameters(self):
        s = np.r_[np.linspace(9, 2, 20), np.ones(280)]
        assert bound_ortho(20, 5, 1, s, 3000, 300, flat_tail=True) == pytest.approx(FLAT_20_5_Q1, rel=1e-14)

    @pytest.mark.parametrize("q", [0, 1, 2, 5])
    @pytest.mark.parametrize("k,p", [(20, 5), (5, 2), (10, 15)])
    def test_flat_equals_full(self, q, k, p):
        tail = 0.0371
        s = np.r_[np.linspace(10, 1, k), np.full(300 - k, tail)]
        full = bound_ortho(k, p, q, s, 3000, 300)
        flat = bound_ortho(k, p, q, s, 3000, 300, flat_tail=True)
        assert abs(full - flat) <= 1e-12 * flat

    def test_full_mode_formula(self):
        # direct evaluation with no rescaling
        s = np.sort(np.random.default_rng(0).uniform(0.1, 3, 50))[::-1]
        k, p, q = 7, 4, 1
        e = 2 * q + 1
        direct = ((1 + math.sqrt(k / (p - 1))) * s[k] ** e
                  + math.e * math.sqrt(k + p) / p * math.sqrt(np.sum(s[k:] ** (2 * e)))) ** (1 / e)
        assert bound_ortho(k, p, q, s, 80, 50) == pytest.approx(direct, rel=1e-13)

    def test_ordering(self):
        with pytest.raises(OrderingError):
            bound_ortho(2, 2, 0, [1.0, 2.0, 0.5, 0.1, 0.1], 5, 5)

    def test_p_hypothesis(self):
        with pytest.raises(ParameterError):
            bound_ortho(2, 1, 0, [3.0, 2.0, 1.0, 0.5], 4, 4)


@given(st.integers(1, 30), st.integers(2, 30), st.integers(0, 6), st.floats(1e-6, 1e3))
@settings(max_examples=100, deadline=None)
def test_bounds_dominate_sigma(k, p, q, sk1):
    m, n = 3000, 300
    assert bound_power(k, p, q, m, n, sk1) >= sk1
    if k >= 2:
        assert bound_basic(k, p, m, n, sk1) >= sk1
    s = np.r_[np.full(k, 2 * sk1), np.full(n - k, sk1)]
    assert bound_ortho(k, p, q, s, m, n) >= sk1 * (1 - 1e-12)


class TestComputedError:
    def test_full_basis(self, rng):
        A = rng.standard_normal((6, 6))
        Q, _ = np.linalg.qr(rng.standard_normal((6, 6)))
        assert computed_range_error(A, Q) <= 1e-10

    def test_oracle_basis(self, rng):
        A = rng.standard_normal((20, 12))
        U, s, _ = np.linalg.svd(A)
        for k in (1, 3, 7):
            assert computed_range_error(A, U[:, :k]) == pytest.approx(s[k], abs=1e-8)

    def test_floor(self, rng):
        A = rng.standard_normal((15, 10))
        s = oracle_sigma(A)
        for l in (1, 4, 8):
            Q, _ = np.linalg.qr(rng.standard_normal((15, l)))
            assert computed_range_error(A, Q) >= s[l] - 1e-8 * s[0]

    def test_not_orthonormal(self):
        with pytest.raises(OrthonormalityError):
            computed_range_error(np.eye(3), np.ones((3, 1)))


class TestAngleBounds:
    def setup_method(self):
        rng = np.random.default_rng(4)
        self.V, _ = np.linalg.qr(rng.standard_normal((40, 40)))
        self.Omega = rng.standard_normal((40, 8))
        self.s = 1.0 / np.arange(1, 41)
        self.s[:5] *= 3

    def test_zero_tail(self):
        s = np.r_[np.ones(5), np.zeros(35)]
        th, nu = angle_bounds(self.V, self.Omega, s, 5, 1)
        assert np.all(th == 0) and np.all(nu == 0)

    def test_decreasing_in_q(self):
        prev = None
        for q in range(3):
            th, nu = angle_bounds(self.V, self.Omega, self.s, 5, q)
            assert th.shape == nu.shape == (5,)
            assert np.all((th >= 0) & (th < 1) & (nu >= 0) & (nu < 1))
            assert np.all(nu <= th)
            if prev is not None:
                assert np.all(th < prev[0]) and np.all(nu < prev[1])
            prev = th, nu

    def test_formula(self):
        k, q = 5, 1
        Vk, Vp = self.V[:, :k], self.V[:, k:]
        O1, O2 = Vk.T @ self.Omega, Vp.T @ self.Omega
        w = np.linalg.norm(O2 @ np.linalg.pinv(O1), 2)
        g = self.s[k] / self.s[:k]
        th, nu = angle_bounds(self.V, self.Omega, self.s, k, q)
        assert np.allclose(th, g ** 3 * w / np.sqrt(1 + g ** 6 * w ** 2), rtol=1e-10)
        assert np.allclose(nu, g ** 4 * w / np.sqrt(1 + g ** 8 * w ** 2), rtol=1e-10)

    def test_partial_v(self):
        w_full = sketch_alignment(self.V, self.Omega, 5)
        w_part = sketch_alignment(self.V[:, :8], self.Omega, 5)
        assert w_part == pytest.approx(w_full, rel=1e-10)

    def test_gap_error(self):
        s = np.ones(40)
        with pytest.raises(GapError):
            angle_bounds(self.V, self.Omega, s, 5, 1)

    def test_rank_deficient(self):
        Omega = np.zeros((40, 8))
        Omega[:, 0] = 1.0
        with pytest.raises(RankDeficiencyError):
            angle_bounds(self.V, Omega, self.s, 5, 0)


def test_angle_bounds_hold_on_gap_matrix(gap2):
    from randsvd import SketchConfig, rsvd, subspace_quality
    A, oracle = gap2
    for seed in range(10):
        Omega = gaussian(A.shape[1], 30, make_rng(seed))
        for q in (0, 1, 2):
            f = rsvd(A, SketchConfig(25, 5, q, "power", seed))
            rep = subspace_quality(oracle, 25, f)
            th, nu = angle_bounds(oracle.V, Omega, oracle.sigma, 25, q)
            assert np.all(rep.sin_theta <= th)
            assert np.all(rep.sin_nu <= nu)
