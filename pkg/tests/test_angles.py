import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from randsvd import SketchConfig, canonical_sines, rsvd, subspace_quality, svd_small, truncate
from randsvd.errors import DimensionError, OrthonormalityError


def random_basis(m, a, seed):
    return np.linalg.qr(np.random.default_rng(seed).standard_normal((m, a)))[0]


def test_identical():
    X = random_basis(10, 4, 0)
    assert np.all(canonical_sines(X, X) <= 1e-10)


def test_orthogonal_lines():
    assert canonical_sines(np.array([[1.0], [0.0]]), np.array([[0.0], [1.0]])) == pytest.approx([1.0])


def test_45_degrees():
    y = np.array([[1.0], [1.0]]) / np.sqrt(2)
    assert canonical_sines(np.array([[1.0], [0.0]]), y) == pytest.approx([1 / np.sqrt(2)], abs=1e-12)


def test_unequal_dimensions():
    # a line inside a plane: one angle, zero
    X = np.eye(3)[:, :1]
    Y = np.eye(3)[:, :2]
    assert canonical_sines(X, Y) == pytest.approx([0.0], abs=1e-15)
    assert canonical_sines(Y, X) == pytest.approx([0.0], abs=1e-15)


def test_requires_orthonormal():
    with pytest.raises(OrthonormalityError):
        canonical_sines(np.ones((3, 1)), np.eye(3)[:, :1])


def test_space_mismatch():
    with pytest.raises(DimensionError):
        canonical_sines(np.eye(3)[:, :1], np.eye(4)[:, :1])


@given(st.integers(2, 12), st.integers(1, 6), st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_symmetry(m, a, seed):
    a = min(a, m)
    X, Y = random_basis(m, a, seed), random_basis(m, a, seed + 1)
    assert np.allclose(canonical_sines(X, Y), canonical_sines(Y, X), atol=1e-10)


@given(st.integers(3, 14), st.integers(1, 5), st.integers(0, 5), st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_cosine_route(m, a, extra, seed):
    a = min(a, m)
    b = min(a + extra, m)
    X, Y = random_basis(m, a, seed), random_basis(m, b, seed + 7)
    s = canonical_sines(X, Y)
    assert s.shape == (min(a, b),)
    assert np.all(np.diff(s) >= 0) and np.all((s >= 0) & (s <= 1))
    cos = np.clip(np.linalg.svd(X.T @ Y, compute_uv=False), 0, 1)
    via_cos = np.sort(np.sqrt(1 - cos ** 2))
    big = s >= 0.1
    assert np.allclose(s[big], via_cos[big], atol=1e-8)


def test_quality_of_oracle_itself(rng):
    A = rng.standard_normal((30, 20))
    o = svd_small(A)
    rep = subspace_quality(o, 6, truncate(o, 6))
    assert np.all(rep.sin_theta <= 1e-10) and np.all(rep.sin_nu <= 1e-10)


def test_quality_needs_k_factors(rng):
    A = rng.standard_normal((10, 8))
    with pytest.raises(DimensionError):
        subspace_quality(A, 5, truncate(svd_small(A), 3))


def test_q0_variants_identical(gap2):
    A, oracle = gap2
    reps = [subspace_quality(oracle, 25, rsvd(A, SketchConfig(25, 5, 0, mode, 17)))
            for mode in ("basic", "power", "power-ortho")]
    for r in reps[1:]:
        assert np.allclose(r.sin_theta, reps[0].sin_theta, atol=1e-9)


def test_power_iteration_shrinks_angles(gap2):
    A, oracle = gap2
    mean = {}
    for q in (0, 2):
        mean[q] = np.mean([subspace_quality(oracle, 25, rsvd(A, SketchConfig(25, 5, q, "power", s))).sin_theta
                           for s in range(30)], axis=0)
    assert np.all(mean[2][:15] < mean[0][:15])


def test_indices_below_gap_captured(gap2):
    A, oracle = gap2
    for q in (1, 2):
        mean = np.mean([subspace_quality(oracle, 25, rsvd(A, SketchConfig(25, 5, q, "power", s))).sin_theta
                        for s in range(30)], axis=0)
        assert np.all(mean[:15] <= 0.5)


def test_truncated_width_option(gap2):
    A, oracle = gap2
    f = rsvd(A, SketchConfig(25, 5, 1, "power", 3))
    full = subspace_quality(oracle, 25, f)
    trunc = subspace_quality(oracle, 25, f, full_width=False)
    # a wider computed basis can only reduce each angle
    assert np.all(full.sin_theta <= trunc.sin_theta + 1e-12)
