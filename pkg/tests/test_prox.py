import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from emvc import prox
from emvc.exceptions import NumericalError, ShapeError
from oracles import simplex_qp_bruteforce

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


@pytest.mark.parametrize("x, sigma, expected", [
    (3.0, 1.0, 2.0),
    (-0.5, 1.0, 0.0),
    (-4.0, 1.5, -2.5),
])
def test_shrink_scalar(x, sigma, expected):
    assert prox.shrink(x, sigma) == expected


def test_shrink_is_entrywise():
    out = prox.shrink(np.array([[3.0, -0.5], [-4.0, 0.0]]), 1.0)
    np.testing.assert_array_equal(out, [[2.0, 0.0], [-3.0, 0.0]])


def test_shrink_rejects_negative_sigma():
    with pytest.raises(ValueError):
        prox.shrink(1.0, -1.0)


def test_svt_diagonal():
    np.testing.assert_allclose(prox.svt(np.diag([3.0, 1.0]), 2.0),
                               np.diag([1.0, 0.0]), atol=1e-12)


def test_svt_zero():
    np.testing.assert_array_equal(prox.svt(np.zeros((3, 3)), 0.7),
                                  np.zeros((3, 3)))


def test_svt_diagonal_with_signs():
    M = np.diag([-3.0, 0.5, 2.0])
    np.testing.assert_allclose(prox.svt(M, 1.0), np.diag([-2.0, 0.0, 1.0]),
                               atol=1e-12)


def _svt_objective(Q, M, tau):
    return tau * np.linalg.svd(Q, compute_uv=False).sum() + 0.5 * ((Q - M) ** 2).sum()


def test_svt_local_optimality(rng):
    M = rng.normal(size=(4, 4))
    tau = 0.5
    Q = prox.svt(M, tau)
    base = _svt_objective(Q, M, tau)
    for _ in range(100):
        D = rng.normal(size=(4, 4))
        D *= 1e-3 / np.linalg.norm(D)
        assert base <= _svt_objective(Q + D, M, tau) + 1e-15


def test_svt_singular_values(rng):
    for _ in range(20):
        m, n = rng.integers(1, 21, size=2)
        M = rng.normal(size=(m, n))
        tau = rng.uniform(0.01, 3)
        got = np.linalg.svd(prox.svt(M, tau), compute_uv=False)
        want = np.maximum(np.linalg.svd(M, compute_uv=False) - tau, 0)
        np.testing.assert_allclose(got, want, atol=1e-8)


def test_svt_large_threshold_shortcut():
    M = np.arange(9.0).reshape(3, 3)
    np.testing.assert_array_equal(prox.svt(M, 100.0), np.zeros((3, 3)))


def test_svt_rejects_nonfinite():
    with pytest.raises(NumericalError):
        prox.svt(np.array([[np.nan, 1.0], [0.0, 1.0]]), 1.0)


@pytest.mark.parametrize("c, expected", [
    ([0.5, 0.5], [0.5, 0.5]),
    ([2.0, 0.0], [1.0, 0.0]),
    ([0.6, 0.6], [0.5, 0.5]),
])
def test_project_simplex_examples(c, expected):
    np.testing.assert_allclose(prox.project_simplex(c), expected, atol=1e-15)


def test_project_simplex_matches_qp_oracle(rng):
    for _ in range(50):
        c = rng.normal(size=5) * rng.choice([0.1, 1, 10])
        np.testing.assert_allclose(prox.project_simplex(c),
                                   simplex_qp_bruteforce(c), atol=1e-8)


def test_project_simplex_rows_matches_single(rng):
    C = rng.normal(size=(7, 6))
    rows = prox.project_simplex_rows(C)
    for c, r in zip(C, rows):
        np.testing.assert_array_equal(r, prox.project_simplex(c))


def test_project_simplex_ties():
    out = prox.project_simplex([1.0, 1.0, 1.0, -2.0])
    np.testing.assert_allclose(out, [1 / 3, 1 / 3, 1 / 3, 0.0], atol=1e-15)


def test_project_simplex_rejects_nonfinite():
    with pytest.raises(NumericalError):
        prox.project_simplex([np.inf, 0.0])


@given(arrays(float, st.integers(1, 12), elements=finite))
def test_project_simplex_feasible(c):
    p = prox.project_simplex(c)
    assert np.all(p >= 0)
    assert abs(p.sum() - 1) <= 1e-9


@given(arrays(float, st.integers(1, 12), elements=finite))
def test_project_simplex_idempotent(c):
    p = prox.project_simplex(c)
    np.testing.assert_allclose(prox.project_simplex(p), p, atol=1e-12)


def test_group_l1_examples():
    assert prox.group_l1_norm(np.zeros((4, 2)), 2, 2) == 0
    E = np.zeros((3, 3))
    E[1, 2] = 3.0
    assert prox.group_l1_norm(E, 1, 3) == 3.0
    E = np.zeros((4, 2))
    E[0, 0], E[1, 0] = 3.0, 4.0
    assert prox.group_l1_norm(E, 2, 2) == 5.0


def test_group_l1_segments(rng):
    K, N = 3, 4
    E = rng.normal(size=(K * N, N))
    want = sum(np.linalg.norm(E[j * N:(j + 1) * N, i])
               for i in range(N) for j in range(K))
    assert prox.group_l1_norm(E, K, N) == pytest.approx(want, rel=1e-14)


def test_group_l1_shape_error():
    with pytest.raises(ShapeError):
        prox.group_l1_norm(np.zeros((5, 2)), 2, 2)


def test_l21_examples():
    assert prox.l21_norm(np.eye(2)) == 2
    assert prox.l21_norm(np.zeros((3, 2))) == 0
    assert prox.l21_norm(np.array([[3.0, 4.0], [0.0, 0.0]])) == 5


@settings(max_examples=50)
@given(st.integers(1, 3), st.integers(1, 5),
       st.floats(-100, 100).filter(lambda a: a == 0 or abs(a) > 1e-100),
       st.integers(0, 2**31))
def test_norms_absolutely_homogeneous(K, N, alpha, seed):
    E = np.random.default_rng(seed).normal(size=(K * N, N))
    for f in (prox.l21_norm, lambda A: prox.group_l1_norm(A, K, N)):
        assert f(alpha * E) == pytest.approx(abs(alpha) * f(E), rel=1e-10,
                                             abs=1e-300)
