import numpy as np
import pytest
from scipy.linalg import eigh

from conftest import random_stochastic
from emvc import markov_spectral as ms
from emvc.data import synthetic_two_view
from emvc.exceptions import ConvergenceError, DegenerateDistributionError
from emvc.graph import view_transitions
from emvc.metrics import clustering_accuracy


def block_chain(sizes):
    n = sum(sizes)
    P = np.zeros((n, n))
    start = 0
    for s in sizes:
        P[start:start + s, start:start + s] = 1.0 / s
        start += s
    return P


def test_stationary_doubly_stochastic(rng):
    # a convex combination of permutations is doubly stochastic
    n = 6
    P = sum(w * np.eye(n)[rng.permutation(n)] for w in [0.2, 0.3, 0.5])
    np.testing.assert_allclose(ms.stationary_distribution(P), 1 / n, atol=1e-12)


def test_stationary_identity_with_teleport():
    pi = ms.stationary_distribution(np.eye(2), alpha=0.01)
    np.testing.assert_allclose(pi, [0.5, 0.5], atol=1e-12)


def test_stationary_matches_eigensolver(rng):
    P = random_stochastic(rng, 5)
    w, V = np.linalg.eig(P.T)
    v = np.real(V[:, np.argmin(np.abs(w - 1))])
    v /= v.sum()
    pi = ms.stationary_distribution(P)
    np.testing.assert_allclose(pi, v, atol=1e-8)
    assert np.abs(pi @ P - pi).max() <= 1e-6
    assert abs(pi.sum() - 1) <= 1e-8


def test_stationary_nonconvergence(rng):
    P = random_stochastic(rng, 4)
    with pytest.raises(ConvergenceError) as info:
        ms.stationary_distribution(P, max_iters=2, tol=0.0)
    assert info.value.residual > 0


def test_laplacian_uniform():
    P = np.full((2, 2), 0.5)
    L = ms.markov_laplacian(P, [0.5, 0.5])
    np.testing.assert_allclose(L, [[0.25, -0.25], [-0.25, 0.25]])


def test_laplacian_symmetric_zero_rows(rng):
    for n in (3, 10, 25):
        P = random_stochastic(rng, n)
        L = ms.markov_laplacian(P, ms.stationary_distribution(P))
        np.testing.assert_allclose(L, L.T, atol=1e-12)
        np.testing.assert_allclose(L @ np.ones(n), 0, atol=1e-10)


def test_embed_disconnected_blocks():
    P = block_chain([3, 4])
    pi = ms.stationary_distribution(P)
    emb = ms.spectral_embed(ms.markov_laplacian(P, pi), pi, 2)
    np.testing.assert_allclose(emb.values, 0, atol=1e-12)
    U = emb.vectors
    for block in (slice(0, 3), slice(3, 7)):
        np.testing.assert_allclose(U[block], U[block][:1].repeat(
            U[block].shape[0], axis=0), atol=1e-10)
    assert not np.allclose(U[0], U[3])


def test_embed_full_basis_residual(rng):
    P = random_stochastic(rng, 8)
    pi = ms.stationary_distribution(P)
    L = ms.markov_laplacian(P, pi)
    emb = ms.spectral_embed(L, np.diag(pi), 8)
    for lam, u in zip(emb.values, emb.vectors.T):
        assert np.abs(L @ u - lam * pi * u).max() <= 1e-8


def test_embed_matches_generalized_eigensolver(rng):
    n = 9
    A = rng.normal(size=(n, n))
    L = A + A.T
    d = rng.uniform(0.1, 2.0, n)
    emb = ms.spectral_embed(L, d, 4)
    want = eigh(L, np.diag(d), eigvals_only=True)[:4]
    np.testing.assert_allclose(emb.values, want, atol=1e-8)


def test_embed_sign_convention(rng):
    P = random_stochastic(rng, 6)
    pi = ms.stationary_distribution(P)
    U = ms.spectral_embed(ms.markov_laplacian(P, pi), pi, 3).vectors
    pivot = np.argmax(np.abs(U), axis=0)
    assert np.all(U[pivot, np.arange(3)] > 0)


def test_embed_rejects_bad_degree():
    with pytest.raises(DegenerateDistributionError):
        ms.spectral_embed(np.eye(2), [1.0, 0.0], 1)


def test_cluster_blocks():
    labels = ms.cluster_markov(block_chain([4, 5]), 2)
    assert clustering_accuracy(labels, [0] * 4 + [1] * 5) == 1.0


def test_cluster_duplicated_pairs():
    X = np.array([[0.0, 0.0], [0.0, 0.0], [3.0, 3.0], [3.0, 3.0]])
    P = view_transitions([X])[0]
    labels = ms.cluster_markov(P, 2)
    assert labels[0] == labels[1] and labels[2] == labels[3]
    assert labels[0] != labels[2]


def test_cluster_single_views_beat_chance():
    ds = synthetic_two_view(100, seed=0)
    for P in view_transitions(ds.views):
        assert clustering_accuracy(ms.cluster_markov(P, 2), ds.labels) > 0.5


def test_cluster_permutation_invariant(rng):
    ds = synthetic_two_view(30, seed=4)
    P = view_transitions(ds.views)[1]
    perm = rng.permutation(P.shape[0])
    a = ms.cluster_markov(P, 2)
    b = ms.cluster_markov(P[np.ix_(perm, perm)], 2)
    assert clustering_accuracy(b, a[perm]) == 1.0


def test_cluster_requires_two():
    with pytest.raises(ValueError):
        ms.cluster_markov(np.full((3, 3), 1 / 3), 1)
