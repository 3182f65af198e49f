"""Spectral clustering of a Markov chain.

The chain's stationary distribution ``pi`` weights a symmetrised
Laplacian ``L = D - (D P + P^T D) / 2`` with ``D = diag(pi)``; the
generalised eigenvectors of ``(L, D)`` with the smallest eigenvalues
form the embedding that k-means clusters.
"""

from typing import NamedTuple

import numpy as np
from scipy.linalg import eigh

from ._validation import check_square, check_transition_matrix
from .exceptions import ConvergenceError, DegenerateDistributionError
from .kmeans import KMeansConfig, kmeans


class SpectralEmbedding(NamedTuple):
    vectors: np.ndarray
    values: np.ndarray


def teleport(P, alpha):
    """Mix ``P`` with the uniform chain: ``(1 - alpha) P + alpha / N``."""
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must lie in [0, 1]")
    if alpha == 0:
        return P
    return (1.0 - alpha) * P + alpha / P.shape[0]


def stationary_distribution(P, alpha=0.0, tol=1e-10, max_iters=10000):
    """Left Perron vector of a row-stochastic matrix by power iteration.

    Iterates ``pi <- pi P`` from the uniform distribution until the l1
    change drops to ``tol``.

    Parameters
    ----------
    P : ndarray of shape (N, N)
        Row-stochastic transition matrix.
    alpha : float, default=0
        Teleportation weight; any ``alpha > 0`` makes the chain
        irreducible and aperiodic.
    tol : float
    max_iters : int

    Returns
    -------
    ndarray of shape (N,)

    Raises
    ------
    ConvergenceError
        When ``max_iters`` is exhausted; ``residual`` holds the last change.
    """
    P = teleport(check_transition_matrix(P, atol=1e-8), alpha)
    n = P.shape[0]
    pi = np.full(n, 1.0 / n)
    residual = np.inf
    for _ in range(max_iters):
        new = pi @ P
        new /= new.sum()
        residual = float(np.abs(new - pi).sum())
        pi = new
        if residual <= tol:
            return np.maximum(pi, 0.0)
    raise ConvergenceError(
        f"power iteration did not converge in {max_iters} iterations "
        f"(residual {residual:.3e})", residual=residual)


def markov_laplacian(P, pi):
    """``diag(pi) - (diag(pi) P + P^T diag(pi)) / 2``."""
    P = check_square(P, "P")
    pi = np.asarray(pi, dtype=float)
    DP = pi[:, None] * P
    L = -(DP + DP.T) / 2.0
    L[np.diag_indices_from(L)] += pi
    return L


def spectral_embed(L, dhat, R):
    """Generalised eigenvectors of ``L u = lambda D u`` for the R smallest lambda.

    ``dhat`` may be the diagonal of ``D`` or ``D`` itself. The problem is
    whitened to ``D^{-1/2} L D^{-1/2}``, solved symmetrically and mapped
    back, so the columns are ``D``-orthonormal. Each column's sign is
    fixed so its largest-magnitude entry is positive.
    """
    L = check_square(L, "L")
    dhat = np.asarray(dhat, dtype=float)
    if dhat.ndim == 2:
        dhat = np.diag(dhat)
    n = L.shape[0]
    if dhat.shape != (n,):
        raise ValueError("dhat must have one entry per row of L")
    if not 1 <= R <= n:
        raise ValueError(f"R must lie in [1, {n}], got {R}")
    if np.any(~(dhat > 0)):
        raise DegenerateDistributionError(
            "degree matrix has zero or negative diagonal entries")

    w = 1.0 / np.sqrt(dhat)
    M = w[:, None] * L * w[None, :]
    M = (M + M.T) / 2.0
    values, V = eigh(M, subset_by_index=[0, R - 1])
    U = w[:, None] * V
    pivot = np.argmax(np.abs(U), axis=0)
    signs = np.sign(U[pivot, np.arange(R)])
    signs[signs == 0] = 1.0
    return SpectralEmbedding(U * signs, values)


def embed_markov(P, R, alpha=0.0):
    P = check_transition_matrix(P, atol=1e-8)
    pi = stationary_distribution(P, alpha=alpha)
    L = markov_laplacian(teleport(P, alpha), pi)
    return spectral_embed(L, pi, R)


def cluster_markov(P, R, kmeans_cfg=None, alpha=0.0, normalize_rows=False):
    """Cluster the states of a Markov chain into ``R`` groups.

    Parameters
    ----------
    P : ndarray of shape (N, N)
        Row-stochastic transition matrix.
    R : int
        Number of clusters and of eigenvectors.
    kmeans_cfg : KMeansConfig, optional
        ``k`` is overridden by ``R``.
    alpha : float, default=0
        Teleportation weight used for the stationary distribution.
    normalize_rows : bool, default=False
        Scale embedding rows to unit length before k-means.

    Returns
    -------
    ndarray of shape (N,)
        Labels in ``0..R-1``.
    """
    if R < 2:
        raise ValueError("R must be at least 2")
    cfg = (kmeans_cfg or KMeansConfig()).replace(k=R)
    U = embed_markov(P, R, alpha).vectors
    if normalize_rows:
        norms = np.linalg.norm(U, axis=1, keepdims=True)
        U = U / np.where(norms > 0, norms, 1.0)
    labels, _ = kmeans(U, cfg)
    return labels
