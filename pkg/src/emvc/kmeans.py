"""Lloyd's k-means with k-means++ seeding and seeded restarts."""

from dataclasses import dataclass

import numpy as np

from ._validation import check_finite
from .exceptions import ConfigError, ShapeError


@dataclass(frozen=True)
class KMeansConfig:
    """Settings for :func:`kmeans`.

    ``restarts`` independent runs are made; run ``r`` draws from the RNG
    stream seeded by ``(seed, r)``.
    """

    k: int = 2
    restarts: int = 20
    max_iters: int = 300
    tol: float = 1e-9
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ConfigError("k must be >= 1")
        if self.restarts < 1:
            raise ConfigError("restarts must be >= 1")
        if self.max_iters < 1:
            raise ConfigError("max_iters must be >= 1")
        if self.tol < 0:
            raise ConfigError("tol must be >= 0")

    def replace(self, **changes):
        fields = {**self.__dict__, **changes}
        return KMeansConfig(**fields)


def _sq_dists(X, centers):
    d = (np.einsum("ij,ij->i", X, X)[:, None]
         - 2.0 * X @ centers.T
         + np.einsum("ij,ij->i", centers, centers)[None, :])
    return np.maximum(d, 0.0)


def _inertia(X, centers, labels):
    diff = X - centers[labels]
    return float(np.einsum("ij,ij->", diff, diff))


def kmeans_plusplus(X, k, rng):
    """k-means++ seeding: D^2-weighted sampling of ``k`` distinct rows."""
    n = X.shape[0]
    centers = np.empty((k, X.shape[1]))
    centers[0] = X[rng.integers(n)]
    closest = _sq_dists(X, centers[:1])[:, 0]
    for c in range(1, k):
        total = closest.sum()
        if total <= 0:
            # fewer distinct points than clusters
            idx = rng.integers(n)
        else:
            idx = rng.choice(n, p=closest / total)
        centers[c] = X[idx]
        closest = np.minimum(closest, _sq_dists(X, centers[c:c + 1])[:, 0])
    return centers


def _means(X, labels, k, fallback):
    centers = fallback.copy()
    counts = np.bincount(labels, minlength=k)
    for c in np.flatnonzero(counts):
        centers[c] = X[labels == c].mean(axis=0)
    return centers, counts


def lloyd(X, centers, max_iters=300, tol=1e-9):
    """Run Lloyd iterations from ``centers``.

    Stops when an assignment step changes no label or no centre moves by
    ``tol`` or more.

    Returns
    -------
    labels : ndarray of int
    centers : ndarray
        Means of the final clusters.
    history : list of float
        Within-cluster sum of squares after each update step.
    """
    k = centers.shape[0]
    labels = np.argmin(_sq_dists(X, centers), axis=1)
    history = []
    for _ in range(max_iters):
        new_centers, counts = _means(X, labels, k, centers)
        empty = np.flatnonzero(counts == 0)
        if empty.size:
            # re-seed each empty cluster with the point farthest from its centre
            cost = ((X - new_centers[labels]) ** 2).sum(axis=1)
            for c, idx in zip(empty, np.argsort(-cost, kind="stable")):
                labels[idx] = c
            new_centers, counts = _means(X, labels, k, new_centers)
        history.append(_inertia(X, new_centers, labels))
        shift = np.sqrt(((new_centers - centers) ** 2).sum(axis=1)).max()
        centers = new_centers
        new_labels = np.argmin(_sq_dists(X, centers), axis=1)
        if np.array_equal(new_labels, labels) or shift < tol:
            break
        labels = new_labels
    return labels, centers, history


def kmeans(X, cfg=None, return_centers=False):
    """Best-of-``restarts`` k-means.

    Parameters
    ----------
    X : array_like of shape (n_samples, n_features)
    cfg : KMeansConfig, optional

    Returns
    -------
    labels : ndarray of shape (n_samples,)
    inertia : float
        Within-cluster sum of squares of the returned labelling.
    """
    cfg = cfg or KMeansConfig()
    X = check_finite(X, "X")
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2:
        raise ShapeError("X must be 2-D")
    n = X.shape[0]
    if cfg.k > n:
        raise ConfigError(f"k={cfg.k} exceeds the number of samples {n}")

    best = None
    for r in range(cfg.restarts):
        rng = np.random.default_rng([cfg.seed, r])
        init = kmeans_plusplus(X, cfg.k, rng)
        labels, centers, _ = lloyd(X, init, cfg.max_iters, cfg.tol)
        inertia = _inertia(X, centers, labels)
        # strict comparison keeps the lowest restart index on ties
        if best is None or inertia < best[0]:
            best = (inertia, labels, centers)
    inertia, labels, centers = best
    if return_centers:
        return labels, inertia, centers
    return labels, inertia
