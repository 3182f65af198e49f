"""Reference multi-view methods: best single view, feature concatenation
and kernel addition."""

import numpy as np
from scipy.linalg import eigh

from .exceptions import ConfigError
from .graph import kernel_width, similarity_matrix
from .kmeans import KMeansConfig, kmeans
from .metrics import ClusteringResult, clustering_accuracy


def _cfg(k, kmeans_cfg):
    return (kmeans_cfg or KMeansConfig()).replace(k=k)


def best_single_view(ds, k, kmeans_cfg=None):
    """k-means on each view; keep the view that scores best against labels.

    Returns
    -------
    result : ClusteringResult
    chosen_view : int
    """
    if ds.labels is None:
        raise ConfigError("best single view needs ground-truth labels")
    cfg = _cfg(k, kmeans_cfg)
    best = None
    for v, X in enumerate(ds.views):
        labels, _ = kmeans(X, cfg)
        acc = clustering_accuracy(labels, ds.labels)
        if best is None or acc > best[0]:
            best = (acc, v, labels)
    _, chosen, labels = best
    return ClusteringResult.scored(labels, ds.labels), chosen


def feature_concat(ds, k, kmeans_cfg=None):
    """k-means on the horizontally stacked features of all views."""
    X = np.hstack(ds.views)
    labels, _ = kmeans(X, _cfg(k, kmeans_cfg))
    return ClusteringResult.scored(labels, ds.labels)


def average_kernel(views, sigma_mode="median_squared"):
    """Mean of the per-view Gaussian similarity matrices."""
    kernels = [similarity_matrix(X, kernel_width(X, sigma_mode)) for X in views]
    return sum(kernels) / len(kernels)


def normalized_spectral_labels(S, k, kmeans_cfg=None):
    """Symmetric normalised Laplacian embedding (rows scaled to unit
    length) followed by k-means."""
    d = S.sum(axis=1)
    w = 1.0 / np.sqrt(d)
    A = w[:, None] * S * w[None, :]
    A = (A + A.T) / 2
    n = S.shape[0]
    # largest eigenvectors of A are the smallest of I - A
    _, U = eigh(A, subset_by_index=[n - k, n - 1])
    U = U / np.maximum(np.linalg.norm(U, axis=1, keepdims=True), 1e-300)
    labels, _ = kmeans(U, _cfg(k, kmeans_cfg))
    return labels


def kernel_addition(ds, k, kmeans_cfg=None, sigma_mode="median_squared"):
    """Spectral clustering on the averaged per-view Gaussian kernel."""
    S = average_kernel(ds.views, sigma_mode)
    return ClusteringResult.scored(
        normalized_spectral_labels(S, k, kmeans_cfg), ds.labels)
