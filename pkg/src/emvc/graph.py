"""Gaussian similarity graphs and their random-walk transition matrices."""

import numpy as np
from scipy.spatial.distance import pdist, squareform

from ._validation import check_view
from .exceptions import DegenerateScaleError

SIGMA_MODES = ("median_squared", "median_raw")


def median_sigma(X):
    """Median of the pairwise Euclidean distances between distinct rows.

    Raises
    ------
    DegenerateScaleError
        If the median distance is zero.
    """
    X = check_view(X)
    med = float(np.median(pdist(X)))
    if med <= 0:
        raise DegenerateScaleError(
            "median pairwise distance is zero; cannot set kernel bandwidth")
    return med


def kernel_width(X, sigma_mode="median_squared"):
    """Denominator of the Gaussian kernel for view ``X``.

    ``median_squared`` squares the median distance (the usual heuristic);
    ``median_raw`` uses the median distance itself.
    """
    med = median_sigma(X)
    if sigma_mode == "median_squared":
        return med ** 2
    if sigma_mode == "median_raw":
        return med
    raise ValueError(f"sigma_mode must be one of {SIGMA_MODES}, "
                     f"got {sigma_mode!r}")


def similarity_matrix(X, sigma2):
    """Dense Gaussian kernel ``exp(-||x_i - x_j||^2 / sigma2)``."""
    if sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    X = check_view(X)
    S = np.exp(-squareform(pdist(X, "sqeuclidean")) / sigma2)
    np.fill_diagonal(S, 1.0)
    return S


def transition_from_similarity(S):
    d = S.sum(axis=1)
    assert np.all(d > 0), "zero degree in similarity graph"
    return S / d[:, None]


def transition_matrix(X, sigma2):
    """Row-normalised Gaussian kernel ``D^{-1} S``."""
    return transition_from_similarity(similarity_matrix(X, sigma2))


def view_transitions(views, sigma_mode="median_squared"):
    """One transition matrix per view, each with its own bandwidth."""
    return [transition_matrix(X, kernel_width(X, sigma_mode)) for X in views]
