"""Input validation helpers."""

import numpy as np

from .exceptions import NumericalError, ShapeError

# Row sums of a transition matrix may drift this far from one.
STOCHASTIC_ATOL = 1e-9


def check_finite(a, name="input"):
    a = np.asarray(a, dtype=float)
    if not np.all(np.isfinite(a)):
        raise NumericalError(f"{name} contains non-finite values")
    return a


def check_square(a, name="input"):
    a = check_finite(a, name)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"{name} must be a square matrix, got shape {a.shape}")
    return a


def check_view(x, name="view"):
    """Validate one sample-by-feature matrix (N >= 2, finite)."""
    x = check_finite(x, name)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise ShapeError(f"{name} must be 2-D, got {x.ndim}-D")
    if x.shape[0] < 2:
        raise ShapeError(f"{name} needs at least 2 samples, got {x.shape[0]}")
    return x


def check_views(views):
    """Validate a list of views sharing the same number of rows."""
    if isinstance(views, np.ndarray) and views.ndim == 2:
        views = [views]
    views = [check_view(v, f"view {k}") for k, v in enumerate(views)]
    if not views:
        raise ShapeError("at least one view is required")
    n = views[0].shape[0]
    for k, v in enumerate(views):
        if v.shape[0] != n:
            raise ShapeError(
                f"view {k} has {v.shape[0]} samples, view 0 has {n}")
    return views


def check_transition_matrix(p, name="P", atol=STOCHASTIC_ATOL):
    p = check_square(p, name)
    if np.any(p < 0):
        raise NumericalError(f"{name} has negative entries")
    if not np.allclose(p.sum(axis=1), 1.0, rtol=0, atol=atol):
        raise NumericalError(f"rows of {name} do not sum to one")
    return p


def check_transition_stack(ps, atol=STOCHASTIC_ATOL):
    if isinstance(ps, np.ndarray) and ps.ndim == 2:
        ps = [ps]
    ps = [check_transition_matrix(p, f"P[{k}]", atol) for k, p in enumerate(ps)]
    if not ps:
        raise ShapeError("at least one transition matrix is required")
    n = ps[0].shape[0]
    if any(p.shape[0] != n for p in ps):
        raise ShapeError("transition matrices must share the same size")
    return ps


def check_labels(labels, truth):
    labels = np.asarray(labels).ravel()
    truth = np.asarray(truth).ravel()
    if labels.shape != truth.shape:
        raise ShapeError(
            f"label vectors differ in length: {labels.size} vs {truth.size}")
    return labels, truth
