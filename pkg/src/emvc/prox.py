"""Proximal operators, the simplex projection and the structured norms.

Every function here is pure and rejects non-finite input with
:class:`~emvc.exceptions.NumericalError`.
"""

import numpy as np

from ._validation import check_finite
from .exceptions import NumericalError, ShapeError


def shrink(x, sigma):
    """Soft-thresholding ``max(x - sigma, 0) + min(x + sigma, 0)``.

    Works on scalars and arrays (entrywise).
    """
    if sigma < 0:
        raise ValueError("sigma must be non-negative")
    x = np.asarray(x, dtype=float)
    out = np.maximum(x - sigma, 0.0) + np.minimum(x + sigma, 0.0)
    return float(out) if out.ndim == 0 else out


def svt(M, tau):
    """Singular value thresholding.

    Returns the minimiser of ``tau * ||Q||_* + 0.5 * ||Q - M||_F^2``,
    i.e. ``U shrink(S, tau) V^T`` for the SVD ``M = U S V^T``.

    Parameters
    ----------
    M : ndarray of shape (m, n)
    tau : float
        Threshold, must be positive.

    Returns
    -------
    ndarray of shape (m, n)
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    M = check_finite(M, "M")
    # sigma_max <= sqrt(||M||_1 ||M||_inf): skip the SVD when all of them vanish
    if M.size == 0 or np.sqrt(np.abs(M).sum(axis=0).max()
                              * np.abs(M).sum(axis=1).max()) <= tau:
        return np.zeros_like(M)
    try:
        U, s, Vt = np.linalg.svd(M, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD failed: {exc}") from exc
    s = np.maximum(s - tau, 0.0)
    r = np.count_nonzero(s)
    return (U[:, :r] * s[:r]) @ Vt[:r]


def nuclear_norm(M):
    M = check_finite(M, "M")
    return float(np.linalg.svd(M, compute_uv=False).sum())


def project_simplex(c):
    """Euclidean projection of a vector onto the probability simplex.

    Sort-and-threshold: with ``u`` sorted in descending order, take the
    largest ``j`` such that ``1 - sum_{r<=j}(u_r - u_j) >= 0``, subtract
    ``(sum_{r<=j} u_r - 1) / j`` from every entry and clamp at zero.

    Parameters
    ----------
    c : array_like of shape (n,)

    Returns
    -------
    ndarray of shape (n,)
        Non-negative, summing to one.
    """
    c = check_finite(c, "c")
    if c.ndim != 1:
        raise ShapeError("project_simplex expects a 1-D vector")
    return project_simplex_rows(c[None, :])[0]


def project_simplex_rows(C):
    """Project every row of ``C`` onto the probability simplex."""
    C = check_finite(C, "C")
    if C.ndim != 2:
        raise ShapeError("project_simplex_rows expects a 2-D array")
    n = C.shape[1]
    if n == 0:
        raise ShapeError("cannot project an empty vector onto the simplex")
    u = -np.sort(-C, axis=1)
    css = np.cumsum(u, axis=1)
    j = np.arange(1, n + 1)
    # 1 - sum_{r<=j}(u_r - u_j) >= 0  <=>  1 - css_j + j*u_j >= 0
    feasible = 1.0 - css + j * u >= 0
    # feasibility is monotone in j and always holds for j = 1
    jhat = n - np.argmax(feasible[:, ::-1], axis=1)
    sigma = (css[np.arange(C.shape[0]), jhat - 1] - 1.0) / jhat
    return np.maximum(C - sigma[:, None], 0.0)


def _check_stack(E, K, N):
    E = check_finite(E, "E")
    if E.ndim != 2 or E.shape != (K * N, N):
        raise ShapeError(f"error stack must have shape ({K * N}, {N}), "
                         f"got {E.shape}")
    return E


def segment_norms(E, K, N):
    """Norms of the per-view column segments, shape (K, N).

    Entry ``[j, i]`` is the l2 norm of rows ``j*N:(j+1)*N`` of column ``i``.
    """
    E = _check_stack(E, K, N)
    return np.sqrt(np.einsum("kni,kni->ki", E.reshape(K, N, N),
                             E.reshape(K, N, N)))


def group_l1_norm(E, K, N):
    """Sum over columns and views of the l2 norm of each column segment."""
    return float(segment_norms(E, K, N).sum())


def l21_norm(E):
    """Sum of the l2 norms of the rows of ``E``."""
    E = check_finite(E, "E")
    if E.ndim != 2:
        raise ShapeError("l21_norm expects a 2-D array")
    return float(np.linalg.norm(E, axis=1).sum())
