"""scikit-learn compatible estimators."""

import warnings

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.exceptions import ConvergenceWarning
from sklearn.utils.validation import check_is_fitted

from ._validation import check_view, check_views
from .graph import view_transitions
from .kmeans import KMeansConfig
from .markov_spectral import cluster_markov
from .solver import EmvcConfig, solve


def _kmeans_cfg(est):
    return KMeansConfig(k=est.n_clusters, restarts=est.kmeans_restarts,
                        seed=est.random_state)


class MarkovSpectralClustering(ClusterMixin, BaseEstimator):
    """Spectral clustering of the random walk on a Gaussian similarity graph.

    Parameters
    ----------
    n_clusters : int, default=2
    sigma_mode : {"median_squared", "median_raw"}, default="median_squared"
        How the kernel denominator is derived from the median pairwise
        distance.
    affinity : {"rbf", "precomputed"}, default="rbf"
        With ``"precomputed"``, ``X`` is taken to be a row-stochastic
        transition matrix.
    alpha : float, default=0
        Teleportation weight for the stationary distribution.
    normalize_rows : bool, default=False
    kmeans_restarts : int, default=20
    random_state : int, default=0

    Attributes
    ----------
    transition_matrix_ : ndarray of shape (n_samples, n_samples)
    labels_ : ndarray of shape (n_samples,)
    """

    def __init__(self, n_clusters=2, sigma_mode="median_squared",
                 affinity="rbf", alpha=0.0, normalize_rows=False,
                 kmeans_restarts=20, random_state=0):
        self.n_clusters = n_clusters
        self.sigma_mode = sigma_mode
        self.affinity = affinity
        self.alpha = alpha
        self.normalize_rows = normalize_rows
        self.kmeans_restarts = kmeans_restarts
        self.random_state = random_state

    def fit(self, X, y=None):
        if self.affinity == "precomputed":
            P = np.asarray(X, dtype=float)
        elif self.affinity == "rbf":
            P = view_transitions([check_view(X)], self.sigma_mode)[0]
        else:
            raise ValueError(f"unknown affinity {self.affinity!r}")
        self.transition_matrix_ = P
        self.labels_ = cluster_markov(P, self.n_clusters, _kmeans_cfg(self),
                                      self.alpha, self.normalize_rows)
        return self


class EMVC(ClusterMixin, BaseEstimator):
    """Error-robust multi-view clustering through a shared transition matrix.

    Each view is turned into a random-walk transition matrix. The views are
    decomposed into one low-rank row-stochastic matrix plus per-view error
    matrices penalised by the l2,1 and group l1 norms, and the shared
    matrix is clustered by Markov-chain spectral clustering.

    Parameters
    ----------
    n_clusters : int, default=2
    lam : float, default=1.0
        Weight of the group l1 norm (per-view column segments).
    beta : float, default=1.0
        Weight of the l2,1 norm (rows of the error stack).
    mu0, rho, mu_max : float
        Initial penalty, its growth factor and its cap.
    eps : float, default=1e-8
        Feasibility tolerance.
    max_iters : int, default=500
    reweight_eps : float, default=1e-10
    sigma_mode : {"median_squared", "median_raw"}, default="median_squared"
    affinity : {"rbf", "precomputed"}, default="rbf"
        With ``"precomputed"`` the inputs are already transition matrices.
    alpha : float, default=0
    normalize_rows : bool, default=False
    kmeans_restarts : int, default=20
    track_objective : bool, default=True
    random_state : int, default=0
        Seeds both the random initial error stack and k-means.

    Attributes
    ----------
    transition_matrices_ : list of ndarray
    shared_transition_ : ndarray of shape (n_samples, n_samples)
    error_ : ndarray of shape (n_views * n_samples, n_samples)
    state_ : SolverState
    n_iter_ : int
    converged_ : bool
    objective_history_ : list of float
    labels_ : ndarray of shape (n_samples,)

    Examples
    --------
    >>> from emvc.data import synthetic_two_view
    >>> ds = synthetic_two_view(20, seed=0)
    >>> EMVC(n_clusters=2).fit_predict(ds.views).shape
    (40,)
    """

    def __init__(self, n_clusters=2, lam=1.0, beta=1.0, mu0=1e-6, rho=1.9,
                 mu_max=1e10, eps=1e-8, max_iters=500, reweight_eps=1e-10,
                 sigma_mode="median_squared", affinity="rbf", alpha=0.0,
                 normalize_rows=False, kmeans_restarts=20,
                 track_objective=True, random_state=0):
        self.n_clusters = n_clusters
        self.lam = lam
        self.beta = beta
        self.mu0 = mu0
        self.rho = rho
        self.mu_max = mu_max
        self.eps = eps
        self.max_iters = max_iters
        self.reweight_eps = reweight_eps
        self.sigma_mode = sigma_mode
        self.affinity = affinity
        self.alpha = alpha
        self.normalize_rows = normalize_rows
        self.kmeans_restarts = kmeans_restarts
        self.track_objective = track_objective
        self.random_state = random_state

    def solver_config(self):
        return EmvcConfig(
            lam=self.lam, beta=self.beta, mu0=self.mu0, rho=self.rho,
            mu_max=self.mu_max, eps=self.eps, max_iters=self.max_iters,
            reweight_eps=self.reweight_eps, seed=self.random_state)

    def _transitions(self, Xs):
        if self.affinity == "precomputed":
            return [np.asarray(P, dtype=float) for P in Xs]
        if self.affinity == "rbf":
            return view_transitions(check_views(Xs), self.sigma_mode)
        raise ValueError(f"unknown affinity {self.affinity!r}")

    def fit(self, Xs, y=None):
        """Fit on a list of views.

        Parameters
        ----------
        Xs : list of array_like
            One ``(n_samples, n_features_k)`` matrix per view, or one
            transition matrix per view when ``affinity="precomputed"``.
        y : ignored
        """
        Ps = self._transitions(Xs)
        state = solve(Ps, self.solver_config(),
                      track_objective=self.track_objective)
        if not state.converged:
            warnings.warn(
                f"EMVC solver did not reach eps={self.eps} in "
                f"{self.max_iters} iterations", ConvergenceWarning)
        self.transition_matrices_ = Ps
        self.state_ = state
        self.shared_transition_ = state.p_hat
        self.error_ = state.e
        self.n_iter_ = state.iter
        self.converged_ = state.converged
        self.objective_history_ = state.objective_history
        self.labels_ = cluster_markov(state.p_hat, self.n_clusters,
                                      _kmeans_cfg(self), self.alpha,
                                      self.normalize_rows)
        return self

    def error_views(self):
        """Per-view error matrices as a (n_views, n_samples, n_samples) array."""
        check_is_fitted(self, "state_")
        return self.state_.error_views()
