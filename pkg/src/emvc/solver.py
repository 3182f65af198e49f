"""Augmented Lagrangian solver for the shared transition matrix.

Given per-view transition matrices ``P_1 .. P_K`` the solver finds a
row-stochastic ``P_hat`` and an error stack ``E = [E_1; ...; E_K]`` with
``P_i = P_hat + E_i`` that minimise::

    ||P_hat||_* + beta * ||E||_{2,1} + lam * ||E||_{G1}

A copy ``Q`` of ``P_hat`` carries the nuclear norm. Each iteration
updates ``P_hat`` (row-wise simplex projection), ``E`` (one reweighted
least-squares step), ``Q`` (singular value thresholding) and finally the
multipliers, growing the penalty ``mu`` geometrically.
"""

import logging
from dataclasses import dataclass, field, replace

import numpy as np

from . import prox
from ._validation import check_transition_stack
from .exceptions import ConfigError, ShapeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EmvcConfig:
    """Hyper-parameters of :func:`solve`.

    ``lam`` weights the group l1 norm, ``beta`` the l2,1 norm.
    """

    lam: float = 1.0
    beta: float = 1.0
    mu0: float = 1e-6
    rho: float = 1.9
    mu_max: float = 1e10
    eps: float = 1e-8
    max_iters: int = 500
    reweight_eps: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.lam < 0 or self.beta < 0:
            raise ConfigError("lam and beta must be non-negative")
        if self.mu0 <= 0:
            raise ConfigError("mu0 must be positive")
        if self.rho <= 1:
            raise ConfigError("rho must exceed 1")
        if self.mu_max < self.mu0:
            raise ConfigError("mu_max must be at least mu0")
        if self.eps <= 0 or self.reweight_eps <= 0:
            raise ConfigError("eps and reweight_eps must be positive")
        if self.max_iters < 1:
            raise ConfigError("max_iters must be >= 1")

    def replace(self, **changes):
        return replace(self, **changes)


@dataclass
class SolverState:
    """Iterates of the solver.

    ``e`` is the (K*N, N) error stack, ``y`` holds the K multipliers of the
    view constraints as a (K, N, N) array and ``z`` the multiplier of
    ``P_hat = Q``.
    """

    p_hat: np.ndarray
    e: np.ndarray
    q: np.ndarray
    z: np.ndarray
    y: np.ndarray
    mu: float
    iter: int = 0
    objective_history: list = field(default_factory=list)
    residual_history: list = field(default_factory=list)
    converged: bool = False

    @property
    def n_views(self):
        return self.y.shape[0]

    @property
    def n_samples(self):
        return self.p_hat.shape[0]

    def error_views(self):
        """The error stack as a (K, N, N) array (a view, not a copy)."""
        return self.e.reshape(self.n_views, self.n_samples, self.n_samples)

    def copy(self):
        return SolverState(
            self.p_hat.copy(), self.e.copy(), self.q.copy(), self.z.copy(),
            self.y.copy(), self.mu, self.iter,
            list(self.objective_history), list(self.residual_history),
            self.converged)


def _as_stack(views):
    return np.stack(check_transition_stack(views))


def objective(p_hat, e, lam, beta):
    """``||P_hat||_* + beta * ||E||_{2,1} + lam * ||E||_{G1}``."""
    p_hat = np.asarray(p_hat, dtype=float)
    e = np.asarray(e, dtype=float)
    n = p_hat.shape[0]
    if e.ndim != 2 or e.shape[1] != n or e.shape[0] % n:
        raise ShapeError(f"error stack of shape {e.shape} does not match "
                         f"P_hat of shape {p_hat.shape}")
    k = e.shape[0] // n
    return (prox.nuclear_norm(p_hat) + beta * prox.l21_norm(e)
            + lam * prox.group_l1_norm(e, k, n))


def update_q(p_hat, z, mu):
    """Nuclear-norm step: ``svt(P_hat + Z / mu, 1 / mu)``."""
    return prox.svt(p_hat + z / mu, 1.0 / mu)


def _e_step(state, P, cfg):
    k, n, _ = P.shape
    mu = state.mu
    B = (P - state.p_hat[None] - state.y / mu).reshape(k * n, n)

    floor = cfg.reweight_eps
    rows = np.maximum(np.linalg.norm(state.e, axis=1), floor)
    segs = np.maximum(prox.segment_norms(state.e, k, n), floor)
    d_rows = 0.5 / rows                       # (K*N,)
    d_segs = np.repeat(0.5 / segs, n, axis=0)  # (K*N, N)
    denom = 1.0 + (cfg.beta / mu) * d_rows[:, None] + (cfg.lam / mu) * d_segs
    return B / denom


def _p_hat_step(state, P):
    k = P.shape[0]
    mu = state.mu
    E = state.error_views()
    C = (state.q - state.z / mu + (P - E - state.y / mu).sum(axis=0)) / (k + 1)
    return prox.project_simplex_rows(C)


def _multiplier_step(state, P, cfg):
    mu = state.mu
    z = state.z + mu * (state.p_hat - state.q)
    y = state.y + mu * (state.p_hat[None] + state.error_views() - P)
    return z, y, min(cfg.rho * mu, cfg.mu_max)


def _residuals(state, P):
    view_res = np.abs(state.p_hat[None] + state.error_views() - P).max()
    return float(view_res), float(np.abs(state.p_hat - state.q).max())


def update_e(state, views, cfg):
    """One reweighted least-squares step for the error stack.

    Column ``l`` solves ``((beta/mu) D + (lam/mu) D_l + I) e_l = b_l`` with
    ``b_l`` the ``l``-th column of ``B = [P_i - P_hat - Y_i / mu]_i``.
    ``D`` holds ``1 / (2 ||row||)`` of the previous stack and ``D_l`` holds
    ``1 / (2 ||segment||)`` of its column segments. Both are diagonal, so
    the solve is entrywise. Norms below ``cfg.reweight_eps`` are floored.
    """
    return _e_step(state, _as_stack(views), cfg)


def update_p_hat(state, views, cfg=None):
    """Average the constraint targets and project every row onto the simplex."""
    return _p_hat_step(state, _as_stack(views))


def update_multipliers(state, views, cfg):
    """Dual ascent on ``Z`` and ``Y_i`` followed by ``mu <- min(rho mu, mu_max)``."""
    return _multiplier_step(state, _as_stack(views), cfg)


def residuals(state, views):
    """Feasibility residuals ``(max_i ||P_hat + E_i - P_i||_inf, ||P_hat - Q||_inf)``."""
    return _residuals(state, _as_stack(views))


def init_state(views, cfg):
    P = _as_stack(views)
    k, n, _ = P.shape
    rng = np.random.default_rng(cfg.seed)
    zeros = np.zeros((n, n))
    return SolverState(
        p_hat=zeros.copy(), e=rng.random((k * n, n)), q=zeros.copy(),
        z=zeros.copy(), y=np.zeros((k, n, n)), mu=cfg.mu0)


def _step(state, P, cfg, track_objective=True):
    state.p_hat = _p_hat_step(state, P)
    state.e = _e_step(state, P, cfg)
    state.q = update_q(state.p_hat, state.z, state.mu)
    state.z, state.y, state.mu = _multiplier_step(state, P, cfg)
    state.iter += 1
    if track_objective:
        state.objective_history.append(
            objective(state.p_hat, state.e, cfg.lam, cfg.beta))
    state.residual_history.append(_residuals(state, P))
    return state


def step(state, views, cfg):
    """Advance ``state`` by one iteration in place and return it."""
    return _step(state, _as_stack(views), cfg)


def solve(views, cfg=None, callback=None, track_objective=True):
    """Recover the shared transition matrix from per-view ones.

    Parameters
    ----------
    views : sequence of ndarray of shape (N, N)
        Row-stochastic transition matrices, one per view.
    cfg : EmvcConfig, optional
    callback : callable, optional
        Called as ``callback(state)`` after every iteration.
    track_objective : bool, default=True
        Record the objective after every iteration. Costs one extra SVD
        per iteration.

    Returns
    -------
    SolverState
        ``converged`` is False when ``max_iters`` ran out before both
        feasibility residuals fell to ``cfg.eps``.
    """
    cfg = cfg or EmvcConfig()
    P = _as_stack(views)
    state = init_state(P, cfg)
    for _ in range(cfg.max_iters):
        _step(state, P, cfg, track_objective)
        if callback is not None:
            callback(state)
        if max(state.residual_history[-1]) <= cfg.eps:
            state.converged = True
            break
    if not state.converged:
        logger.warning("solver stopped after %d iterations, residuals %s",
                       state.iter, state.residual_history[-1])
    return state
