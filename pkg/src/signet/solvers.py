"""Outer training loops: the linearized proximal algorithm (LPA), its
globalized variant with a backtracking line search (GLPA), and full-batch
first-order baselines (SGDM, RMSProp, Adam) for comparison.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .losses import LossKind, outer_value
from .model import NetworkShape, ResidualEval, inner_eval
from .subsolvers import AdmmConfig, admm_solve, lm_step, subproblem_model_value


@dataclass
class SolverConfig:
    t: float = 1e5
    step_tol: float = 1e-2
    max_outer: int = 500
    c: float = 1e-3
    tau: float = 0.5
    max_backtracks: int = 10
    admm: AdmmConfig = field(default_factory=AdmmConfig)

    def validate(self):
        if self.t <= 0 or not (0 < self.c < 1) or not (0 < self.tau < 1):
            raise ValueError(f"invalid solver config {self}")
        if self.step_tol < 0 or self.max_outer < 1 or self.max_backtracks < 1:
            raise ValueError(f"invalid solver config {self}")
        self.admm.validate()


@dataclass
class IterationRecord:
    k: int
    objective: float
    step_norm: float
    eta: float
    admm_iters: int
    elapsed: float
    accepted: bool = True   # line-search rule satisfied (always True for LPA)


@dataclass
class FitReport:
    theta_star: np.ndarray
    trace: list[IterationRecord]
    converged: bool
    stop_reason: str        # "step_tol" or "max_outer"
    final_objective: float


def _solve_subproblem(ev: ResidualEval, loss: LossKind, cfg: SolverConfig):
    if loss is LossKind.QUADRATIC:
        return lm_step(ev, cfg.t, ev.m), 0
    dtheta, tr = admm_solve(ev, cfg.t, ev.m, loss, cfg.admm)
    return dtheta, tr.iterations


def backtrack(theta_k, dtheta_k, ev_k: ResidualEval, loss: LossKind,
              cfg: SolverConfig, shape: NetworkShape, inputs, targets):
    """Find the largest eta in {1, tau, tau^2, ...} satisfying the
    sufficient-decrease rule

        outer(F(theta + eta*d)) - outer(F(theta))
            <= c * eta * (model(d) - outer(F(theta))),

    where model(d) is the subproblem objective at d. Returns
    (eta, trial_count, accepted); if no trial satisfies the rule the
    smallest trial eta is returned with accepted=False.
    """
    obj_k = outer_value(ev_k.F, loss)
    predicted = subproblem_model_value(ev_k, dtheta_k, cfg.t, ev_k.m, loss) - obj_k
    eta = 1.0
    for trial in range(1, cfg.max_backtracks + 1):
        ev_trial = inner_eval(theta_k + eta * dtheta_k, shape, inputs, targets, loss)
        if outer_value(ev_trial.F, loss) - obj_k <= cfg.c * eta * predicted:
            return eta, trial, True
        if trial < cfg.max_backtracks:
            eta *= cfg.tau
    return eta, cfg.max_backtracks, False


def _fit(inputs, targets, shape: NetworkShape, loss: LossKind, cfg: SolverConfig,
         theta0: np.ndarray, line_search: bool) -> FitReport:
    cfg.validate()
    theta0 = np.asarray(theta0, dtype=float)
    if theta0.shape != (shape.n,):
        raise ValueError(f"theta0 has shape {theta0.shape}, expected ({shape.n},)")
    inputs = np.asarray(inputs, dtype=float)
    targets = np.asarray(targets, dtype=float)

    theta = theta0.copy()
    trace: list[IterationRecord] = []
    start = time.perf_counter()
    converged = False
    stop_reason = "max_outer"
    for k in range(cfg.max_outer):
        ev = inner_eval(theta, shape, inputs, targets, loss)
        obj = outer_value(ev.F, loss)
        if not np.isfinite(obj):
            raise FloatingPointError(f"non-finite objective at iteration {k}")
        dtheta, admm_iters = _solve_subproblem(ev, loss, cfg)
        step_norm = float(np.linalg.norm(dtheta))
        if step_norm < cfg.step_tol:
            trace.append(IterationRecord(k, obj, step_norm, 1.0, admm_iters,
                                         time.perf_counter() - start))
            converged = True
            stop_reason = "step_tol"
            break
        if line_search:
            eta, _, accepted = backtrack(theta, dtheta, ev, loss, cfg,
                                         shape, inputs, targets)
        else:
            eta, accepted = 1.0, True
        theta = theta + eta * dtheta
        trace.append(IterationRecord(k, obj, step_norm, eta, admm_iters,
                                     time.perf_counter() - start, accepted))
    final_objective = outer_value(
        inner_eval(theta, shape, inputs, targets, loss).F, loss)
    return FitReport(theta_star=theta, trace=trace, converged=converged,
                     stop_reason=stop_reason, final_objective=final_objective)


def lpa_fit(inputs, targets, shape, loss, cfg: SolverConfig, theta0) -> FitReport:
    """Unit-step linearized proximal iteration; stops when the step norm
    falls below step_tol or at the iteration cap."""
    return _fit(inputs, targets, shape, loss, cfg, theta0, line_search=False)


def glpa_fit(inputs, targets, shape, loss, cfg: SolverConfig, theta0) -> FitReport:
    """LPA with backtracking: theta <- theta + eta*dtheta, eta from the
    sufficient-decrease rule, so accepted steps never increase the loss."""
    return _fit(inputs, targets, shape, loss, cfg, theta0, line_search=True)


def _objective_gradient(ev: ResidualEval, loss: LossKind) -> np.ndarray:
    """Full-batch (sub)gradient of the training objective at the residuals."""
    m = ev.m
    if loss is LossKind.QUADRATIC:
        gz = 2.0 * ev.F / m
    elif loss is LossKind.ABSOLUTE:
        gz = np.sign(ev.F) / m
    elif loss is LossKind.HINGE:
        gz = -(ev.F < 1.0).astype(float) / m
    else:
        raise ValueError(f"unknown loss {loss!r}")
    return ev.J.T @ gz


def baseline_fit(inputs, targets, shape: NetworkShape, loss: LossKind,
                 optimizer: str, theta0, lr: float = 1e-3,
                 momentum: float = 0.9, iters: int = 1000) -> FitReport:
    """Full-batch SGDM / RMSProp / Adam on the training objective, using the
    analytic (sub)gradient. Deterministic: no minibatch sampling."""
    if lr <= 0 or iters < 1:
        raise ValueError(f"invalid hyperparameters lr={lr}, iters={iters}")
    optimizer = optimizer.lower()
    if optimizer not in ("sgdm", "rmsprop", "adam"):
        raise ValueError(f"unknown optimizer {optimizer!r}")
    inputs = np.asarray(inputs, dtype=float)
    targets = np.asarray(targets, dtype=float)
    theta = np.asarray(theta0, dtype=float).copy()
    if theta.shape != (shape.n,):
        raise ValueError(f"theta0 has shape {theta.shape}, expected ({shape.n},)")

    vel = np.zeros_like(theta)
    sq = np.zeros_like(theta)
    mom1 = np.zeros_like(theta)
    eps = 1e-8
    trace: list[IterationRecord] = []
    start = time.perf_counter()
    for k in range(iters):
        ev = inner_eval(theta, shape, inputs, targets, loss)
        obj = outer_value(ev.F, loss)
        g = _objective_gradient(ev, loss)
        if optimizer == "sgdm":
            vel = momentum * vel + g
            step = -lr * vel
        elif optimizer == "rmsprop":
            # square-average smoothing fixed at 0.99; `momentum` drives the
            # heavy-ball buffer on the preconditioned gradient
            sq = 0.99 * sq + 0.01 * g * g
            vel = momentum * vel + g / (np.sqrt(sq) + eps)
            step = -lr * vel
        else:  # adam
            mom1 = 0.9 * mom1 + 0.1 * g
            sq = 0.999 * sq + 0.001 * g * g
            mhat = mom1 / (1.0 - 0.9 ** (k + 1))
            vhat = sq / (1.0 - 0.999 ** (k + 1))
            step = -lr * mhat / (np.sqrt(vhat) + eps)
        theta = theta + step
        trace.append(IterationRecord(k, obj, float(np.linalg.norm(step)), 1.0, 0,
                                     time.perf_counter() - start))
    final_objective = outer_value(
        inner_eval(theta, shape, inputs, targets, loss).F, loss)
    return FitReport(theta_star=theta, trace=trace, converged=False,
                     stop_reason="max_outer", final_objective=final_objective)
