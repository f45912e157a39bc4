"""Outer convex loss functions, their minimizer sets, and the scalar
proximity operators used by the ADMM subproblem solver.

Every loss is separable: the vector loss is the mean of a scalar convex
function over the components.
"""

from __future__ import annotations

import enum

import numpy as np


class LossKind(enum.Enum):
    QUADRATIC = "quadratic"
    ABSOLUTE = "absolute"
    HINGE = "hinge"


def outer_value(z: np.ndarray, loss: LossKind) -> float:
    """Mean loss over the components of z.

    quadratic: mean z_i^2; absolute: mean |z_i|; hinge: mean max(1-z_i, 0).
    """
    z = np.asarray(z, dtype=float)
    if z.size == 0:
        raise ValueError("empty residual vector")
    m = z.shape[0]
    if loss is LossKind.QUADRATIC:
        return float(z @ z) / m
    if loss is LossKind.ABSOLUTE:
        return float(np.abs(z).sum()) / m
    if loss is LossKind.HINGE:
        return float(np.maximum(1.0 - z, 0.0).sum()) / m
    raise ValueError(f"unknown loss {loss!r}")


def prox(a, kappa: float, loss: LossKind):
    """Scalar proximity operator argmin_mu kappa*L(mu) + (mu-a)^2/2.

    Absolute loss: soft thresholding. Hinge loss: a shifted clamp toward
    the margin 1. Accepts scalars or arrays elementwise. Boundary ties go
    to the middle branch.
    """
    if kappa <= 0:
        raise ValueError(f"kappa must be positive, got {kappa}")
    if loss is LossKind.ABSOLUTE:
        a_arr = np.asarray(a, dtype=float)
        out = np.sign(a_arr) * np.maximum(np.abs(a_arr) - kappa, 0.0)
    elif loss is LossKind.HINGE:
        a_arr = np.asarray(a, dtype=float)
        out = np.where(a_arr > 1.0, a_arr,
                       np.where(a_arr >= 1.0 - kappa, 1.0, a_arr + kappa))
    else:
        raise ValueError(f"prox not defined for {loss!r} (quadratic subproblems "
                         "use the closed-form regularized least-squares step)")
    return out if out.ndim else float(out)


def scalar_loss(mu, loss: LossKind):
    """The scalar convex function the separable outer loss is built from."""
    mu = np.asarray(mu, dtype=float)
    if loss is LossKind.QUADRATIC:
        out = mu ** 2
    elif loss is LossKind.ABSOLUTE:
        out = np.abs(mu)
    elif loss is LossKind.HINGE:
        out = np.maximum(1.0 - mu, 0.0)
    else:
        raise ValueError(f"unknown loss {loss!r}")
    return out if out.ndim else float(out)


def in_minimizer_set(z: np.ndarray, loss: LossKind, tol: float = 0.0) -> bool:
    """Whether z is (within tol) a global minimizer of the outer loss.

    Quadratic and absolute minimize at z = 0; hinge at every z >= 1
    componentwise.
    """
    z = np.asarray(z, dtype=float)
    if loss is LossKind.HINGE:
        return bool(np.min(z) >= 1.0 - tol)
    return bool(np.max(np.abs(z)) <= tol)
