"""Three-layer sigmoid network: forward map, analytic gradient, and the
per-sample residual map with its Jacobian.

Parameter layout is fixed as [w (q) | v (q*d, neuron-major) | u (q) | w0],
so a parameter vector is a flat float array of length (d+2)*q + 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .losses import LossKind


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class NetworkShape:
    """Dimensions of the network: d inputs, q hidden neurons."""

    d: int
    q: int

    def __post_init__(self):
        if self.d < 1 or self.q < 1:
            raise DimensionError(f"d and q must be >= 1, got d={self.d}, q={self.q}")

    @property
    def n(self) -> int:
        return (self.d + 2) * self.q + 1


@dataclass(frozen=True)
class ResidualEval:
    """Residual vector F (length m) and its Jacobian J (m x n)."""

    F: np.ndarray
    J: np.ndarray

    def __post_init__(self):
        if self.F.ndim != 1 or self.J.ndim != 2 or self.J.shape[0] != self.F.shape[0]:
            raise DimensionError(
                f"inconsistent residual shapes F={self.F.shape}, J={self.J.shape}"
            )
        if not (np.all(np.isfinite(self.F)) and np.all(np.isfinite(self.J))):
            raise FloatingPointError("non-finite entries in residual evaluation")

    @property
    def m(self) -> int:
        return self.F.shape[0]


def sigmoid(a):
    """Logistic function 1/(1+exp(-a)), overflow-safe for large |a|."""
    a = np.asarray(a, dtype=float)
    out = np.empty_like(a)
    pos = a >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-a[pos]))
    ea = np.exp(a[~pos])
    out[~pos] = ea / (1.0 + ea)
    return out if out.ndim else float(out)


def split_params(theta: np.ndarray, shape: NetworkShape):
    """Split a flat parameter vector into (w, V, u, w0) with V of shape (q, d)."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (shape.n,):
        raise DimensionError(f"theta has length {theta.shape}, expected ({shape.n},)")
    q, d = shape.q, shape.d
    w = theta[:q]
    V = theta[q:q + q * d].reshape(q, d)
    u = theta[q + q * d:q + q * d + q]
    w0 = theta[-1]
    return w, V, u, w0


def pack_params(w, V, u, w0) -> np.ndarray:
    return np.concatenate([np.ravel(w), np.ravel(V), np.ravel(u), [w0]])


def init_params(shape: NetworkShape, kind: str = "uniform", seed: int = 0,
                scale: float = 0.5) -> np.ndarray:
    """Starting point: 'zero' or seeded 'uniform' entries in [-scale, scale]."""
    if kind == "zero":
        return np.zeros(shape.n)
    if kind == "uniform":
        rng = np.random.default_rng(seed)
        return rng.uniform(-scale, scale, size=shape.n)
    if kind == "wide":
        # small output weights, spread-out hidden-layer weights; raises the
        # numerical rank of the Jacobian at the starting point
        rng = np.random.default_rng(seed)
        theta = rng.uniform(-scale, scale, size=shape.n)
        theta[shape.q:-1] = rng.uniform(-10 * scale, 10 * scale,
                                        size=shape.n - shape.q - 1)
        return theta
    raise ValueError(f"unknown init kind {kind!r}")


def _hidden(theta, shape, X):
    """Pre-activations A (m x q) and activations S = sigmoid(A)."""
    w, V, u, w0 = split_params(theta, shape)
    A = X @ V.T + u
    return w, w0, A, sigmoid(A)


def forward(theta: np.ndarray, shape: NetworkShape, x: np.ndarray) -> float:
    """Network output sum_i w_i * sigmoid(v_i . x + u_i) + w0 for one input."""
    x = np.asarray(x, dtype=float)
    if x.shape != (shape.d,):
        raise DimensionError(f"x has shape {x.shape}, expected ({shape.d},)")
    return float(forward_batch(theta, shape, x[None, :])[0])


def forward_batch(theta: np.ndarray, shape: NetworkShape, X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != shape.d:
        raise DimensionError(f"inputs have shape {X.shape}, expected (m, {shape.d})")
    w, w0, _, S = _hidden(theta, shape, X)
    return S @ w + w0


def grad_forward(theta: np.ndarray, shape: NetworkShape, x: np.ndarray) -> np.ndarray:
    """Gradient of forward w.r.t. theta, packed in parameter layout order."""
    x = np.asarray(x, dtype=float)
    if x.shape != (shape.d,):
        raise DimensionError(f"x has shape {x.shape}, expected ({shape.d},)")
    return jacobian_forward(theta, shape, x[None, :])[0]


def jacobian_forward(theta: np.ndarray, shape: NetworkShape, X: np.ndarray) -> np.ndarray:
    """Rows grad_forward(theta, x_i) for each input row; shape (m, n)."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != shape.d:
        raise DimensionError(f"inputs have shape {X.shape}, expected (m, {shape.d})")
    w, w0, _, S = _hidden(theta, shape, X)
    m, q, d = X.shape[0], shape.q, shape.d
    Sp = S * (1.0 - S)            # sigmoid'(A)
    J = np.empty((m, shape.n))
    J[:, :q] = S
    # d f / d v_ij = w_i * sigmoid'(a_i) * x_j, neuron-major flattening
    J[:, q:q + q * d] = ((w * Sp)[:, :, None] * X[:, None, :]).reshape(m, q * d)
    J[:, q + q * d:q + q * d + q] = w * Sp
    J[:, -1] = 1.0
    return J


def inner_eval(theta: np.ndarray, shape: NetworkShape, inputs: np.ndarray,
               targets: np.ndarray, loss: LossKind) -> ResidualEval:
    """Residual map and Jacobian for the given loss.

    Quadratic/Absolute: F_i = f(x_i) - y_i. Hinge: F_i = y_i * f(x_i) with
    labels restricted to {-1, +1}; the label also scales the Jacobian row.
    """
    targets = np.asarray(targets, dtype=float)
    inputs = np.asarray(inputs, dtype=float)
    if targets.shape != (inputs.shape[0],):
        raise DimensionError(
            f"targets have shape {targets.shape}, expected ({inputs.shape[0]},)")
    preds = forward_batch(theta, shape, inputs)
    J = jacobian_forward(theta, shape, inputs)
    if loss is LossKind.HINGE:
        if not np.all(np.isin(targets, (-1.0, 1.0))):
            raise ValueError("hinge targets must be in {-1, +1}")
        return ResidualEval(F=targets * preds, J=targets[:, None] * J)
    return ResidualEval(F=preds - targets, J=J)
