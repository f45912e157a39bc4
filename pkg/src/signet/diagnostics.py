"""Metrics, Jacobian rank checks, and the adaptive network-size rule."""

from __future__ import annotations

import math

import numpy as np

from .data import Dataset, TaskKind
from .losses import LossKind
from .model import NetworkShape, forward_batch, inner_eval


def rms_error(pred, actual) -> float:
    """sqrt(mean squared difference)."""
    pred = np.asarray(pred, dtype=float)
    actual = np.asarray(actual, dtype=float)
    if pred.shape != actual.shape or pred.ndim != 1 or pred.size == 0:
        raise ValueError(f"bad shapes {pred.shape} vs {actual.shape}")
    return float(np.sqrt(np.mean((pred - actual) ** 2)))


def max_error(pred, actual) -> float:
    pred = np.asarray(pred, dtype=float)
    actual = np.asarray(actual, dtype=float)
    if pred.shape != actual.shape or pred.ndim != 1 or pred.size == 0:
        raise ValueError(f"bad shapes {pred.shape} vs {actual.shape}")
    return float(np.max(np.abs(pred - actual)))


def classification_errors(theta, shape: NetworkShape, data: Dataset) -> int:
    """Count of sign mismatches; a network output of exactly 0 counts as an
    error for either label."""
    if data.task is not TaskKind.BINARY:
        raise ValueError("classification_errors needs a binary dataset")
    preds = forward_batch(theta, shape, data.inputs)
    return int(np.sum(np.sign(preds) != data.targets))


def jacobian_rank(J: np.ndarray, tol_factor: float = 1e-10) -> tuple[int, bool]:
    """Numerical rank by singular-value threshold tol_factor*max(m,n)*sigma_max;
    also reports whether the matrix has full row rank."""
    J = np.asarray(J, dtype=float)
    if not np.all(np.isfinite(J)):
        raise FloatingPointError("non-finite entries in Jacobian")
    sv = np.linalg.svd(J, compute_uv=False)
    threshold = tol_factor * max(J.shape) * (sv[0] if sv.size else 0.0)
    rank = int(np.sum(sv > threshold))
    return rank, rank == J.shape[0]


def adaptive_network_size(m: int, d: int) -> int:
    """Smallest hidden-layer size making the parameter count reach the sample
    count: max(1, ceil((m-1)/(d+2)))."""
    if m < 1 or d < 1:
        raise ValueError(f"need m, d >= 1, got m={m}, d={d}")
    return max(1, math.ceil((m - 1) / (d + 2)))


def finite_diff_jacobian(theta, shape: NetworkShape, inputs, targets,
                         loss: LossKind, h: float = 1e-5) -> np.ndarray:
    """Central-difference Jacobian of the residual map, column by column."""
    if h <= 0:
        raise ValueError(f"step h must be positive, got {h}")
    theta = np.asarray(theta, dtype=float)
    cols = []
    for j in range(theta.size):
        e = np.zeros_like(theta)
        e[j] = h
        Fp = inner_eval(theta + e, shape, inputs, targets, loss).F
        Fm = inner_eval(theta - e, shape, inputs, targets, loss).F
        cols.append((Fp - Fm) / (2.0 * h))
    return np.column_stack(cols)
