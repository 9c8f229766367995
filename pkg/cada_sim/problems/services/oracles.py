"""
Loss and stochastic-gradient oracles.

The batch loss is the mean per-sample loss over the batch plus
(lam / 2) * ||theta||^2, so gradient magnitudes do not depend on the batch
size. Passing ``batch=None`` evaluates over the whole dataset.
"""
from __future__ import annotations

import numpy as np
from scipy.special import expit
from scipy.special import logsumexp

from cada_sim.common.exceptions import DimensionMismatchError, NumericDomainError
from cada_sim.numerics.services.vectors import ParamVector, ensure_finite
from cada_sim.problems.services.datasets import Dataset
from cada_sim.problems.services.sampling import Minibatch
from cada_sim.problems.services.specs import ProblemKind, ProblemSpec


def _select(data: Dataset, batch: Minibatch | None):
    if batch is None:
        return data.features, data.labels
    batch.check_bounds(data.n)
    return data.features[batch.indices], data.labels[batch.indices]


def _check_inputs(spec: ProblemSpec, data: Dataset, theta: ParamVector):
    if theta.shape != (spec.p,):
        raise DimensionMismatchError(f"theta has shape {theta.shape}, expected ({spec.p},)")
    if data.p != spec.feature_dim:
        raise DimensionMismatchError(
            f"data has {data.p} features, problem expects {spec.feature_dim}"
        )
    ensure_finite(theta, what="theta")


def loss(spec: ProblemSpec, data: Dataset, theta: ParamVector, batch: Minibatch | None = None) -> float:
    _check_inputs(spec, data, theta)
    features, labels = _select(data, batch)

    if spec.kind == ProblemKind.BINARY_LOGISTIC:
        margins = labels * (features @ theta)
        per_sample = np.logaddexp(0.0, -margins)
    elif spec.kind == ProblemKind.MULTICLASS_LOGISTIC:
        logits = np.asarray(features @ theta.reshape(spec.classes, -1).T)
        picked = logits[np.arange(logits.shape[0]), labels.astype(np.intp)]
        per_sample = logsumexp(logits, axis=1) - picked
    else:
        residuals = features @ theta - labels
        per_sample = 0.5 * residuals**2

    value = float(np.mean(per_sample)) + 0.5 * spec.lam * float(np.dot(theta, theta))
    if not np.isfinite(value):
        raise NumericDomainError(f"{spec.kind} loss is not finite")
    return value


def gradient(
    spec: ProblemSpec, data: Dataset, theta: ParamVector, batch: Minibatch | None = None,
) -> ParamVector:
    _check_inputs(spec, data, theta)
    features, labels = _select(data, batch)
    size = features.shape[0]

    if spec.kind == ProblemKind.BINARY_LOGISTIC:
        margins = labels * (features @ theta)
        weights = -labels * expit(-margins)
        grad = np.asarray(features.T @ weights).ravel() / size
    elif spec.kind == ProblemKind.MULTICLASS_LOGISTIC:
        logits = np.asarray(features @ theta.reshape(spec.classes, -1).T)
        probs = np.exp(logits - logsumexp(logits, axis=1, keepdims=True))
        probs[np.arange(size), labels.astype(np.intp)] -= 1.0
        grad = np.asarray(features.T @ probs).T.ravel() / size
    else:
        residuals = features @ theta - labels
        grad = np.asarray(features.T @ residuals).ravel() / size

    grad = grad + spec.lam * theta
    if not np.all(np.isfinite(grad)):
        raise NumericDomainError(f"{spec.kind} gradient is not finite")
    return grad


def objective(spec: ProblemSpec, shards, theta: ParamVector) -> float:
    """Global objective: the mean over workers of each worker's full loss."""
    return float(np.mean([loss(spec, shard.dataset, theta) for shard in shards]))


def objective_gradient(spec: ProblemSpec, shards, theta: ParamVector) -> ParamVector:
    return np.mean([gradient(spec, shard.dataset, theta) for shard in shards], axis=0)


def evaluate_objective(spec: ProblemSpec, shards, theta: ParamVector) -> tuple[float, float]:
    """Global loss and squared norm of its gradient."""
    grad = objective_gradient(spec, shards, theta)
    return objective(spec, shards, theta), float(np.dot(grad, grad))
