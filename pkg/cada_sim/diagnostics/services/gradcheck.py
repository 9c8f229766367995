from __future__ import annotations

import numpy as np

from cada_sim.common.exceptions import ContractError
from cada_sim.numerics.services.vectors import ParamVector
from cada_sim.problems.services.datasets import Dataset
from cada_sim.problems.services.oracles import gradient, loss
from cada_sim.problems.services.sampling import Minibatch
from cada_sim.problems.services.specs import ProblemSpec


def numeric_gradient(
    spec: ProblemSpec, data: Dataset, theta: ParamVector, batch: Minibatch | None = None, h: float = 1e-6,
) -> ParamVector:
    """Central differences of the batch loss, one coordinate at a time."""
    if not h > 0:
        raise ContractError(f"finite-difference step must be > 0, got {h}")
    grad = np.empty_like(theta, dtype=np.float64)
    base = np.array(theta, dtype=np.float64)
    for i in range(base.shape[0]):
        shift = np.zeros_like(base)
        shift[i] = h
        grad[i] = (loss(spec, data, base + shift, batch) - loss(spec, data, base - shift, batch)) / (2 * h)
    return grad


def finite_diff_gradcheck(
    spec: ProblemSpec,
    data: Dataset,
    theta: ParamVector,
    batch: Minibatch | None = None,
    h: float = 1e-6,
    analytic: ParamVector | None = None,
) -> float:
    """
    Largest coordinate-wise relative error between the analytic gradient and
    central differences, |a - n| / max(1, |a|).

    ``analytic`` replaces the oracle's gradient, which lets callers check a
    gradient computed elsewhere.
    """
    if analytic is None:
        analytic = gradient(spec, data, theta, batch)
    numeric = numeric_gradient(spec, data, theta, batch, h)
    errors = np.abs(analytic - numeric) / np.maximum(1.0, np.abs(analytic))
    return float(np.max(errors))
