"""
Dense 64-bit vector helpers.

Every gradient-shaped quantity of the simulator (parameters, moments,
aggregates, innovations) is a one-dimensional ``float64`` numpy array.
The helpers here are the only place that decides what a valid vector is.
"""
from __future__ import annotations

import numpy as np
import numpy.typing as npt

from cada_sim.common.exceptions import DimensionMismatchError, NumericDomainError

ParamVector = npt.NDArray[np.float64]


def as_param_vector(values, *, what: str = "vector") -> ParamVector:
    vector = np.array(values, dtype=np.float64, copy=True)
    if vector.ndim != 1:
        raise DimensionMismatchError(f"{what} must be one-dimensional, got shape {vector.shape}")
    return ensure_finite(vector, what=what)


def zeros(p: int) -> ParamVector:
    return np.zeros(p, dtype=np.float64)


def ensure_finite(vector: ParamVector, *, what: str = "vector") -> ParamVector:
    if not np.all(np.isfinite(vector)):
        bad = int(np.count_nonzero(~np.isfinite(vector)))
        raise NumericDomainError(f"{what} has {bad} non-finite entries")
    return vector


def check_same_length(*vectors: ParamVector) -> int:
    """Return the common length, rejecting mixed-length arithmetic."""
    lengths = {v.shape[0] for v in vectors}
    if len(lengths) != 1:
        raise DimensionMismatchError(f"mixed vector lengths: {sorted(lengths)}")
    return lengths.pop()


def squared_l2_norm(vector: ParamVector) -> float:
    ensure_finite(vector)
    return float(np.dot(vector, vector))
