from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from cada_sim.common.exceptions import ContractError
from cada_sim.numerics.services.vectors import ParamVector, squared_l2_norm


@dataclass(frozen=True)
class GradNormTracker:
    """
    Per-worker running maxima of observed stochastic-gradient norms.

    Empirical stand-ins for the per-worker gradient bounds; the momentum
    monitors compare the server state against these.
    """

    maxima: tuple[float, ...]

    @classmethod
    def empty(cls, workers: int) -> GradNormTracker:
        return cls(maxima=(0.0,) * workers)

    @property
    def workers(self) -> int:
        return len(self.maxima)

    @property
    def mean(self) -> float:
        return float(np.mean(self.maxima))

    @property
    def mean_of_squares(self) -> float:
        return float(np.mean(np.square(self.maxima)))

    def observe(self, worker_id: int, norm: float) -> GradNormTracker:
        if not 0 <= worker_id < self.workers:
            raise ContractError(f"worker {worker_id} is not tracked")
        if norm <= self.maxima[worker_id]:
            return self
        maxima = list(self.maxima)
        maxima[worker_id] = float(norm)
        return GradNormTracker(maxima=tuple(maxima))


def update_tracker(tracker: GradNormTracker, worker_id: int, grad: ParamVector) -> GradNormTracker:
    return tracker.observe(worker_id, float(np.sqrt(squared_l2_norm(grad))))
