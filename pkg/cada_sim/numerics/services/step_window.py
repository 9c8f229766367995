from __future__ import annotations

import math
from dataclasses import dataclass

from cada_sim.common.exceptions import ContractError


@dataclass(frozen=True)
class StepNormWindow:
    """
    The last ``capacity`` squared parameter step norms, newest first.

    Rounds before the experiment started are not stored; they count as
    zero steps, as if every earlier iterate equalled the initial one.
    """

    capacity: int
    entries: tuple[float, ...] = ()

    def __post_init__(self):
        if self.capacity < 1:
            raise ContractError(f"window capacity must be >= 1, got {self.capacity}")
        if len(self.entries) > self.capacity:
            raise ContractError("window holds more entries than its capacity")

    @property
    def window_sum(self) -> float:
        return math.fsum(self.entries)

    def record(self, sq_norm: float) -> StepNormWindow:
        return record_step(self, sq_norm)


def record_step(window: StepNormWindow, sq_norm: float) -> StepNormWindow:
    if not sq_norm >= 0:
        raise ContractError(f"squared step norm must be >= 0, got {sq_norm}")
    entries = (float(sq_norm), *window.entries)[: window.capacity]
    return StepNormWindow(capacity=window.capacity, entries=entries)
