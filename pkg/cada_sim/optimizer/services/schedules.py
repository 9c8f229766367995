from __future__ import annotations

import math
from dataclasses import dataclass

from cada_sim.common.compat import StrEnum
from cada_sim.common.choices import coerce_choice
from cada_sim.common.exceptions import ConfigError, ContractError


class ScheduleKind(StrEnum):
    CONSTANT = "constant"
    SQRT_HORIZON = "sqrt_horizon"
    PL_INVERSE = "pl_inverse"


@dataclass(frozen=True)
class StepSchedule:
    """
    Stepsize schedules.

    constant      alpha_k = alpha
    sqrt_horizon  alpha_k = eta / sqrt(horizon)        (fixed over the run)
    pl_inverse    alpha_k = 2 / (mu * (k + k0))
    """

    kind: ScheduleKind = ScheduleKind.CONSTANT
    alpha: float | None = None
    eta: float | None = None
    horizon: int | None = None
    mu: float | None = None
    k0: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", coerce_choice(ScheduleKind, self.kind, what="schedule"))
        required = {
            ScheduleKind.CONSTANT: ("alpha",),
            ScheduleKind.SQRT_HORIZON: ("eta", "horizon"),
            ScheduleKind.PL_INVERSE: ("mu", "k0"),
        }[self.kind]
        for name in required:
            value = getattr(self, name)
            if value is None or not value > 0:
                raise ConfigError(f"{self.kind} schedule needs {name} > 0, got {value}")

    @classmethod
    def constant(cls, alpha: float) -> StepSchedule:
        return cls(ScheduleKind.CONSTANT, alpha=alpha)

    @classmethod
    def sqrt_horizon(cls, eta: float, horizon: int) -> StepSchedule:
        return cls(ScheduleKind.SQRT_HORIZON, eta=eta, horizon=horizon)

    @classmethod
    def pl_inverse(cls, mu: float, k0: float) -> StepSchedule:
        return cls(ScheduleKind.PL_INVERSE, mu=mu, k0=k0)


def stepsize(schedule: StepSchedule, k: int) -> float:
    if k < 0:
        raise ContractError(f"round index must be >= 0, got {k}")
    if schedule.kind == ScheduleKind.CONSTANT:
        return schedule.alpha
    if schedule.kind == ScheduleKind.SQRT_HORIZON:
        return schedule.eta / math.sqrt(schedule.horizon)
    return 2.0 / (schedule.mu * (k + schedule.k0))
