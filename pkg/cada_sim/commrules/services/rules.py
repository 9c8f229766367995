"""
Adaptive-communication conditions.

A worker skips its upload when the squared norm of a rule-specific
innovation is at most (c / d_max) times the sum of the last d_max squared
parameter steps, unless its staleness has reached the maximum delay D.

    lag     fresh gradient minus the last uploaded gradient
            (different iterate and different sample)
    cada1   snapshot-corrected innovation now minus the one stored at the
            last upload
    cada2   fresh gradient minus the gradient at the last uploaded
            parameters on the same sample
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from cada_sim.common.compat import StrEnum
from cada_sim.common.choices import coerce_choice
from cada_sim.common.exceptions import ConfigError, ContractError
from cada_sim.numerics.services.step_window import StepNormWindow
from cada_sim.numerics.services.vectors import ParamVector, squared_l2_norm


class RuleKind(StrEnum):
    LAG = "lag"
    CADA1 = "cada1"
    CADA2 = "cada2"
    ALWAYS_UPLOAD = "always_upload"


class Action(StrEnum):
    UPLOAD = "upload"
    SKIP = "skip"


@dataclass(frozen=True)
class RuleConfig:
    kind: RuleKind = RuleKind.CADA2
    c: float = 1.0
    d_max: int = 10
    max_delay: int = 100

    def __post_init__(self):
        object.__setattr__(self, "kind", coerce_choice(RuleKind, self.kind, what="rule"))
        if not self.c >= 0:
            raise ConfigError(f"threshold constant c must be >= 0, got {self.c}")
        if self.d_max < 1:
            raise ConfigError(f"d_max must be >= 1, got {self.d_max}")
        if self.max_delay < 1:
            raise ConfigError(f"max delay D must be >= 1, got {self.max_delay}")

    @property
    def grad_evals(self) -> int:
        """Gradient evaluations a worker spends per round under this rule."""
        return 2 if self.kind in (RuleKind.CADA1, RuleKind.CADA2) else 1


@dataclass(frozen=True)
class Decision:
    action: Action
    lhs: float
    rhs: float
    forced: bool = False

    @property
    def uploads(self) -> bool:
        return self.action == Action.UPLOAD


def rhs_threshold(cfg: RuleConfig, window: StepNormWindow) -> float:
    if window.capacity != cfg.d_max:
        raise ContractError(
            f"step window holds {window.capacity} steps but d_max is {cfg.d_max}"
        )
    if math.isinf(cfg.c):
        # skip-until-forced sentinel
        return math.inf
    return cfg.c / cfg.d_max * window.window_sum


def evaluate_rule(
    cfg: RuleConfig, innovation: ParamVector | None, threshold: float, staleness: int,
) -> Decision:
    if not threshold >= 0:
        raise ContractError(f"threshold must be >= 0, got {threshold}")
    if staleness < 1:
        raise ContractError(f"staleness must be >= 1, got {staleness}")

    lhs = squared_l2_norm(innovation) if innovation is not None else 0.0

    if staleness >= cfg.max_delay:
        return Decision(Action.UPLOAD, lhs=lhs, rhs=threshold, forced=True)
    if cfg.kind == RuleKind.ALWAYS_UPLOAD:
        return Decision(Action.UPLOAD, lhs=lhs, rhs=threshold)
    if innovation is None:
        raise ContractError(f"{cfg.kind} rule needs an innovation vector")
    if lhs <= threshold:
        return Decision(Action.SKIP, lhs=lhs, rhs=threshold)
    return Decision(Action.UPLOAD, lhs=lhs, rhs=threshold)
