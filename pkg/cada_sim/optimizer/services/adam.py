"""
Server-side adaptive update.

    h'     = beta1 * h + (1 - beta1) * g
    v'     = beta2 * v_hat + (1 - beta2) * g**2
    v_hat' = max(v', v_hat)
    theta' = theta - alpha * h' / sqrt(epsilon + v_hat')

There is no bias correction and the moments start at zero.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from cada_sim.common.exceptions import ConfigError, ContractError
from cada_sim.numerics.services.vectors import ParamVector, check_same_length, ensure_finite, zeros

DEFAULT_EPSILON = 1e-8


@dataclass(frozen=True)
class AdamConfig:
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        if not 0.0 <= self.beta1 < 1.0:
            raise ConfigError(f"beta1 must be in [0, 1), got {self.beta1}")
        if not 0.0 < self.beta2 < 1.0:
            raise ConfigError(f"beta2 must be in (0, 1), got {self.beta2}")
        if not self.epsilon > 0.0:
            raise ConfigError(f"epsilon must be > 0, got {self.epsilon}")
        if not self.beta1**2 < self.beta2:
            raise ConfigError(
                f"beta1^2 must be < beta2, got beta1={self.beta1}, beta2={self.beta2}"
            )

    @property
    def beta3(self) -> float:
        return self.beta1**2 / self.beta2


@dataclass(frozen=True, eq=False)
class AdamState:
    h: ParamVector
    v: ParamVector
    v_hat: ParamVector

    @classmethod
    def zeros(cls, p: int) -> AdamState:
        return cls(h=zeros(p), v=zeros(p), v_hat=zeros(p))


def adam_step(
    state: AdamState, cfg: AdamConfig, aggregate: ParamVector, theta: ParamVector, alpha: float,
) -> tuple[AdamState, ParamVector]:
    check_same_length(state.h, state.v_hat, aggregate, theta)
    ensure_finite(aggregate, what="aggregate")
    if not alpha > 0.0:
        raise ContractError(f"stepsize must be > 0, got {alpha}")

    h = cfg.beta1 * state.h + (1.0 - cfg.beta1) * aggregate
    v = cfg.beta2 * state.v_hat + (1.0 - cfg.beta2) * aggregate**2
    v_hat = np.maximum(v, state.v_hat)
    theta = theta - alpha * h / np.sqrt(cfg.epsilon + v_hat)
    return AdamState(h=h, v=v, v_hat=v_hat), ensure_finite(theta, what="theta")
