"""
Runtime checks of the bounds the adaptive update is known to satisfy.

    ||h||       <= mean_m sigma_m
    v_hat_i     <= mean_m sigma_m^2                       for every i
    ||step||^2  <= alpha^2 * p / ((1 - beta2) * (1 - beta3)),  beta3 = beta1^2 / beta2

sigma_m are the running maxima kept by ``GradNormTracker``. Each check
allows a relative slack of ``TOLERANCE`` for rounding.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from cada_sim.common.exceptions import ConfigError
from cada_sim.diagnostics.services.trackers import GradNormTracker
from cada_sim.numerics.services.vectors import ParamVector, check_same_length, squared_l2_norm
from cada_sim.optimizer.services.adam import AdamConfig, AdamState

logger = logging.getLogger(__name__)

TOLERANCE = 1e-9


@dataclass(frozen=True)
class MonitorResult:
    """``ratio`` is measured / bound; a check passes while it stays within tolerance."""

    name: str
    measured: float
    bound: float
    ratio: float

    @property
    def passed(self) -> bool:
        return self.ratio <= 1.0 + TOLERANCE


@dataclass(frozen=True)
class MonitorViolation:
    round: int
    check: str
    ratio: float


def _ratio(measured: float, bound: float) -> float:
    if measured == 0.0:
        return 0.0
    if bound == 0.0:
        return math.inf
    return measured / bound


def check_momentum_bounds(adam: AdamState, tracker: GradNormTracker) -> list[MonitorResult]:
    h_norm = math.sqrt(squared_l2_norm(adam.h))
    sigma = tracker.mean
    v_peak = float(np.max(adam.v_hat)) if adam.v_hat.size else 0.0
    sigma_sq = tracker.mean_of_squares
    return [
        MonitorResult("momentum_norm", measured=h_norm, bound=sigma, ratio=_ratio(h_norm, sigma)),
        MonitorResult("second_moment", measured=v_peak, bound=sigma_sq, ratio=_ratio(v_peak, sigma_sq)),
    ]


def step_norm_bound(alpha: float, p: int, cfg: AdamConfig) -> float:
    if not cfg.beta1**2 < cfg.beta2:
        raise ConfigError("step bound needs beta1^2 < beta2")
    return alpha**2 * p / ((1.0 - cfg.beta2) * (1.0 - cfg.beta3))


def check_step_bound(theta_new: ParamVector, theta_old: ParamVector, alpha: float, cfg: AdamConfig) -> MonitorResult:
    p = check_same_length(theta_new, theta_old)
    bound = step_norm_bound(alpha, p, cfg)
    measured = squared_l2_norm(theta_new - theta_old)
    return MonitorResult("step_norm", measured=measured, bound=bound, ratio=_ratio(measured, bound))


def failures(results, round_index: int) -> list[MonitorViolation]:
    violations = [
        MonitorViolation(round=round_index, check=r.name, ratio=r.ratio)
        for r in results if not r.passed
    ]
    for violation in violations:
        logger.warning(
            "Round %d: %s bound violated (ratio %.6g)", round_index, violation.check, violation.ratio,
        )
    return violations
