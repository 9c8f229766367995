"""Efficiency summaries over one or several metrics logs."""
from __future__ import annotations

import numpy as np

from cada_sim.common.exceptions import ContractError
from cada_sim.diagnostics.services.metrics import MetricsLog, RoundRecord


def _first_at_target(log: MetricsLog, target_loss: float) -> RoundRecord | None:
    for record in log.evaluated:
        if record.loss <= target_loss:
            return record
    return None


def rounds_to_target(log: MetricsLog, target_loss: float) -> int | None:
    record = _first_at_target(log, target_loss)
    return record.round if record else None


def uploads_to_target(log: MetricsLog, target_loss: float) -> int | None:
    record = _first_at_target(log, target_loss)
    return record.cum_uploads if record else None


def grad_evals_to_target(log: MetricsLog, target_loss: float) -> int | None:
    record = _first_at_target(log, target_loss)
    return record.cum_grad_evals if record else None


def skip_fraction(log: MetricsLog, start: int, end: int) -> float:
    """Share of skipped worker slots over rounds ``start`` .. ``end - 1``."""
    if not 0 <= start < end:
        raise ContractError(f"empty round window [{start}, {end})")
    # round k lives in record k + 1
    window = [r for r in log.records if start < r.round <= end]
    if not window:
        raise ContractError(f"log has no rounds in [{start}, {end})")
    uploads = sum(r.uploads for r in window)
    return 1.0 - uploads / (log.workers * len(window))


def running_average(log: MetricsLog, field: str, upto: int) -> float:
    """Mean of an evaluated column over records 0 .. upto - 1."""
    values = [getattr(r, field) for r in log.records if r.round < upto and getattr(r, field) is not None]
    if not values:
        raise ContractError(f"no evaluated {field} before round {upto}")
    return float(np.mean(values))


def mean_curve(logs, field: str = "loss") -> list[tuple[int, float]]:
    """
    Round-by-round mean of an evaluated column across runs.

    Only rounds evaluated in every log are kept.
    """
    logs = list(logs)
    if not logs:
        return []
    columns = [
        {r.round: getattr(r, field) for r in log.records if getattr(r, field) is not None}
        for log in logs
    ]
    shared = sorted(set.intersection(*(set(c) for c in columns)))
    return [(k, float(np.mean([c[k] for c in columns]))) for k in shared]
