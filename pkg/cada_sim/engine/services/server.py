from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from cada_sim.common.compat import StrEnum
from cada_sim.common.exceptions import ContractError
from cada_sim.engine.services.worker import RoundMessage
from cada_sim.numerics.services.vectors import ParamVector, check_same_length, squared_l2_norm, zeros
from cada_sim.optimizer.services.adam import AdamConfig, AdamState, adam_step
from cada_sim.optimizer.services.momentum import sgd_step


class ServerUpdate(StrEnum):
    ADAM = "adam"
    SGD = "sgd"


@dataclass(frozen=True, eq=False)
class ServerState:
    """Parameters, optimizer moments and the running average of stale gradients."""

    theta: ParamVector
    adam: AdamState
    aggregate: ParamVector
    round: int = 0

    @classmethod
    def initial(cls, theta0: ParamVector) -> ServerState:
        p = theta0.shape[0]
        return cls(theta=theta0, adam=AdamState.zeros(p), aggregate=zeros(p))


@dataclass(frozen=True)
class RoundSummary:
    round: int
    alpha: float
    uploads: int
    grad_evals: int
    forced: int
    mean_lhs: float
    mean_rhs: float
    step_sq_norm: float


def server_round(
    state: ServerState,
    messages: list[RoundMessage],
    adam_cfg: AdamConfig,
    alpha: float,
    workers: int,
    update: ServerUpdate = ServerUpdate.ADAM,
) -> tuple[ServerState, RoundSummary]:
    """
    Fold the uploaded innovations into the aggregate, then take one step.

    aggregate' = aggregate + (1 / M) * sum of uploaded innovations, summed in
    ascending worker order. The step runs even when nobody uploaded.
    """
    if len(messages) != workers:
        raise ContractError(f"expected {workers} messages, got {len(messages)}")
    messages = sorted(messages, key=lambda m: m.worker_id)
    if [m.worker_id for m in messages] != list(range(workers)):
        raise ContractError("need exactly one message per worker")

    uploaded = [m.innovation for m in messages if m.innovation is not None]
    aggregate = state.aggregate
    if uploaded:
        check_same_length(aggregate, *uploaded)
        total = uploaded[0]
        for innovation in uploaded[1:]:
            total = total + innovation
        aggregate = aggregate + total / workers

    if update == ServerUpdate.ADAM:
        adam, theta = adam_step(state.adam, adam_cfg, aggregate, state.theta, alpha)
    else:
        adam, theta = state.adam, sgd_step(aggregate, state.theta, alpha)

    summary = RoundSummary(
        round=state.round,
        alpha=alpha,
        uploads=len(uploaded),
        grad_evals=sum(m.grad_evals for m in messages),
        forced=sum(1 for m in messages if m.decision.forced),
        mean_lhs=float(np.mean([m.decision.lhs for m in messages])),
        mean_rhs=float(np.mean([m.decision.rhs for m in messages])),
        step_sq_norm=squared_l2_norm(theta - state.theta),
    )
    return ServerState(theta=theta, adam=adam, aggregate=aggregate, round=state.round + 1), summary
