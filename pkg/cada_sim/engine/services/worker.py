"""
Worker side of one round.

Each round a worker draws one minibatch, evaluates its fresh gradient and
whatever the communication rule compares it against, and either uploads
the innovation (fresh gradient minus its last upload) or skips. The same
minibatch serves the rule check and the upload.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import numpy as np

from cada_sim.commrules.services.rules import Decision, RuleConfig, RuleKind, evaluate_rule, rhs_threshold
from cada_sim.dataio.services.partition import Shard
from cada_sim.numerics.services.step_window import StepNormWindow
from cada_sim.numerics.services.vectors import ParamVector, zeros
from cada_sim.problems.services.oracles import gradient
from cada_sim.problems.services.sampling import sample_minibatch
from cada_sim.problems.services.specs import ProblemSpec

logger = logging.getLogger(__name__)


def worker_rng(seed: int, worker_id: int) -> np.random.Generator:
    """Independent stream per worker, derived from the master seed."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(worker_id,)))


@dataclass(frozen=True, eq=False)
class WorkerState:
    worker_id: int
    staleness: int
    last_upload_params: ParamVector
    last_upload_grad: ParamVector
    step_window: StepNormWindow
    rng: np.random.Generator
    batch_size: int
    snapshot: ParamVector | None = None
    stored_innovation: ParamVector | None = None

    @classmethod
    def initial(
        cls, worker_id: int, theta0: ParamVector, rule: RuleConfig, seed: int, batch_size: int,
    ) -> WorkerState:
        # staleness starts at D so round 0 is a forced upload from everyone
        p = theta0.shape[0]
        cada1 = rule.kind == RuleKind.CADA1
        return cls(
            worker_id=worker_id,
            staleness=rule.max_delay,
            last_upload_params=theta0,
            last_upload_grad=zeros(p),
            step_window=StepNormWindow(rule.d_max),
            rng=worker_rng(seed, worker_id),
            batch_size=batch_size,
            snapshot=theta0 if cada1 else None,
            stored_innovation=zeros(p) if cada1 else None,
        )

    def observe_step(self, sq_norm: float) -> WorkerState:
        return replace(self, step_window=self.step_window.record(sq_norm))


@dataclass(frozen=True, eq=False)
class RoundMessage:
    worker_id: int
    innovation: ParamVector | None
    grad_evals: int
    decision: Decision
    fresh_grad: ParamVector

    @property
    def uploads(self) -> bool:
        return self.innovation is not None


def worker_round(
    state: WorkerState, theta: ParamVector, rule: RuleConfig, spec: ProblemSpec, shard: Shard, k: int,
) -> tuple[WorkerState, RoundMessage]:
    data = shard.dataset
    snapshot = state.snapshot
    if rule.kind == RuleKind.CADA1 and k % rule.max_delay == 0:
        snapshot = theta

    batch = sample_minibatch(shard.size, min(state.batch_size, shard.size), state.rng)
    fresh = gradient(spec, data, theta, batch)

    corrected = None
    if rule.kind == RuleKind.LAG:
        innovation = fresh - state.last_upload_grad
    elif rule.kind == RuleKind.CADA1:
        corrected = fresh - gradient(spec, data, snapshot, batch)
        innovation = corrected - state.stored_innovation
    elif rule.kind == RuleKind.CADA2:
        innovation = fresh - gradient(spec, data, state.last_upload_params, batch)
    else:
        innovation = None

    threshold = rhs_threshold(rule, state.step_window)
    decision = evaluate_rule(rule, innovation, threshold, state.staleness)

    if not decision.uploads:
        logger.debug("Worker %d skips round %d (tau=%d)", state.worker_id, k, state.staleness)
        message = RoundMessage(state.worker_id, None, rule.grad_evals, decision, fresh)
        return replace(state, staleness=state.staleness + 1, snapshot=snapshot), message

    message = RoundMessage(
        state.worker_id, fresh - state.last_upload_grad, rule.grad_evals, decision, fresh,
    )
    new_state = replace(
        state,
        staleness=1,
        last_upload_params=theta,
        last_upload_grad=fresh,
        snapshot=snapshot,
        stored_innovation=corrected if corrected is not None else state.stored_innovation,
    )
    return new_state, message
