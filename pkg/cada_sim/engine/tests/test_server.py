import numpy as np
import pytest

from cada_sim.common.exceptions import ContractError
from cada_sim.commrules.services.rules import Action, Decision
from cada_sim.engine.services.server import ServerState, ServerUpdate, server_round
from cada_sim.engine.services.worker import RoundMessage
from cada_sim.optimizer.services.adam import AdamConfig, AdamState, adam_step


def _upload(worker_id, innovation, forced=False):
    decision = Decision(Action.UPLOAD, lhs=1.0, rhs=0.5, forced=forced)
    return RoundMessage(worker_id, np.asarray(innovation, dtype=float), 2, decision, np.ones(2))


def _skip(worker_id):
    return RoundMessage(worker_id, None, 2, Decision(Action.SKIP, lhs=0.1, rhs=0.5), np.ones(2))


def _state(aggregate, theta=(0.0, 0.0)):
    theta = np.asarray(theta, dtype=float)
    return ServerState(theta=theta, adam=AdamState.zeros(2), aggregate=np.asarray(aggregate, dtype=float))


def test_upload_updates_aggregate_incrementally():
    state, summary = server_round(_state([1.0, 1.0]), [_upload(0, [2.0, 0.0]), _skip(1)], AdamConfig(), 0.01, 2)
    assert np.array_equal(state.aggregate, [2.0, 1.0])
    assert summary.uploads == 1
    assert state.round == 1


def test_all_skip_still_steps_on_stale_aggregate():
    previous = _state([0.5, -0.5], theta=[1.0, 1.0])
    state, summary = server_round(previous, [_skip(0), _skip(1)], AdamConfig(), 0.01, 2)
    expected_adam, expected_theta = adam_step(previous.adam, AdamConfig(), previous.aggregate, previous.theta, 0.01)
    assert summary.uploads == 0
    assert np.array_equal(state.aggregate, previous.aggregate)
    assert np.array_equal(state.theta, expected_theta)
    assert np.array_equal(state.adam.v_hat, expected_adam.v_hat)
    assert summary.step_sq_norm > 0


def test_counts_uploads_and_evaluations():
    messages = [_upload(2, [1.0, 0.0], forced=True), _upload(0, [0.0, 1.0]), _upload(1, [1.0, 1.0]), _skip(3)]
    state, summary = server_round(_state([0.0, 0.0]), messages, AdamConfig(), 0.01, 4)
    assert summary.uploads == 3
    assert summary.grad_evals == 8
    assert summary.forced == 1
    assert summary.mean_lhs == pytest.approx((1.0 * 3 + 0.1) / 4)
    assert np.allclose(state.aggregate, [0.5, 0.5])


def test_message_count_must_match_workers():
    with pytest.raises(ContractError):
        server_round(_state([0.0, 0.0]), [_skip(0)], AdamConfig(), 0.01, 2)


def test_each_worker_reports_once():
    with pytest.raises(ContractError):
        server_round(_state([0.0, 0.0]), [_skip(0), _skip(0)], AdamConfig(), 0.01, 2)


def test_sgd_update_uses_aggregate_directly():
    state, _ = server_round(
        _state([0.0, 0.0], theta=[1.0, 1.0]), [_upload(0, [2.0, 4.0])], AdamConfig(), 0.1, 1, ServerUpdate.SGD,
    )
    assert np.allclose(state.theta, [0.8, 0.6])
    assert np.array_equal(state.adam.h, [0.0, 0.0])
