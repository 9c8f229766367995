import math

import numpy as np
import pytest

from cada_sim.common.exceptions import ConfigError, ContractError
from cada_sim.commrules.services.rules import Action, RuleConfig, RuleKind, evaluate_rule, rhs_threshold
from cada_sim.numerics.services.step_window import StepNormWindow


def test_threshold_is_scaled_window_sum():
    cfg = RuleConfig(RuleKind.CADA2, c=1.0, d_max=2)
    assert rhs_threshold(cfg, StepNormWindow(2, (0.01, 0.03))) == pytest.approx(0.02)


def test_zero_c_gives_zero_threshold():
    cfg = RuleConfig(RuleKind.CADA1, c=0.0, d_max=3)
    assert rhs_threshold(cfg, StepNormWindow(3, (1.0, 2.0, 3.0))) == 0.0


def test_missing_history_counts_as_zero():
    cfg = RuleConfig(RuleKind.LAG, c=10.0, d_max=10)
    assert rhs_threshold(cfg, StepNormWindow(10, (0.04,))) == pytest.approx(0.04)


def test_infinite_c_never_skips_below_threshold():
    cfg = RuleConfig(RuleKind.CADA2, c=math.inf, d_max=2)
    assert rhs_threshold(cfg, StepNormWindow(2)) == math.inf


def test_window_capacity_must_match():
    with pytest.raises(ContractError):
        rhs_threshold(RuleConfig(d_max=10), StepNormWindow(5))


def test_small_innovation_skips():
    cfg = RuleConfig(RuleKind.CADA2, c=1.0, max_delay=100)
    decision = evaluate_rule(cfg, np.array([0.1, 0.0]), threshold=0.02, staleness=3)
    assert decision.action == Action.SKIP
    assert decision.lhs == pytest.approx(0.01)
    assert not decision.forced


def test_large_innovation_uploads():
    cfg = RuleConfig(RuleKind.CADA2)
    decision = evaluate_rule(cfg, np.array([0.3]), threshold=0.02, staleness=1)
    assert decision.action == Action.UPLOAD
    assert decision.lhs == pytest.approx(0.09)


@pytest.mark.parametrize("kind", [RuleKind.LAG, RuleKind.CADA1, RuleKind.CADA2])
def test_max_staleness_forces_upload(kind):
    cfg = RuleConfig(kind, c=1e9, max_delay=5)
    decision = evaluate_rule(cfg, np.zeros(3), threshold=1.0, staleness=5)
    assert decision.action == Action.UPLOAD
    assert decision.forced


def test_equality_skips():
    cfg = RuleConfig(RuleKind.LAG)
    decision = evaluate_rule(cfg, np.array([0.5]), threshold=0.25, staleness=1)
    assert decision.action == Action.SKIP


def test_zero_c_skips_only_zero_innovation():
    cfg = RuleConfig(RuleKind.CADA2, c=0.0)
    assert evaluate_rule(cfg, np.zeros(2), 0.0, 1).action == Action.SKIP
    assert evaluate_rule(cfg, np.array([1e-150, 0.0]), 0.0, 1).action == Action.UPLOAD


def test_always_upload_ignores_test():
    cfg = RuleConfig(RuleKind.ALWAYS_UPLOAD)
    decision = evaluate_rule(cfg, None, threshold=10.0, staleness=1)
    assert decision.action == Action.UPLOAD
    assert not decision.forced


def test_always_upload_is_forced_at_max_delay():
    cfg = RuleConfig(RuleKind.ALWAYS_UPLOAD, max_delay=3)
    decision = evaluate_rule(cfg, np.array([3.0, 4.0]), threshold=0.0, staleness=3)
    assert decision.action == Action.UPLOAD
    assert decision.forced
    assert decision.lhs == pytest.approx(25.0)
    assert not evaluate_rule(cfg, None, 0.0, 2).forced


def test_decision_is_scale_consistent():
    rng = np.random.default_rng(0)
    cfg = RuleConfig(RuleKind.CADA1, max_delay=1000)
    for _ in range(100):
        innovation = rng.normal(size=4)
        threshold = rng.exponential() * 4
        scale = rng.uniform(0.5, 2.0)
        base = evaluate_rule(cfg, innovation, threshold, 2)
        scaled = evaluate_rule(cfg, scale * innovation, scale**2 * threshold, 2)
        if not math.isclose(base.lhs, threshold, rel_tol=1e-9):
            assert base.action == scaled.action


def test_skip_implies_below_threshold_and_not_forced():
    rng = np.random.default_rng(1)
    cfg = RuleConfig(RuleKind.LAG, max_delay=4)
    for staleness in range(1, 7):
        for _ in range(20):
            decision = evaluate_rule(cfg, rng.normal(size=3) * 0.1, 0.05, staleness)
            if decision.action == Action.SKIP:
                assert decision.lhs <= decision.rhs
                assert not decision.forced
                assert staleness < cfg.max_delay


def test_contract_errors():
    cfg = RuleConfig()
    with pytest.raises(ContractError):
        evaluate_rule(cfg, np.zeros(2), threshold=-1.0, staleness=1)
    with pytest.raises(ContractError):
        evaluate_rule(cfg, np.zeros(2), threshold=1.0, staleness=0)


@pytest.mark.parametrize(
    "kwargs", [{"c": -0.1}, {"d_max": 0}, {"max_delay": 0}],
)
def test_invalid_rule_config(kwargs):
    with pytest.raises(ConfigError):
        RuleConfig(**kwargs)


def test_grad_evals_per_rule():
    assert RuleConfig(RuleKind.CADA1).grad_evals == 2
    assert RuleConfig(RuleKind.CADA2).grad_evals == 2
    assert RuleConfig(RuleKind.LAG).grad_evals == 1
    assert RuleConfig(RuleKind.ALWAYS_UPLOAD).grad_evals == 1
