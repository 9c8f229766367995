import pytest

from cada_sim.common.exceptions import ConfigError
from cada_sim.commrules.services.rules import RuleConfig, RuleKind
from cada_sim.engine.services.config import Algorithm


@pytest.mark.parametrize(
    ("algorithm", "kind"),
    [
        (Algorithm.ADAM, RuleKind.ALWAYS_UPLOAD),
        (Algorithm.LAG, RuleKind.LAG),
        (Algorithm.CADA1, RuleKind.CADA1),
        (Algorithm.CADA2, RuleKind.CADA2),
    ],
)
def test_rule_kind_follows_algorithm(make_config, algorithm, kind):
    cfg = make_config(algorithm=algorithm, rule=RuleConfig(RuleKind.LAG, c=2.0, d_max=3, max_delay=7))
    assert cfg.rule == RuleConfig(kind, c=2.0, d_max=3, max_delay=7)


@pytest.mark.parametrize(
    ("ratio", "shard_size", "expected"),
    [(0.001, 500, 1), (0.01, 1000, 10), (0.01, 1001, 11), (1.0, 7, 7)],
)
def test_batch_ratio_rounds_up(make_config, ratio, shard_size, expected):
    cfg = make_config(batch_size=None, batch_ratio=ratio)
    assert cfg.batch_size_for(shard_size) == expected


def test_explicit_batch_size_wins_and_is_capped(make_config):
    cfg = make_config(batch_size=8, batch_ratio=0.5)
    assert cfg.batch_size_for(100) == 8
    assert cfg.batch_size_for(3) == 3


@pytest.mark.parametrize(
    "overrides",
    [
        {"workers": 0},
        {"rounds": -1},
        {"batch_size": None},
        {"batch_size": None, "batch_ratio": 1.5},
        {"averaging_interval": 0},
        {"eval_every": 0},
        {"momentum": 1.0},
        {"threads": 0},
    ],
)
def test_invalid_configs(make_config, overrides):
    with pytest.raises(ConfigError):
        make_config(**overrides)


def test_final_round_is_always_evaluated(make_config):
    cfg = make_config(rounds=25, eval_every=10)
    assert [k for k in range(26) if cfg.evaluates(k)] == [0, 10, 20, 25]
