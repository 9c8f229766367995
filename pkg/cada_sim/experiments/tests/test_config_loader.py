import io
import json

import pytest

from cada_sim.common.exceptions import ConfigError
from cada_sim.engine.services.config import Algorithm
from cada_sim.engine.services.server import ServerUpdate
from cada_sim.experiments.services.config_loader import (
    apply_preset,
    dump_config,
    load_config,
    load_config_file,
)
from cada_sim.experiments.tests.factories import experiment_document, experiment_text
from cada_sim.optimizer.services.schedules import ScheduleKind


def test_small_config_loads():
    cfg = load_config(experiment_text())
    assert cfg.algorithm == Algorithm.CADA2
    assert cfg.workers == 4
    assert cfg.problem.p == 5
    assert cfg.rule.max_delay == 10
    assert cfg.schedule.alpha == 0.01


def test_defaults_fill_optional_sections(settings):
    settings.CADA_SIM_CHECKED_MODE = False
    document = experiment_document(algorithm="adam")
    del document["rule"]
    cfg = load_config(json.dumps(document))

    assert (cfg.rule.c, cfg.rule.d_max, cfg.rule.max_delay) == (1.0, 10, 100)
    assert (cfg.adam.beta1, cfg.adam.beta2) == (0.9, 0.999)
    assert cfg.averaging_interval == 10
    assert cfg.problem.lam == pytest.approx(1e-5)
    assert cfg.server_update == ServerUpdate.ADAM
    assert cfg.checked is False


def test_renamed_keys():
    document = experiment_document(H=20)
    document["problem"]["lambda"] = 0.001
    cfg = load_config(json.dumps(document))
    assert cfg.averaging_interval == 20
    assert cfg.problem.lam == 0.001


def test_reads_streams():
    cfg = load_config(io.StringIO(experiment_text(seed=7)))
    assert cfg.seed == 7


def test_loads_file(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(experiment_text(name="from-file"))
    cfg, document = load_config_file(path)
    assert cfg.name == "from-file"
    assert document["problem"]["p"] == 5


def test_dumped_config_loads_back_unchanged():
    cfg = load_config(experiment_text(algorithm="cada1", batch_size=None, batch_ratio=0.05))
    assert load_config(dump_config(cfg)) == cfg


def test_covtype_preset_fills_missing_values():
    document = experiment_document(preset="covtype")
    for key in ("batch_size", "rule", "schedule"):
        del document[key]
    cfg = load_config(json.dumps(document))

    assert cfg.batch_size is None
    assert cfg.batch_ratio == 0.001
    assert cfg.schedule.kind == ScheduleKind.CONSTANT
    assert cfg.schedule.alpha == 0.005
    assert (cfg.rule.max_delay, cfg.rule.d_max) == (100, 10)
    assert (cfg.adam.beta1, cfg.adam.beta2) == (0.9, 0.999)


def test_preset_keeps_explicit_values():
    cfg = load_config(experiment_text(preset="ijcnn1", schedule={"kind": "constant", "alpha": 0.02}))
    assert cfg.schedule.alpha == 0.02
    assert cfg.batch_size == 5
    assert cfg.batch_ratio is None
    assert cfg.rule.max_delay == 10


def test_lag_preset_uses_sgd_server():
    document = apply_preset(experiment_document(preset="covtype", algorithm="lag"))
    assert document["server_update"] == "sgd"
    assert document["schedule"]["alpha"] == 0.01
    assert "preset" not in document


def test_unknown_preset():
    with pytest.raises(ConfigError, match="unknown preset 'mnist'"):
        load_config(experiment_text(preset="mnist"))


def test_unknown_algorithm_lists_the_known_ones():
    with pytest.raises(ConfigError) as excinfo:
        load_config(experiment_text(algorithm="adamw"))
    message = str(excinfo.value)
    assert "algorithm" in message
    assert "adamw" in message
    assert "cada2" in message
    assert "algorithm" in excinfo.value.detail


@pytest.mark.parametrize(
    ("overrides", "field"),
    [
        ({"extra": 1}, "extra"),
        ({"rule": {"c": 1.0, "tau": 3}}, "rule"),
        ({"adam": {"beta1": 0.9, "beta2": 0.5}}, "adam"),
        ({"adam": {"epsilon": 0}}, "adam"),
        ({"schedule": {"kind": "constant"}}, "schedule"),
        ({"schedule": {"kind": "cosine", "alpha": 0.1}}, "schedule"),
        ({"workers": 0}, "workers"),
        ({"batch_size": None}, "non_field_errors"),
        ({"batch_size": None, "batch_ratio": 1.5}, "batch_ratio"),
        ({"problem": {"kind": "binary_logistic", "p": 5}}, "problem"),
        ({"rule": {"d_max": 0}}, "rule"),
    ],
)
def test_invalid_documents(overrides, field):
    with pytest.raises(ConfigError) as excinfo:
        load_config(experiment_text(**overrides))
    assert field in excinfo.value.detail


def test_rejects_broken_json():
    with pytest.raises(ConfigError, match="not valid JSON"):
        load_config("{\"workers\": 4,")


def test_rejects_non_object():
    with pytest.raises(ConfigError, match="JSON object"):
        load_config("[1, 2]")


def test_settings_fill_checked_and_threads(settings):
    settings.CADA_SIM_CHECKED_MODE = True
    settings.CADA_SIM_WORKER_THREADS = 3
    cfg = load_config(experiment_text())
    assert cfg.checked is True
    assert cfg.threads == 3
