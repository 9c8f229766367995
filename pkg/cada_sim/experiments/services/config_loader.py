from __future__ import annotations

import copy
import dataclasses
import json
import logging
from pathlib import Path

from cada_sim.common.exceptions import ConfigError
from cada_sim.engine.services.config import ExperimentConfig
from cada_sim.experiments.api.serializers import ExperimentConfigSerializer
from cada_sim.experiments.services.presets import BENCHMARK_PRESETS, preset_values

logger = logging.getLogger(__name__)


def _fill_missing(document: dict, defaults: dict) -> dict:
    for key, value in defaults.items():
        if key not in document:
            document[key] = copy.deepcopy(value)
        elif isinstance(value, dict) and isinstance(document[key], dict):
            _fill_missing(document[key], value)
    return document


def apply_preset(document: dict) -> dict:
    document = copy.deepcopy(document)
    name = document.pop("preset", None)
    if name is None:
        return document
    if name not in BENCHMARK_PRESETS:
        raise ConfigError(f"unknown preset '{name}' (expected one of {', '.join(BENCHMARK_PRESETS)})")
    defaults = preset_values(name, document.get("algorithm", ""))
    if "batch_size" in document:
        defaults.pop("batch_ratio")
    return _fill_missing(document, defaults)


def _flatten_errors(errors, prefix="") -> list[str]:
    if isinstance(errors, dict):
        messages = []
        for key, value in errors.items():
            path = prefix if key == "non_field_errors" else f"{prefix}{key}."
            messages.extend(_flatten_errors(value, path))
        return messages
    if isinstance(errors, list):
        return [m for item in errors for m in _flatten_errors(item, prefix)]
    location = prefix.rstrip(".")
    return [f"{location}: {errors}" if location else str(errors)]


def parse_document(text) -> dict:
    if hasattr(text, "read"):
        text = text.read()
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise ConfigError("config must be a JSON object")
    return document


def config_from_document(document: dict) -> ExperimentConfig:
    serializer = ExperimentConfigSerializer(data=apply_preset(document))
    if not serializer.is_valid():
        raise ConfigError("invalid config: " + "; ".join(_flatten_errors(serializer.errors)), detail=serializer.errors)
    return serializer.save()


def load_config(text) -> ExperimentConfig:
    """Parse and validate a JSON config document (string or readable stream)."""
    return config_from_document(parse_document(text))


def load_config_file(path) -> tuple[ExperimentConfig, dict]:
    document = parse_document(Path(path).read_text())
    cfg = config_from_document(document)
    logger.info("Loaded config %s from %s", cfg.name, path)
    return cfg, document


def config_document(cfg: ExperimentConfig) -> dict:
    problem = dataclasses.asdict(cfg.problem)
    problem["lambda"] = problem.pop("lam")
    rule = {"c": cfg.rule.c, "d_max": cfg.rule.d_max, "D": cfg.rule.max_delay}
    schedule = {k: v for k, v in dataclasses.asdict(cfg.schedule).items() if v is not None}
    return {
        "name": cfg.name,
        "problem": {k: str(v) if k in ("kind", "partition") else v for k, v in problem.items()},
        "workers": cfg.workers,
        "batch_size": cfg.batch_size,
        "batch_ratio": cfg.batch_ratio,
        "algorithm": str(cfg.algorithm),
        "rule": rule,
        "adam": dataclasses.asdict(cfg.adam),
        "schedule": {k: str(v) if k == "kind" else v for k, v in schedule.items()},
        "rounds": cfg.rounds,
        "H": cfg.averaging_interval,
        "momentum": cfg.momentum,
        "eval_every": cfg.eval_every,
        "seed": cfg.seed,
        "output": cfg.output,
        "checked": cfg.checked,
        "threads": cfg.threads,
        "server_update": str(cfg.server_update),
    }


def dump_config(cfg: ExperimentConfig) -> str:
    return json.dumps(config_document(cfg), indent=2)
