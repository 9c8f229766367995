from __future__ import annotations

import dataclasses
import logging
from pathlib import Path

from django.conf import settings

from cada_sim.diagnostics.services.metrics import MetricsLog
from cada_sim.diagnostics.services.summaries import mean_curve
from cada_sim.engine.services.config import ExperimentConfig
from cada_sim.engine.services.runner import run_experiment
from cada_sim.experiments.models import ExperimentRun
from cada_sim.experiments.services.config_loader import config_document
from cada_sim.experiments.services.csv_export import write_curve_csv, write_metrics_csv

logger = logging.getLogger(__name__)


def resolve_output(cfg: ExperimentConfig, out_path=None) -> Path:
    if out_path:
        return Path(out_path)
    if cfg.output:
        return Path(cfg.output)
    return Path(settings.CADA_SIM_OUTPUT_DIR) / f"{cfg.name}_seed{cfg.seed}.csv"


def seeded_path(path: Path, seed: int) -> Path:
    return path.with_name(f"{path.stem}_seed{seed}{path.suffix}")


def execute_run(
    cfg: ExperimentConfig, out_path=None, record: bool = True, document: dict | None = None,
) -> tuple[MetricsLog, Path, ExperimentRun | None]:
    """
    Run one experiment, write its metrics CSV and, unless ``record`` is
    off, keep an ``ExperimentRun`` row in step with it.
    """
    path = resolve_output(cfg, out_path)
    run = None
    if record:
        run = ExperimentRun.objects.create(
            name=cfg.name,
            algorithm=cfg.algorithm,
            seed=cfg.seed,
            config=document if document is not None else config_document(cfg),
            rounds=cfg.rounds,
        )
        run.mark_running()

    try:
        log = run_experiment(cfg)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("wb") as sink:
            write_metrics_csv(log, sink)
    except Exception as exc:
        logger.error("Run %s (seed %d) failed: %s", cfg.name, cfg.seed, exc)
        if run is not None:
            run.mark_failed(exc)
        raise

    if run is not None:
        run.mark_completed(log, path)
    logger.info("Wrote %d metric rows to %s", len(log), path)
    return log, path, run


def execute_monte_carlo(
    cfg: ExperimentConfig, seeds, out_path=None, record: bool = True, document: dict | None = None,
) -> tuple[list[MetricsLog], Path]:
    """One run per seed (each with its own CSV) plus a CSV of the mean curves."""
    base = resolve_output(cfg, out_path)
    logs = []
    for seed in seeds:
        seeded = dataclasses.replace(cfg, seed=seed)
        seeded_document = None
        if document is not None:
            seeded_document = {**document, "seed": seed}
        log, _, _ = execute_run(seeded, seeded_path(base, seed), record=record, document=seeded_document)
        logs.append(log)

    mean_path = base.with_name(f"{base.stem}_mean{base.suffix}")
    with mean_path.open("wb") as sink:
        write_curve_csv(
            {"loss": mean_curve(logs, "loss"), "grad_norm_sq": mean_curve(logs, "grad_norm_sq")}, sink,
        )
    logger.info("Averaged %d seeds into %s", len(logs), mean_path)
    return logs, mean_path
