from django.core.management.base import BaseCommand, CommandError

from cada_sim.common.exceptions import SimulationError
from cada_sim.diagnostics.services.summaries import grad_evals_to_target, rounds_to_target, uploads_to_target
from cada_sim.experiments.services.config_loader import load_config_file
from cada_sim.experiments.services.run_service import execute_monte_carlo, execute_run


def _parse_seeds(value):
    try:
        return [int(seed) for seed in value.split(",") if seed.strip()]
    except ValueError as exc:
        raise CommandError(f"--seeds expects comma-separated integers, got '{value}'") from exc


def _target_line(label, log, target):
    rounds = rounds_to_target(log, target)
    if rounds is None:
        return f"{label}: loss {target:g} not reached"
    return (
        f"{label}: loss {target:g} after {rounds} rounds, "
        f"{uploads_to_target(log, target)} uploads, {grad_evals_to_target(log, target)} gradient evaluations"
    )


class Command(BaseCommand):
    help = "Run an experiment from a JSON config and write its metrics CSV"

    def add_arguments(self, parser):
        parser.add_argument("--config", required=True, help="Path to the JSON experiment config")
        parser.add_argument("--out", help="Metrics CSV path (defaults to the config's output)")
        parser.add_argument("--seeds", help="Comma-separated seeds for a Monte Carlo batch")
        parser.add_argument("--no-record", action="store_true", help="Do not store ExperimentRun rows")
        parser.add_argument(
            "--target-loss", type=float, help="Report rounds, uploads and gradient evaluations to reach this loss",
        )

    def handle(self, *args, **options):
        record = not options["no_record"]
        target = options["target_loss"]
        try:
            cfg, document = load_config_file(options["config"])
            if options["seeds"]:
                seeds = _parse_seeds(options["seeds"])
                if not seeds:
                    raise CommandError("--seeds is empty")
                logs, mean_path = execute_monte_carlo(
                    cfg, seeds, options["out"], record=record, document=document,
                )
                self.stdout.write(self.style.SUCCESS(
                    f"Ran {len(logs)} seeds of {cfg.name}; mean curves in {mean_path}"
                ))
                if target is not None:
                    for seed, seed_log in zip(seeds, logs):
                        self.stdout.write(_target_line(f"seed {seed}", seed_log, target))
                return
            log, path, _ = execute_run(cfg, options["out"], record=record, document=document)
        except (SimulationError, OSError) as exc:
            raise CommandError(str(exc)) from exc

        self.stdout.write(self.style.SUCCESS(
            f"{cfg.name}: {log.rounds} rounds, {log.total_uploads} uploads, "
            f"final loss {log.final_loss:.6g} -> {path}"
        ))
        if target is not None:
            self.stdout.write(_target_line(cfg.name, log, target))
        if log.violations:
            self.stdout.write(self.style.WARNING(f"{len(log.violations)} monitor violations"))
