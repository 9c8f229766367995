from django.core.management.base import BaseCommand, CommandError

from cada_sim.common.exceptions import SimulationError
from cada_sim.experiments.services.reproductions import REPRODUCTIONS


class Command(BaseCommand):
    help = "Run desk-scale reproduction scenarios and report pass/fail"

    def add_arguments(self, parser):
        parser.add_argument("criterion", choices=[*REPRODUCTIONS, "all"])
        parser.add_argument("--fast", action="store_true", help="Smaller problems and horizons")

    def handle(self, *args, **options):
        names = list(REPRODUCTIONS) if options["criterion"] == "all" else [options["criterion"]]
        failed = []
        for name in names:
            try:
                result = REPRODUCTIONS[name](fast=options["fast"])
            except SimulationError as exc:
                raise CommandError(f"{name}: {exc}") from exc
            style = self.style.SUCCESS if result.passed else self.style.ERROR
            self.stdout.write(style(result.describe()))
            if not result.passed:
                failed.append(name)
        if failed:
            raise CommandError(f"failed: {', '.join(failed)}")
