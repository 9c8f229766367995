import numpy as np
from django.core.management.base import BaseCommand, CommandError

from cada_sim.common.exceptions import SimulationError
from cada_sim.dataio.services.workload import build_workload
from cada_sim.diagnostics.services.gradcheck import finite_diff_gradcheck
from cada_sim.experiments.services.config_loader import load_config_file

TOLERANCE = 1e-5


class Command(BaseCommand):
    help = "Compare analytic gradients with central differences for a configured problem"

    def add_arguments(self, parser):
        parser.add_argument("--config", required=True)
        parser.add_argument("--points", type=int, default=20)
        parser.add_argument("--h", type=float, default=1e-6)

    def handle(self, *args, **options):
        if options["points"] < 1:
            raise CommandError("--points must be >= 1")
        try:
            cfg, _ = load_config_file(options["config"])
            workload = build_workload(cfg.problem, cfg.workers, cfg.seed)
            rng = np.random.default_rng(cfg.seed)
            worst = 0.0
            # point i is checked on shard i mod M
            for point in range(options["points"]):
                shard = workload.shards[point % len(workload.shards)]
                theta = rng.normal(size=workload.spec.p)
                error = finite_diff_gradcheck(workload.spec, shard.dataset, theta, h=options["h"])
                worst = max(worst, error)
        except (SimulationError, OSError) as exc:
            raise CommandError(str(exc)) from exc

        if worst > TOLERANCE:
            raise CommandError(f"gradient check failed: max relative error {worst:.3e} > {TOLERANCE:g}")
        self.stdout.write(self.style.SUCCESS(
            f"Checked {options['points']} points, max relative error {worst:.3e}"
        ))
