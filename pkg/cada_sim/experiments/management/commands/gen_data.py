from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from cada_sim.common.exceptions import SimulationError
from cada_sim.dataio.services.libsvm import serialize_libsvm
from cada_sim.dataio.services.synthetic import gen_synthetic_logreg
from cada_sim.problems.services.datasets import concat


class Command(BaseCommand):
    help = "Write a synthetic logistic-regression dataset as a LIBSVM file"

    def add_arguments(self, parser):
        parser.add_argument("--p", type=int, required=True, help="Number of features")
        parser.add_argument("--n", type=int, required=True, help="Number of samples")
        parser.add_argument("--workers", type=int, default=1)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--heterogeneity", type=float, default=0.0)
        parser.add_argument("--out", required=True)

    def handle(self, *args, **options):
        try:
            shards = gen_synthetic_logreg(
                options["p"], options["n"], options["workers"], options["seed"], options["heterogeneity"],
            )
            data = concat([shard.dataset for shard in shards])
            out = Path(options["out"])
            out.parent.mkdir(parents=True, exist_ok=True)
            with out.open("w", encoding="utf-8") as sink:
                serialize_libsvm(data, sink)
        except (SimulationError, OSError) as exc:
            raise CommandError(str(exc)) from exc
        self.stdout.write(self.style.SUCCESS(f"Wrote {data.n} samples with {data.p} features to {out}"))
