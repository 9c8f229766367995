from __future__ import annotations

import logging
from dataclasses import dataclass

from cada_sim.common.choices import coerce_choice
from cada_sim.common.exceptions import ConfigError
from cada_sim.dataio.services.libsvm import binary_labels, load_libsvm, multiclass_labels
from cada_sim.dataio.services.partition import PartitionKind, PartitionStrategy, Shard, partition
from cada_sim.dataio.services.synthetic import gen_quadratic, gen_synthetic_logreg, gen_synthetic_softmax
from cada_sim.numerics.services.vectors import ParamVector
from cada_sim.problems.services.specs import DEFAULT_LAMBDA, ProblemKind, ProblemSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProblemConfig:
    """
    Where the data comes from and which loss is optimized.

    ``p`` is the number of input features (the parameter dimension is
    ``p * classes`` for multiclass problems). With ``path`` set the data is
    read from a LIBSVM file and split by ``partition``; otherwise it is
    generated, with ``n``, ``heterogeneity`` (logistic) or ``cond``
    (quadratic) as knobs.
    """

    kind: ProblemKind = ProblemKind.BINARY_LOGISTIC
    path: str | None = None
    p: int | None = None
    n: int | None = None
    classes: int | None = None
    heterogeneity: float = 0.0
    cond: float = 1.0
    lam: float = DEFAULT_LAMBDA
    partition: PartitionKind = PartitionKind.UNIFORM
    data_seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", coerce_choice(ProblemKind, self.kind, what="problem kind"))
        object.__setattr__(self, "partition", coerce_choice(PartitionKind, self.partition, what="partition"))
        if self.path is None and (self.p is None or self.n is None):
            raise ConfigError("generated problems need both p and n")
        if self.kind == ProblemKind.MULTICLASS_LOGISTIC and self.path is None and not self.classes:
            raise ConfigError("generated multiclass problems need classes")
        if self.kind == ProblemKind.QUADRATIC and self.path is not None:
            raise ConfigError("quadratic problems are always generated")
        if not self.lam >= 0:
            raise ConfigError(f"lambda must be >= 0, got {self.lam}")


@dataclass(frozen=True)
class Workload:
    spec: ProblemSpec
    shards: list[Shard]
    theta_star: ParamVector | None = None

    @property
    def num_samples(self) -> int:
        return sum(shard.size for shard in self.shards)


def build_workload(cfg: ProblemConfig, workers: int, seed: int) -> Workload:
    seed = cfg.data_seed if cfg.data_seed is not None else seed

    if cfg.kind == ProblemKind.QUADRATIC:
        spec, theta_star = gen_quadratic(cfg.p, cfg.n, seed, cond=cfg.cond, lam=cfg.lam)
        shards = partition(spec.as_dataset(), workers, PartitionStrategy(cfg.partition), seed)
        return Workload(spec=spec, shards=shards, theta_star=theta_star)

    if cfg.path is not None:
        data = load_libsvm(cfg.path, p_hint=cfg.p)
        if cfg.kind == ProblemKind.BINARY_LOGISTIC:
            data, classes = binary_labels(data), None
            p = data.p
        else:
            data, classes = multiclass_labels(data, cfg.classes)
            p = data.p * classes
        spec = ProblemSpec(cfg.kind, p=p, lam=cfg.lam, classes=classes)
        shards = partition(data, workers, PartitionStrategy(cfg.partition), seed)
        logger.info("Loaded %s from %s: %d samples", cfg.kind, cfg.path, data.n)
        return Workload(spec=spec, shards=shards)

    if cfg.kind == ProblemKind.BINARY_LOGISTIC:
        shards = gen_synthetic_logreg(cfg.p, cfg.n, workers, seed, cfg.heterogeneity)
        spec = ProblemSpec(cfg.kind, p=cfg.p, lam=cfg.lam)
    else:
        shards = gen_synthetic_softmax(cfg.p, cfg.n, workers, cfg.classes, seed, cfg.heterogeneity)
        spec = ProblemSpec(cfg.kind, p=cfg.p * cfg.classes, lam=cfg.lam, classes=cfg.classes)
    return Workload(spec=spec, shards=shards)
