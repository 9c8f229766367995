from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from cada_sim.common.compat import StrEnum
from cada_sim.common.choices import coerce_choice
from cada_sim.common.exceptions import ConfigError
from cada_sim.commrules.services.rules import RuleConfig, RuleKind
from cada_sim.dataio.services.workload import ProblemConfig
from cada_sim.engine.services.server import ServerUpdate
from cada_sim.optimizer.services.adam import AdamConfig
from cada_sim.optimizer.services.schedules import StepSchedule


class Algorithm(StrEnum):
    ADAM = "adam"
    LAG = "lag"
    CADA1 = "cada1"
    CADA2 = "cada2"
    LOCAL_MOMENTUM = "local_momentum"


RULE_FOR_ALGORITHM = {
    Algorithm.ADAM: RuleKind.ALWAYS_UPLOAD,
    Algorithm.LAG: RuleKind.LAG,
    Algorithm.CADA1: RuleKind.CADA1,
    Algorithm.CADA2: RuleKind.CADA2,
    Algorithm.LOCAL_MOMENTUM: RuleKind.ALWAYS_UPLOAD,
}


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Everything one simulation needs.

    The communication rule follows from ``algorithm``; ``rule`` only
    carries its constants (c, d_max, D). ``batch_size`` wins over
    ``batch_ratio``, which becomes max(1, ceil(ratio * shard_size)) per
    worker.
    """

    problem: ProblemConfig
    workers: int
    algorithm: Algorithm
    schedule: StepSchedule
    rounds: int
    rule: RuleConfig = field(default_factory=RuleConfig)
    adam: AdamConfig = field(default_factory=AdamConfig)
    batch_size: int | None = None
    batch_ratio: float | None = None
    averaging_interval: int = 10
    momentum: float = 0.9
    eval_every: int = 10
    seed: int = 0
    name: str = "experiment"
    output: str | None = None
    checked: bool = False
    threads: int = 1
    server_update: ServerUpdate = ServerUpdate.ADAM

    def __post_init__(self):
        object.__setattr__(self, "algorithm", coerce_choice(Algorithm, self.algorithm, what="algorithm"))
        object.__setattr__(self, "server_update", coerce_choice(ServerUpdate, self.server_update, what="server update"))
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.rounds < 0:
            raise ConfigError(f"rounds must be >= 0, got {self.rounds}")
        if self.batch_size is None and self.batch_ratio is None:
            raise ConfigError("set batch_size or batch_ratio")
        if self.batch_size is not None and self.batch_size < 1:
            raise ConfigError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.batch_ratio is not None and not 0.0 < self.batch_ratio <= 1.0:
            raise ConfigError(f"batch_ratio must be in (0, 1], got {self.batch_ratio}")
        if self.averaging_interval < 1:
            raise ConfigError(f"averaging interval H must be >= 1, got {self.averaging_interval}")
        if not 0.0 <= self.momentum < 1.0:
            raise ConfigError(f"momentum must be in [0, 1), got {self.momentum}")
        if self.eval_every < 1:
            raise ConfigError(f"eval_every must be >= 1, got {self.eval_every}")
        if self.threads < 1:
            raise ConfigError(f"threads must be >= 1, got {self.threads}")
        kind = RULE_FOR_ALGORITHM[self.algorithm]
        if self.rule.kind != kind:
            object.__setattr__(self, "rule", replace(self.rule, kind=kind))

    def batch_size_for(self, shard_size: int) -> int:
        if self.batch_size is not None:
            return min(self.batch_size, shard_size)
        return max(1, min(shard_size, math.ceil(self.batch_ratio * shard_size)))

    def evaluates(self, k: int) -> bool:
        return k % self.eval_every == 0 or k == self.rounds
