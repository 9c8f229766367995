from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from cada_sim.common.compat import StrEnum
from cada_sim.common.exceptions import ContractError
from cada_sim.problems.services.datasets import Dataset

logger = logging.getLogger(__name__)


class PartitionKind(StrEnum):
    UNIFORM = "uniform"
    RANDOM_SIZES = "random_sizes"


@dataclass(frozen=True)
class PartitionStrategy:
    kind: PartitionKind = PartitionKind.UNIFORM
    seed: int | None = None


@dataclass(frozen=True)
class Shard:
    worker_id: int
    dataset: Dataset

    @property
    def size(self) -> int:
        return self.dataset.n


def shard_sizes(n: int, workers: int, strategy: PartitionStrategy, rng: np.random.Generator) -> list[int]:
    if strategy.kind == PartitionKind.UNIFORM:
        base, extra = divmod(n, workers)
        return [base + 1 if m < extra else base for m in range(workers)]

    size_rng = rng if strategy.seed is None else np.random.default_rng(strategy.seed)
    cuts = np.sort(size_rng.choice(np.arange(1, n), size=workers - 1, replace=False))
    bounds = np.concatenate(([0], cuts, [n]))
    return np.diff(bounds).astype(int).tolist()


def partition(data: Dataset, workers: int, strategy: PartitionStrategy, seed: int) -> list[Shard]:
    """
    Split ``data`` into ``workers`` disjoint shards covering every sample.

    Samples are assigned from a seeded permutation; inside a shard they keep
    their original relative order.
    """
    if workers < 1:
        raise ContractError(f"need at least one worker, got {workers}")
    if data.n < workers:
        raise ContractError(f"cannot split {data.n} samples across {workers} workers")

    rng = np.random.default_rng(seed)
    order = rng.permutation(data.n)
    sizes = shard_sizes(data.n, workers, strategy, rng)

    shards = []
    start = 0
    for worker_id, size in enumerate(sizes):
        indices = np.sort(order[start:start + size])
        shards.append(Shard(worker_id=worker_id, dataset=data.subset(indices)))
        start += size

    logger.info(
        "Partitioned %d samples across %d workers (%s), sizes %d..%d",
        data.n, workers, strategy.kind, min(sizes), max(sizes),
    )
    return shards
