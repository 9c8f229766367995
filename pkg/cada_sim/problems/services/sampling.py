from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from cada_sim.common.exceptions import ContractError


@dataclass(frozen=True, eq=False)
class Minibatch:
    indices: npt.NDArray[np.intp]

    def __post_init__(self):
        if self.indices.ndim != 1 or self.indices.shape[0] < 1:
            raise ContractError("a minibatch needs at least one index")

    def __len__(self):
        return self.indices.shape[0]

    def check_bounds(self, shard_size: int):
        if self.indices.min() < 0 or self.indices.max() >= shard_size:
            raise ContractError(f"minibatch index outside shard of size {shard_size}")


def sample_minibatch(shard_size: int, batch_size: int, rng: np.random.Generator) -> Minibatch:
    """Draw ``batch_size`` distinct indices uniformly from ``range(shard_size)``."""
    if not 1 <= batch_size <= shard_size:
        raise ContractError(
            f"batch size must be in [1, {shard_size}], got {batch_size}"
        )
    indices = rng.choice(shard_size, size=batch_size, replace=False)
    return Minibatch(indices=np.asarray(indices, dtype=np.intp))
