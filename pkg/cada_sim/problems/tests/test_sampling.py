import numpy as np
import pytest

from cada_sim.common.exceptions import ContractError
from cada_sim.problems.services.sampling import sample_minibatch


def test_exhaustive_batch_covers_shard():
    batch = sample_minibatch(5, 5, np.random.default_rng(0))
    assert sorted(batch.indices.tolist()) == [0, 1, 2, 3, 4]


def test_single_sample_shard():
    batch = sample_minibatch(1, 1, np.random.default_rng(0))
    assert batch.indices.tolist() == [0]


def test_same_seed_replays():
    first = [sample_minibatch(50, 4, rng).indices.tolist() for rng in [np.random.default_rng(9)] * 5]
    second = [sample_minibatch(50, 4, rng).indices.tolist() for rng in [np.random.default_rng(9)] * 5]
    assert first == second


def test_indices_are_distinct():
    batch = sample_minibatch(20, 10, np.random.default_rng(1))
    assert len(set(batch.indices.tolist())) == 10


@pytest.mark.parametrize(("shard_size", "batch_size"), [(5, 0), (5, 6), (1, 2)])
def test_batch_size_out_of_range(shard_size, batch_size):
    with pytest.raises(ContractError):
        sample_minibatch(shard_size, batch_size, np.random.default_rng(0))
