from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy import sparse

from cada_sim.common.exceptions import ContractError, DimensionMismatchError


@dataclass(frozen=True)
class Dataset:
    """
    Samples of one worker (or of the whole problem).

    ``features`` is an n x p CSR matrix, ``labels`` holds one real per row:
    +1/-1 for binary tasks, 0..C-1 for multiclass, targets b_i for the
    quadratic problem.
    """

    features: sparse.csr_matrix
    labels: npt.NDArray[np.float64]

    def __post_init__(self):
        if self.features.shape[0] < 1:
            raise ContractError("a dataset needs at least one sample")
        if self.labels.ndim != 1 or self.labels.shape[0] != self.features.shape[0]:
            raise DimensionMismatchError(
                f"{self.features.shape[0]} feature rows but {self.labels.shape[0]} labels"
            )

    @classmethod
    def from_arrays(cls, features, labels) -> Dataset:
        return cls(
            features=sparse.csr_matrix(features, dtype=np.float64),
            labels=np.asarray(labels, dtype=np.float64).ravel(),
        )

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def p(self) -> int:
        return self.features.shape[1]

    def subset(self, indices) -> Dataset:
        indices = np.asarray(indices, dtype=np.intp)
        return Dataset(features=self.features[indices], labels=self.labels[indices])

    def with_dimension(self, p: int) -> Dataset:
        """Widen the feature space to ``p`` columns (never narrows)."""
        if p < self.p:
            raise DimensionMismatchError(f"cannot narrow {self.p} features to {p}")
        if p == self.p:
            return self
        features = self.features.copy()
        features.resize((self.n, p))
        return Dataset(features=features.tocsr(), labels=self.labels)

    def samples(self):
        """Yield (label, {index: value}) pairs with 0-based indices."""
        for row in range(self.n):
            start, end = self.features.indptr[row], self.features.indptr[row + 1]
            columns = self.features.indices[start:end]
            values = self.features.data[start:end]
            order = np.argsort(columns, kind="stable")
            yield float(self.labels[row]), {
                int(columns[i]): float(values[i]) for i in order
            }


def concat(datasets) -> Dataset:
    datasets = list(datasets)
    p = max(d.p for d in datasets)
    return Dataset(
        features=sparse.vstack([d.with_dimension(p).features for d in datasets], format="csr"),
        labels=np.concatenate([d.labels for d in datasets]),
    )
