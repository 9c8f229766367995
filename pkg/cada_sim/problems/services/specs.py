from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from cada_sim.common.compat import StrEnum
from cada_sim.common.choices import coerce_choice
from cada_sim.common.exceptions import ConfigError, DimensionMismatchError
from cada_sim.problems.services.datasets import Dataset

DEFAULT_LAMBDA = 1e-5


class ProblemKind(StrEnum):
    BINARY_LOGISTIC = "binary_logistic"
    MULTICLASS_LOGISTIC = "multiclass_logistic"
    QUADRATIC = "quadratic"


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    """
    Which per-sample loss the oracles evaluate, and its regularizer.

    ``p`` is the parameter dimension. For multiclass problems the
    parameters are ``classes`` contiguous blocks of ``p // classes``
    weights, one block per class. A quadratic problem carries its design
    matrix and targets; its samples are the rows of the design.
    """

    kind: ProblemKind
    p: int
    lam: float = DEFAULT_LAMBDA
    classes: int | None = None
    design: npt.NDArray[np.float64] | None = None
    targets: npt.NDArray[np.float64] | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", coerce_choice(ProblemKind, self.kind, what="problem kind"))
        if self.p < 1:
            raise ConfigError(f"dimension p must be >= 1, got {self.p}")
        if not self.lam >= 0:
            raise ConfigError(f"lambda must be >= 0, got {self.lam}")
        if self.kind == ProblemKind.MULTICLASS_LOGISTIC:
            if self.classes is None or self.classes < 2:
                raise ConfigError("multiclass logistic needs classes >= 2")
            if self.p % self.classes:
                raise ConfigError(f"p={self.p} is not a multiple of classes={self.classes}")
        if self.kind == ProblemKind.QUADRATIC:
            if self.design is None or self.targets is None:
                raise ConfigError("quadratic problem needs a design matrix and targets")
            if self.design.ndim != 2 or self.design.shape[1] != self.p:
                raise DimensionMismatchError(
                    f"design has shape {self.design.shape}, expected (n, {self.p})"
                )
            if self.targets.shape != (self.design.shape[0],):
                raise DimensionMismatchError("design rows and targets disagree")

    @property
    def feature_dim(self) -> int:
        """Number of input features each sample must have."""
        if self.kind == ProblemKind.MULTICLASS_LOGISTIC:
            return self.p // self.classes
        return self.p

    def as_dataset(self) -> Dataset:
        if self.kind != ProblemKind.QUADRATIC:
            raise ConfigError("only quadratic problems carry their own samples")
        return Dataset.from_arrays(self.design, self.targets)

    def hessian(self) -> npt.NDArray[np.float64]:
        """Exact Hessian of the full quadratic objective."""
        if self.kind != ProblemKind.QUADRATIC:
            raise ConfigError("hessian is only available for quadratic problems")
        n = self.design.shape[0]
        return self.design.T @ self.design / n + self.lam * np.eye(self.p)
