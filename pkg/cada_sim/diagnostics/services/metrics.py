"""
Per-round metrics of a simulation.

Record 0 is the evaluation at the initial parameters. Record k (k >= 1)
describes round k - 1: the stepsize it used, how many workers uploaded,
and the parameters it produced, evaluated when k is an evaluation round.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from cada_sim.common.exceptions import ContractError
from cada_sim.diagnostics.services.monitors import MonitorViolation
from cada_sim.numerics.services.vectors import ParamVector


@dataclass(frozen=True)
class RoundRecord:
    round: int
    loss: float | None
    grad_norm_sq: float | None
    uploads: int
    cum_uploads: int
    cum_grad_evals: int
    alpha: float | None
    forced: int = 0
    mean_lhs: float | None = None
    mean_rhs: float | None = None

    @property
    def evaluated(self) -> bool:
        return self.loss is not None


@dataclass
class MetricsLog:
    workers: int
    records: list[RoundRecord] = field(default_factory=list)
    violations: list[MonitorViolation] = field(default_factory=list)
    final_theta: ParamVector | None = None

    def append(self, record: RoundRecord):
        if self.records:
            last = self.records[-1]
            if record.round != last.round + 1:
                raise ContractError(f"record for round {record.round} follows round {last.round}")
            if record.cum_uploads < last.cum_uploads or record.cum_grad_evals < last.cum_grad_evals:
                raise ContractError("cumulative counters must not decrease")
        if record.cum_uploads > self.workers * record.round:
            raise ContractError(
                f"{record.cum_uploads} uploads after {record.round} rounds of {self.workers} workers"
            )
        self.records.append(record)

    def __len__(self):
        return len(self.records)

    @property
    def rounds(self) -> int:
        return self.records[-1].round if self.records else 0

    @property
    def total_uploads(self) -> int:
        return self.records[-1].cum_uploads if self.records else 0

    @property
    def total_grad_evals(self) -> int:
        return self.records[-1].cum_grad_evals if self.records else 0

    @property
    def evaluated(self) -> list[RoundRecord]:
        return [r for r in self.records if r.evaluated]

    @property
    def final_loss(self) -> float | None:
        evaluated = self.evaluated
        return evaluated[-1].loss if evaluated else None

    @property
    def upload_fraction(self) -> float:
        if self.rounds == 0:
            return 0.0
        return self.total_uploads / (self.workers * self.rounds)
