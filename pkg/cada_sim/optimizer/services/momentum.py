from __future__ import annotations

from dataclasses import dataclass

from cada_sim.numerics.services.vectors import ParamVector, check_same_length, ensure_finite, zeros


@dataclass(frozen=True, eq=False)
class MomentumState:
    u: ParamVector

    @classmethod
    def zeros(cls, p: int) -> MomentumState:
        return cls(u=zeros(p))


def momentum_sgd_step(
    state: MomentumState, g: ParamVector, theta: ParamVector, alpha: float, beta: float,
) -> tuple[MomentumState, ParamVector]:
    """Heavy-ball step: u' = beta * u + g, theta' = theta - alpha * u'."""
    check_same_length(state.u, g, theta)
    u = beta * state.u + g
    return MomentumState(u=u), ensure_finite(theta - alpha * u, what="theta")


def sgd_step(aggregate: ParamVector, theta: ParamVector, alpha: float) -> ParamVector:
    check_same_length(aggregate, theta)
    return ensure_finite(theta - alpha * aggregate, what="theta")
