import pytest

from cada_sim.commrules.services.rules import RuleConfig
from cada_sim.dataio.services.workload import ProblemConfig
from cada_sim.engine.services.config import Algorithm, ExperimentConfig
from cada_sim.optimizer.services.schedules import StepSchedule
from cada_sim.problems.services.specs import ProblemKind


@pytest.fixture(autouse=True)
def _output_dir(settings, tmp_path) -> None:
    settings.CADA_SIM_OUTPUT_DIR = tmp_path


@pytest.fixture
def logreg_problem() -> ProblemConfig:
    return ProblemConfig(kind=ProblemKind.BINARY_LOGISTIC, p=5, n=200, heterogeneity=0.3)


@pytest.fixture
def make_config(logreg_problem):
    """Small, fast experiment; keyword arguments override any field."""

    def _make(**overrides) -> ExperimentConfig:
        values = {
            "problem": logreg_problem,
            "workers": 4,
            "algorithm": Algorithm.CADA2,
            "schedule": StepSchedule.constant(0.01),
            "rounds": 30,
            "rule": RuleConfig(c=1.0, d_max=10, max_delay=10),
            "batch_size": 5,
            "seed": 0,
            "checked": True,
        }
        values.update(overrides)
        return ExperimentConfig(**values)

    return _make
