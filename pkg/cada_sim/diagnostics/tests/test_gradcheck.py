import numpy as np
import pytest

from cada_sim.common.exceptions import ContractError
from cada_sim.dataio.services.synthetic import gen_quadratic, gen_synthetic_logreg
from cada_sim.diagnostics.services.gradcheck import finite_diff_gradcheck, numeric_gradient
from cada_sim.problems.services.oracles import gradient
from cada_sim.problems.services.specs import ProblemKind, ProblemSpec


def test_binary_logistic_passes():
    rng = np.random.default_rng(0)
    data = gen_synthetic_logreg(p=6, n=40, workers=1, seed=0)[0].dataset
    spec = ProblemSpec(ProblemKind.BINARY_LOGISTIC, p=6)
    assert finite_diff_gradcheck(spec, data, rng.normal(size=6), h=1e-6) <= 1e-5


def test_quadratic_is_near_exact():
    spec, theta_star = gen_quadratic(p=5, n=20, seed=1, cond=10.0)
    theta = theta_star + np.random.default_rng(1).normal(size=5)
    assert finite_diff_gradcheck(spec, spec.as_dataset(), theta, h=1e-6) <= 1e-7


def test_scaled_gradient_is_detected():
    spec, theta_star = gen_quadratic(p=4, n=16, seed=2, cond=5.0)
    data = spec.as_dataset()
    theta = theta_star + 10.0
    analytic = gradient(spec, data, theta)
    assert np.max(np.abs(analytic)) > 1.0
    error = finite_diff_gradcheck(spec, data, theta, analytic=1.01 * analytic)
    assert error == pytest.approx(0.01 / 1.01, rel=1e-3)


def test_step_must_be_positive():
    spec, theta_star = gen_quadratic(p=2, n=4, seed=3)
    with pytest.raises(ContractError):
        numeric_gradient(spec, spec.as_dataset(), theta_star, h=0.0)
