import math

import numpy as np
import pytest

from cada_sim.common.exceptions import DimensionMismatchError
from cada_sim.diagnostics.services.gradcheck import finite_diff_gradcheck
from cada_sim.problems.services.datasets import Dataset
from cada_sim.problems.services.oracles import gradient, loss
from cada_sim.problems.services.sampling import Minibatch
from cada_sim.problems.services.specs import ProblemKind, ProblemSpec


def _binary_data(rng, n=30, p=4):
    features = rng.normal(size=(n, p))
    labels = np.where(rng.random(n) < 0.5, 1.0, -1.0)
    return Dataset.from_arrays(features, labels)


def _multiclass_data(rng, n=30, d=4, classes=3):
    features = rng.normal(size=(n, d))
    labels = rng.integers(0, classes, size=n)
    return Dataset.from_arrays(features, labels)


def _quadratic(rng, n=12, p=4):
    design = rng.normal(size=(n, p))
    targets = rng.normal(size=n)
    spec = ProblemSpec(ProblemKind.QUADRATIC, p=p, lam=1e-3, design=design, targets=targets)
    return spec, spec.as_dataset()


def test_binary_logistic_loss_at_zero_is_ln2():
    rng = np.random.default_rng(0)
    data = _binary_data(rng)
    spec = ProblemSpec(ProblemKind.BINARY_LOGISTIC, p=4, lam=0.0)
    assert loss(spec, data, np.zeros(4)) == pytest.approx(math.log(2.0), rel=1e-12)


def test_binary_logistic_single_sample():
    data = Dataset.from_arrays([[1.0, 0.0]], [1.0])
    spec = ProblemSpec(ProblemKind.BINARY_LOGISTIC, p=2, lam=0.0)
    theta = np.array([1.0, 0.0])
    assert loss(spec, data, theta) == pytest.approx(0.313262, abs=1e-6)
    assert gradient(spec, data, theta, Minibatch(np.array([0]))) == pytest.approx(
        [-0.268941, 0.0], abs=1e-6,
    )


def test_quadratic_loss_is_mean_over_samples():
    spec = ProblemSpec(
        ProblemKind.QUADRATIC, p=2, lam=0.0, design=np.eye(2), targets=np.zeros(2),
    )
    assert loss(spec, spec.as_dataset(), np.array([3.0, 4.0])) == pytest.approx(6.25)


def test_quadratic_gradient_vanishes_at_minimizer():
    rng = np.random.default_rng(1)
    spec, data = _quadratic(rng)
    theta_star = np.linalg.solve(spec.hessian(), spec.design.T @ spec.targets / spec.design.shape[0])
    assert np.linalg.norm(gradient(spec, data, theta_star)) <= 1e-10


def test_regularizer_vanishes_at_zero():
    rng = np.random.default_rng(2)
    data = _binary_data(rng)
    with_reg = ProblemSpec(ProblemKind.BINARY_LOGISTIC, p=4, lam=0.5)
    without_reg = ProblemSpec(ProblemKind.BINARY_LOGISTIC, p=4, lam=0.0)
    assert loss(with_reg, data, np.zeros(4)) == loss(without_reg, data, np.zeros(4))


@pytest.mark.parametrize("classes", [2, 3, 5])
def test_multiclass_loss_at_zero_is_ln_classes(classes):
    rng = np.random.default_rng(classes)
    data = _multiclass_data(rng, classes=classes)
    spec = ProblemSpec(ProblemKind.MULTICLASS_LOGISTIC, p=4 * classes, lam=0.0, classes=classes)
    assert loss(spec, data, np.zeros(4 * classes)) == pytest.approx(math.log(classes), rel=1e-12)


def test_batch_loss_is_mean_not_sum():
    rng = np.random.default_rng(4)
    data = _binary_data(rng)
    spec = ProblemSpec(ProblemKind.BINARY_LOGISTIC, p=4, lam=0.0)
    theta = rng.normal(size=4)
    batch = Minibatch(np.array([3, 7]))
    expected = np.mean([loss(spec, data, theta, Minibatch(np.array([i]))) for i in (3, 7)])
    assert loss(spec, data, theta, batch) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("kind", list(ProblemKind))
def test_gradient_agrees_with_finite_differences(kind):
    rng = np.random.default_rng(7)
    if kind == ProblemKind.BINARY_LOGISTIC:
        spec, data = ProblemSpec(kind, p=4, lam=1e-5), _binary_data(rng)
    elif kind == ProblemKind.MULTICLASS_LOGISTIC:
        spec, data = ProblemSpec(kind, p=12, lam=1e-5, classes=3), _multiclass_data(rng)
    else:
        spec, data = _quadratic(rng)

    for _ in range(20):
        theta = rng.normal(size=spec.p)
        batch = Minibatch(rng.choice(data.n, size=5, replace=False))
        assert finite_diff_gradcheck(spec, data, theta, batch, h=1e-6) <= 1e-5


def test_quadratic_satisfies_gradient_domination():
    rng = np.random.default_rng(11)
    spec, data = _quadratic(rng)
    hessian = spec.hessian()
    mu = np.linalg.eigvalsh(hessian)[0]
    theta_star = np.linalg.solve(hessian, spec.design.T @ spec.targets / spec.design.shape[0])
    best = loss(spec, data, theta_star)
    for _ in range(20):
        theta = theta_star + rng.normal(size=spec.p) * 3
        grad = gradient(spec, data, theta)
        assert loss(spec, data, theta) - best <= np.dot(grad, grad) / (2 * mu) * (1 + 1e-9)


def test_dimension_mismatch_is_rejected():
    rng = np.random.default_rng(5)
    data = _binary_data(rng)
    spec = ProblemSpec(ProblemKind.BINARY_LOGISTIC, p=4)
    with pytest.raises(DimensionMismatchError):
        loss(spec, data, np.zeros(3))
    with pytest.raises(DimensionMismatchError):
        gradient(ProblemSpec(ProblemKind.BINARY_LOGISTIC, p=5), data, np.zeros(5))
