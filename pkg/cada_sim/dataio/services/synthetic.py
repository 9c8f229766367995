from __future__ import annotations

import numpy as np
from scipy.special import expit

from cada_sim.common.exceptions import ContractError
from cada_sim.dataio.services.partition import PartitionKind, PartitionStrategy, Shard, shard_sizes
from cada_sim.numerics.services.vectors import ParamVector
from cada_sim.problems.services.datasets import Dataset
from cada_sim.problems.services.specs import DEFAULT_LAMBDA, ProblemKind, ProblemSpec


def gen_synthetic_logreg(
    p: int, n: int, workers: int, seed: int, heterogeneity: float = 0.0,
) -> list[Shard]:
    """
    Binary logistic-regression data spread over ``workers`` shards.

    Worker m draws its features from N(heterogeneity * s_m, I) with a
    worker-specific direction s_m ~ N(0, I); labels follow the logistic
    model of a shared ground-truth parameter. ``heterogeneity=0`` gives
    i.i.d. shards.
    """
    if min(p, n, workers) < 1:
        raise ContractError("p, n and workers must all be >= 1")
    if n < workers:
        raise ContractError(f"cannot give {workers} workers a sample each out of {n}")
    if not 0.0 <= heterogeneity <= 1.0:
        raise ContractError(f"heterogeneity must be in [0, 1], got {heterogeneity}")

    rng = np.random.default_rng(seed)
    theta_true = rng.normal(size=p) * (2.0 / np.sqrt(p))
    sizes = shard_sizes(n, workers, PartitionStrategy(PartitionKind.UNIFORM), rng)

    shards = []
    for worker_id, size in enumerate(sizes):
        shift = heterogeneity * rng.normal(size=p)
        features = rng.normal(size=(size, p)) + shift
        positive = rng.random(size) < expit(features @ theta_true)
        labels = np.where(positive, 1.0, -1.0)
        shards.append(Shard(worker_id=worker_id, dataset=Dataset.from_arrays(features, labels)))
    return shards


def gen_synthetic_softmax(
    d: int, n: int, workers: int, classes: int, seed: int, heterogeneity: float = 0.0,
) -> list[Shard]:
    """Multiclass counterpart of ``gen_synthetic_logreg`` with softmax labels."""
    if min(d, n, workers) < 1 or classes < 2:
        raise ContractError("d, n, workers must be >= 1 and classes >= 2")
    if n < workers:
        raise ContractError(f"cannot give {workers} workers a sample each out of {n}")
    if not 0.0 <= heterogeneity <= 1.0:
        raise ContractError(f"heterogeneity must be in [0, 1], got {heterogeneity}")

    rng = np.random.default_rng(seed)
    weights = rng.normal(size=(classes, d)) * (2.0 / np.sqrt(d))
    sizes = shard_sizes(n, workers, PartitionStrategy(PartitionKind.UNIFORM), rng)

    shards = []
    for worker_id, size in enumerate(sizes):
        shift = heterogeneity * rng.normal(size=d)
        features = rng.normal(size=(size, d)) + shift
        # Gumbel-max draws one class per row from softmax(features @ weights.T)
        noisy = features @ weights.T + rng.gumbel(size=(size, classes))
        labels = np.argmax(noisy, axis=1).astype(np.float64)
        shards.append(Shard(worker_id=worker_id, dataset=Dataset.from_arrays(features, labels)))
    return shards


def gen_quadratic(
    p: int, n: int, seed: int, cond: float = 1.0, lam: float = DEFAULT_LAMBDA,
) -> tuple[ProblemSpec, ParamVector]:
    """
    Least-squares problem whose Hessian has condition number ~ ``cond``.

    The design is U diag(s) V^T with orthonormal U, V, so the data part of
    the Hessian has eigenvalues spread geometrically over [1, cond]. Returns
    the problem and its exact minimizer.
    """
    if min(p, n) < 1 or n < p:
        raise ContractError(f"quadratic needs 1 <= p <= n, got p={p}, n={n}")
    if not cond >= 1.0:
        raise ContractError(f"condition number must be >= 1, got {cond}")

    rng = np.random.default_rng(seed)
    left, _ = np.linalg.qr(rng.normal(size=(n, p)))
    right, _ = np.linalg.qr(rng.normal(size=(p, p)))
    eigenvalues = np.geomspace(1.0, cond, p)
    design = left @ np.diag(np.sqrt(n * eigenvalues)) @ right.T

    theta_true = rng.normal(size=p)
    targets = design @ theta_true + 0.5 * rng.normal(size=n)

    spec = ProblemSpec(ProblemKind.QUADRATIC, p=p, lam=lam, design=design, targets=targets)
    theta_star = np.linalg.solve(spec.hessian(), design.T @ targets / n)
    return spec, theta_star
