"""
Local momentum baseline.

Every worker runs heavy-ball SGD on its own copy of the parameters; every
H rounds the copies are replaced by their mean, which costs one upload per
worker. Velocities stay local. The evaluated model is the mean of the
copies.
"""
from __future__ import annotations

import logging

import numpy as np

from cada_sim.dataio.services.workload import Workload, build_workload
from cada_sim.diagnostics.services.metrics import MetricsLog, RoundRecord
from cada_sim.engine.services.config import ExperimentConfig
from cada_sim.engine.services.worker import worker_rng
from cada_sim.numerics.services.vectors import zeros
from cada_sim.optimizer.services.momentum import MomentumState, momentum_sgd_step
from cada_sim.optimizer.services.schedules import stepsize
from cada_sim.problems.services.oracles import evaluate_objective, gradient
from cada_sim.problems.services.sampling import sample_minibatch

logger = logging.getLogger(__name__)


def run_local_momentum(cfg: ExperimentConfig, workload: Workload | None = None) -> MetricsLog:
    workload = workload or build_workload(cfg.problem, cfg.workers, cfg.seed)
    spec, shards = workload.spec, workload.shards
    p = spec.p

    thetas = [zeros(p) for _ in shards]
    velocities = [MomentumState.zeros(p) for _ in shards]
    rngs = [worker_rng(cfg.seed, shard.worker_id) for shard in shards]
    batch_sizes = [cfg.batch_size_for(shard.size) for shard in shards]

    log = MetricsLog(workers=cfg.workers)
    loss, grad_sq = evaluate_objective(spec, shards, zeros(p))
    log.append(RoundRecord(0, loss, grad_sq, 0, 0, 0, None))
    logger.info(
        "Running %s (local momentum): M=%d, K=%d, H=%d", cfg.name, cfg.workers, cfg.rounds, cfg.averaging_interval,
    )

    cum_uploads = 0
    for k in range(cfg.rounds):
        alpha = stepsize(cfg.schedule, k)
        for m, shard in enumerate(shards):
            batch = sample_minibatch(shard.size, batch_sizes[m], rngs[m])
            g = gradient(spec, shard.dataset, thetas[m], batch)
            velocities[m], thetas[m] = momentum_sgd_step(velocities[m], g, thetas[m], alpha, cfg.momentum)

        uploads = 0
        if (k + 1) % cfg.averaging_interval == 0:
            mean = np.mean(thetas, axis=0)
            thetas = [mean.copy() for _ in shards]
            uploads = cfg.workers
        cum_uploads += uploads

        loss = grad_sq = None
        if cfg.evaluates(k + 1):
            loss, grad_sq = evaluate_objective(spec, shards, np.mean(thetas, axis=0))
        log.append(
            RoundRecord(
                round=k + 1,
                loss=loss,
                grad_norm_sq=grad_sq,
                uploads=uploads,
                cum_uploads=cum_uploads,
                cum_grad_evals=(k + 1) * cfg.workers,
                alpha=alpha,
            )
        )

    log.final_theta = np.mean(thetas, axis=0)
    logger.info("Finished %s: %d uploads, final loss %.6g", cfg.name, log.total_uploads, log.final_loss)
    return log
