"""
Round-based simulation of the server and its workers.

Each round the server broadcasts theta, every worker runs its rule check
(optionally on a thread pool), and the server folds the messages in
ascending worker order before stepping. Results are identical for any
thread count.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from cada_sim.common.exceptions import ConfigError
from cada_sim.dataio.services.workload import Workload, build_workload
from cada_sim.diagnostics.services.metrics import MetricsLog, RoundRecord
from cada_sim.diagnostics.services.monitors import check_momentum_bounds, check_step_bound, failures
from cada_sim.diagnostics.services.trackers import GradNormTracker, update_tracker
from cada_sim.engine.services.config import Algorithm, ExperimentConfig
from cada_sim.engine.services.local_momentum import run_local_momentum
from cada_sim.engine.services.server import RoundSummary, ServerState, ServerUpdate, server_round
from cada_sim.engine.services.worker import WorkerState, worker_round
from cada_sim.numerics.services.vectors import zeros
from cada_sim.optimizer.services.schedules import stepsize
from cada_sim.problems.services.oracles import evaluate_objective

logger = logging.getLogger(__name__)


class CadaSimulation:
    """One simulation; owns the server, the workers and the metrics log."""

    def __init__(self, cfg: ExperimentConfig, workload: Workload | None = None):
        if cfg.algorithm == Algorithm.LOCAL_MOMENTUM:
            raise ConfigError("local momentum runs through run_local_momentum")
        self.cfg = cfg
        self.workload = workload or build_workload(cfg.problem, cfg.workers, cfg.seed)
        theta0 = zeros(self.workload.spec.p)
        self.server = ServerState.initial(theta0)
        self.workers = [
            WorkerState.initial(
                shard.worker_id, theta0, cfg.rule, cfg.seed, cfg.batch_size_for(shard.size),
            )
            for shard in self.workload.shards
        ]
        self.tracker = GradNormTracker.empty(cfg.workers)
        self.log = MetricsLog(workers=cfg.workers)
        self._cum_uploads = 0
        self._cum_grad_evals = 0

        loss, grad_sq = evaluate_objective(self.workload.spec, self.workload.shards, theta0)
        self.log.append(RoundRecord(0, loss, grad_sq, 0, 0, 0, None))

    @property
    def round(self) -> int:
        return self.server.round

    def aggregate_drift(self) -> float:
        """Largest gap between the server aggregate and the mean of the workers' last uploads."""
        direct = np.mean([w.last_upload_grad for w in self.workers], axis=0)
        return float(np.max(np.abs(self.server.aggregate - direct)))

    def _worker_phase(self, executor: ThreadPoolExecutor | None):
        theta, k = self.server.theta, self.server.round
        spec, rule = self.workload.spec, self.cfg.rule

        def run(index):
            return worker_round(self.workers[index], theta, rule, spec, self.workload.shards[index], k)

        indices = range(len(self.workers))
        if executor is None:
            return [run(i) for i in indices]
        return list(executor.map(run, indices))

    def step(self, executor: ThreadPoolExecutor | None = None) -> RoundSummary:
        cfg = self.cfg
        k = self.server.round
        alpha = stepsize(cfg.schedule, k)

        results = self._worker_phase(executor)
        self.workers = [state for state, _ in results]
        messages = [message for _, message in results]
        for message in messages:
            self.tracker = update_tracker(self.tracker, message.worker_id, message.fresh_grad)

        previous = self.server
        self.server, summary = server_round(
            previous, messages, cfg.adam, alpha, cfg.workers, cfg.server_update,
        )
        self.workers = [w.observe_step(summary.step_sq_norm) for w in self.workers]

        if cfg.checked and cfg.server_update == ServerUpdate.ADAM:
            results = check_momentum_bounds(self.server.adam, self.tracker)
            results.append(check_step_bound(self.server.theta, previous.theta, alpha, cfg.adam))
            self.log.violations.extend(failures(results, k))

        self._record(summary)
        return summary

    def _record(self, summary: RoundSummary):
        k = self.server.round
        self._cum_uploads += summary.uploads
        self._cum_grad_evals += summary.grad_evals
        loss = grad_sq = None
        if self.cfg.evaluates(k):
            loss, grad_sq = evaluate_objective(self.workload.spec, self.workload.shards, self.server.theta)
        self.log.append(
            RoundRecord(
                round=k,
                loss=loss,
                grad_norm_sq=grad_sq,
                uploads=summary.uploads,
                cum_uploads=self._cum_uploads,
                cum_grad_evals=self._cum_grad_evals,
                alpha=summary.alpha,
                forced=summary.forced,
                mean_lhs=summary.mean_lhs,
                mean_rhs=summary.mean_rhs,
            )
        )
        logger.debug("Round %d: %d uploads, loss=%s", k - 1, summary.uploads, loss)

    def run(self, on_round=None) -> MetricsLog:
        cfg = self.cfg
        logger.info(
            "Running %s (%s): M=%d, K=%d, seed=%d", cfg.name, cfg.algorithm, cfg.workers, cfg.rounds, cfg.seed,
        )
        executor = ThreadPoolExecutor(max_workers=cfg.threads) if cfg.threads > 1 else None
        try:
            while self.server.round < cfg.rounds:
                summary = self.step(executor)
                if on_round is not None:
                    on_round(self, summary)
        finally:
            if executor is not None:
                executor.shutdown()

        self.log.final_theta = self.server.theta
        logger.info(
            "Finished %s: %d uploads, %d gradient evaluations, final loss %.6g, %d monitor violations",
            cfg.name, self.log.total_uploads, self.log.total_grad_evals,
            self.log.final_loss, len(self.log.violations),
        )
        return self.log


def run_experiment(cfg: ExperimentConfig, on_round=None, workload: Workload | None = None) -> MetricsLog:
    if cfg.algorithm == Algorithm.LOCAL_MOMENTUM:
        return run_local_momentum(cfg, workload=workload)
    return CadaSimulation(cfg, workload).run(on_round=on_round)
