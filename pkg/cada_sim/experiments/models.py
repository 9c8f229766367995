from django.db import models
from django.utils import timezone


class ExperimentRun(models.Model):
    """One execution of an experiment config with a given seed."""

    class Status(models.TextChoices):
        PENDING = "pending", "Pending"
        RUNNING = "running", "Running"
        COMPLETED = "completed", "Completed"
        FAILED = "failed", "Failed"

    name = models.CharField(max_length=200)
    algorithm = models.CharField(max_length=20)
    seed = models.IntegerField(default=0)
    config = models.JSONField(default=dict)
    status = models.CharField(max_length=10, choices=Status.choices, default=Status.PENDING)

    rounds = models.PositiveIntegerField(default=0)
    total_uploads = models.PositiveBigIntegerField(null=True, blank=True)
    total_grad_evals = models.PositiveBigIntegerField(null=True, blank=True)
    final_loss = models.FloatField(null=True, blank=True)
    monitor_violations = models.PositiveIntegerField(default=0)
    metrics_path = models.CharField(max_length=500, blank=True)
    error_message = models.TextField(blank=True)

    created_at = models.DateTimeField(auto_now_add=True)
    finished_at = models.DateTimeField(null=True, blank=True)

    class Meta:
        db_table = "experiments_experimentrun"
        ordering = ["-created_at"]

    def __str__(self):
        return f"{self.name} ({self.algorithm}, seed {self.seed}): {self.status}"

    def mark_running(self):
        if self.status != self.Status.PENDING:
            raise ValueError("Only pending runs can be started")

        self.status = self.Status.RUNNING
        self.save(update_fields=["status"])
        return self

    def mark_completed(self, log, metrics_path):
        if self.status != self.Status.RUNNING:
            raise ValueError("Only running runs can be completed")

        self.status = self.Status.COMPLETED
        self.rounds = log.rounds
        self.total_uploads = log.total_uploads
        self.total_grad_evals = log.total_grad_evals
        self.final_loss = log.final_loss
        self.monitor_violations = len(log.violations)
        self.metrics_path = str(metrics_path)
        self.finished_at = timezone.now()
        self.save()
        return self

    def mark_failed(self, exc):
        if self.status in (self.Status.COMPLETED, self.Status.FAILED):
            raise ValueError("Run has already finished")

        self.status = self.Status.FAILED
        self.error_message = str(exc)
        self.finished_at = timezone.now()
        self.save(update_fields=["status", "error_message", "finished_at"])
        return self
