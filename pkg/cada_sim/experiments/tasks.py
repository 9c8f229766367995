from celery import shared_task

from cada_sim.experiments.services.config_loader import config_from_document, parse_document
from cada_sim.experiments.services.run_service import execute_run


@shared_task()
def run_experiment_task(config_text, out_path=None):
    """Execute one run from a JSON config document and summarise it."""
    document = parse_document(config_text)
    cfg = config_from_document(document)
    log, path, run = execute_run(cfg, out_path, document=document)
    return {
        "run_id": run.pk,
        "status": str(run.status),
        "uploads": log.total_uploads,
        "grad_evals": log.total_grad_evals,
        "final_loss": log.final_loss,
        "metrics_path": str(path),
    }
