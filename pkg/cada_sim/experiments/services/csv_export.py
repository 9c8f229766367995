"""
Metrics CSV files.

Reals are written with ``repr`` (shortest text that reads back to the same
float); cells that were not evaluated stay empty. Output is a pure function
of the log, so equal logs give byte-identical files.
"""
from __future__ import annotations

import csv
import io

from cada_sim.diagnostics.services.metrics import MetricsLog

METRICS_HEADER = ["round", "loss", "grad_norm_sq", "uploads", "cum_uploads", "cum_grad_evals", "alpha"]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_rows(header, rows, sink):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(value) for value in row])
    sink.write(buffer.getvalue().encode("utf-8"))


def write_metrics_csv(log: MetricsLog, sink):
    rows = (
        (r.round, r.loss, r.grad_norm_sq, r.uploads, r.cum_uploads, r.cum_grad_evals, r.alpha)
        for r in log.records
    )
    _write_rows(METRICS_HEADER, rows, sink)


def write_curve_csv(curves: dict[str, list[tuple[int, float]]], sink):
    """Columns ``round`` plus one per curve; rounds missing from a curve stay empty."""
    names = list(curves)
    columns = {name: dict(points) for name, points in curves.items()}
    rounds = sorted({k for points in columns.values() for k in points})
    rows = ([k, *(columns[name].get(k) for name in names)] for k in rounds)
    _write_rows(["round", *names], rows, sink)
