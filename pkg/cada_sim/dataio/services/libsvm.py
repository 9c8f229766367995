"""
LIBSVM text format: ``<label> <idx>:<val> <idx>:<val> ...``.

Indices are 1-based and strictly ascending on disk and 0-based in memory.
"""
from __future__ import annotations

import io
import logging

import numpy as np
from scipy import sparse

from cada_sim.common.exceptions import DataFormatError
from cada_sim.problems.services.datasets import Dataset

logger = logging.getLogger(__name__)


def _parse_label(token: str, line_number: int) -> float:
    try:
        label = float(token)
    except ValueError:
        raise DataFormatError(f"unreadable label {token!r}", line_number) from None
    if not np.isfinite(label):
        raise DataFormatError(f"non-finite label {token!r}", line_number)
    return label


def _parse_feature(token: str, previous: int, line_number: int) -> tuple[int, float]:
    index_text, sep, value_text = token.partition(":")
    if not sep:
        raise DataFormatError(f"malformed token {token!r}", line_number)
    try:
        index = int(index_text)
        value = float(value_text)
    except ValueError:
        raise DataFormatError(f"malformed token {token!r}", line_number) from None
    if index < 1:
        raise DataFormatError(f"feature index {index} is not 1-based", line_number)
    if index <= previous:
        raise DataFormatError(
            f"feature indices must ascend, got {index} after {previous}", line_number,
        )
    if not np.isfinite(value):
        raise DataFormatError(f"non-finite value in {token!r}", line_number)
    return index, value


def _decode_line(raw: bytes, line_number: int) -> str:
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DataFormatError(f"invalid UTF-8 at byte {exc.start}", line_number) from None


def parse_libsvm(text, p_hint: int | None = None) -> Dataset:
    """
    Parse LIBSVM text (a string, bytes, or any iterable of lines).

    Byte lines are decoded as UTF-8; undecodable lines are format errors.

    Blank lines and ``#`` comments are skipped. The feature dimension is the
    largest index seen, or ``p_hint`` when that is larger.
    """
    if isinstance(text, str):
        text = io.StringIO(text)
    elif isinstance(text, bytes):
        text = io.BytesIO(text)

    labels = []
    rows, columns, values = [], [], []
    max_index = 0

    for line_number, raw in enumerate(text, start=1):
        if isinstance(raw, bytes):
            raw = _decode_line(raw, line_number)
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        label_token, *feature_tokens = line.split()
        label = _parse_label(label_token, line_number)

        previous = 0
        row = len(labels)
        for token in feature_tokens:
            index, value = _parse_feature(token, previous, line_number)
            rows.append(row)
            columns.append(index - 1)
            values.append(value)
            previous = index
        max_index = max(max_index, previous)
        labels.append(label)

    if not labels:
        raise DataFormatError("no samples found")

    p = max(max_index, p_hint or 0)
    features = sparse.csr_matrix(
        (np.asarray(values, dtype=np.float64), (np.asarray(rows), np.asarray(columns))),
        shape=(len(labels), p),
    )
    logger.info("Parsed %d LIBSVM samples with %d features", len(labels), p)
    return Dataset(features=features, labels=np.asarray(labels, dtype=np.float64))


def _format_label(label: float) -> str:
    if float(label).is_integer():
        return str(int(label))
    return repr(float(label))


def serialize_libsvm(data: Dataset, sink) -> None:
    """Write ``data`` to a text sink, values in shortest round-trip form."""
    for label, features in data.samples():
        tokens = [_format_label(label)]
        tokens.extend(f"{index + 1}:{value!r}" for index, value in features.items())
        sink.write(" ".join(tokens) + "\n")


def load_libsvm(path, p_hint: int | None = None) -> Dataset:
    with open(path, "rb") as handle:
        return parse_libsvm(handle, p_hint=p_hint)


def binary_labels(data: Dataset) -> Dataset:
    """Map labels 1/+1 to +1 and 0/-1 to -1."""
    labels = data.labels
    positive = labels == 1.0
    negative = (labels == 0.0) | (labels == -1.0)
    if not np.all(positive | negative):
        bad = sorted(set(labels[~(positive | negative)].tolist()))[:5]
        raise DataFormatError(f"binary task got labels outside {{-1, 0, 1}}: {bad}")
    return Dataset(features=data.features, labels=np.where(positive, 1.0, -1.0))


def multiclass_labels(data: Dataset, classes: int | None = None) -> tuple[Dataset, int]:
    """
    Encode labels as 0..C-1.

    Integer labels already in 0..C-1 are kept, 1..C are shifted down by
    one; anything else is mapped by sorted distinct value.
    """
    labels = data.labels
    distinct = np.unique(labels)
    count = classes or distinct.shape[0]
    if distinct.shape[0] > count:
        raise DataFormatError(f"found {distinct.shape[0]} classes, expected {count}")

    integral = bool(np.all(labels == np.round(labels)))
    if integral and labels.min() >= 0 and labels.max() < count:
        encoded = labels.copy()
    elif integral and labels.min() >= 1 and labels.max() <= count:
        encoded = labels - 1.0
    else:
        encoded = np.searchsorted(distinct, labels).astype(np.float64)
    return Dataset(features=data.features, labels=encoded), count
