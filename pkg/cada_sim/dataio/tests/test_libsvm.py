import io
from pathlib import Path

import pytest

from cada_sim.common.exceptions import DataFormatError
from cada_sim.dataio.services.libsvm import binary_labels
from cada_sim.dataio.services.libsvm import load_libsvm
from cada_sim.dataio.services.libsvm import multiclass_labels
from cada_sim.dataio.services.libsvm import parse_libsvm
from cada_sim.dataio.services.libsvm import serialize_libsvm

FIXTURES = Path(__file__).parent / "fixtures"


def test_parse_single_line():
    data = parse_libsvm("1 1:0.5 3:-2\n")
    assert data.n == 1
    assert data.p == 3
    assert list(data.samples()) == [(1.0, {0: 0.5, 2: -2.0})]


def test_parse_skips_blank_lines():
    data = parse_libsvm("+1 2:1\n\n-1 1:4\n")
    assert data.n == 2
    assert data.p == 2
    assert list(data.samples()) == [(1.0, {1: 1.0}), (-1.0, {0: 4.0})]


def test_p_hint_widens_dimension():
    assert parse_libsvm("1 1:1\n", p_hint=7).p == 7
    assert parse_libsvm("1 5:1\n", p_hint=2).p == 5


@pytest.mark.parametrize(
    ("text", "line_number"),
    [
        ("abc 1:0.5\n", 1),
        ("1 1:0.5\n1 0:1\n", 2),
        ("1 1:0.5\n\n1 2:x\n", 3),
        ("1 2:1 2:3\n", 1),
        ("1 1:0.5 nocolon\n", 1),
    ],
)
def test_malformed_input_reports_line(text, line_number):
    with pytest.raises(DataFormatError) as exc_info:
        parse_libsvm(text)
    assert exc_info.value.line_number == line_number
    assert f"line {line_number}" in str(exc_info.value)


def test_empty_input_is_rejected():
    with pytest.raises(DataFormatError):
        parse_libsvm("\n\n")


def test_fixture_parses_to_expected_samples():
    data = load_libsvm(FIXTURES / "small_binary.svm")
    assert data.p == 4
    assert sorted(data.samples(), key=repr) == sorted(
        [
            (1.0, {0: 0.5, 2: -2.0}),
            (-1.0, {1: 1.25}),
            (1.0, {0: 1.0, 1: 2.0, 2: 3.0}),
            (0.0, {3: 0.001}),
        ],
        key=repr,
    )


@pytest.mark.parametrize(
    ("name", "line_number"),
    [
        ("malformed_indices.svm", 2),
        ("malformed_token.svm", 3),
        ("invalid_utf8.svm", 2),
    ],
)
def test_malformed_fixtures_are_rejected(name, line_number):
    with pytest.raises(DataFormatError) as exc_info:
        load_libsvm(FIXTURES / name)
    assert exc_info.value.line_number == line_number


def test_serialize_then_parse_preserves_samples():
    data = load_libsvm(FIXTURES / "small_binary.svm")
    sink = io.StringIO()
    serialize_libsvm(data, sink)
    again = parse_libsvm(sink.getvalue(), p_hint=data.p)
    assert list(again.samples()) == list(data.samples())


def test_binary_labels_map_to_plus_minus_one():
    data = binary_labels(load_libsvm(FIXTURES / "small_binary.svm"))
    assert data.labels.tolist() == [1.0, -1.0, 1.0, -1.0]


def test_binary_labels_reject_other_values():
    with pytest.raises(DataFormatError):
        binary_labels(parse_libsvm("2 1:1\n"))


def test_multiclass_labels_shift_one_based_classes():
    data, classes = multiclass_labels(load_libsvm(FIXTURES / "multiclass.svm"))
    assert classes == 3
    assert data.labels.tolist() == [0.0, 1.0, 2.0, 1.0]


def test_undecodable_bytes_report_line():
    with pytest.raises(DataFormatError) as exc_info:
        parse_libsvm(b"1 1:0.5\n-1 2:1\n\xff 1:2\n")
    assert exc_info.value.line_number == 3
    assert "UTF-8" in str(exc_info.value)
