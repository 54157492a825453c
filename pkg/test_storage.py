"""
Test della scrittura CSV deterministica.

Uso:
    pytest test_storage.py
"""
import io

import pandas as pd
import pytest

from storage.csv_writer import CsvWriter, format_number, write_table


@pytest.mark.parametrize("value, expected", [
    (0.0, "0"),
    (24.0, "24"),
    (0.1, "0.1"),
    (1.0 / 3.0, "0.333333333333"),
    (-2.5, "-2.5"),
    (1e-4, "0.0001"),
    (1e-5, "1.00000000000e-05"),
    (1234567.0, "1.23456700000e+06"),
    (1e6, "1.00000000000e+06"),
    (-2.5e7, "-2.50000000000e+07"),
    (float("nan"), "nan"),
    (float("inf"), "inf"),
    (float("-inf"), "-inf"),
])
def test_format_number(value, expected):
    assert format_number(value) == expected


def test_format_number_precision():
    assert format_number(3.14159265, 3) == "3.14"
    assert format_number(2e-7, 3) == "2.00e-07"


def test_render_table():
    frame = pd.DataFrame({"t": [0.0, 0.5], "value": [1.0, 1.0 / 3.0]})
    assert CsvWriter().render(frame) == "t,value\n0,1\n0.5,0.333333333333\n"


def test_render_keeps_integer_columns():
    frame = pd.DataFrame({"K": [3], "bound": [2.5e-13]})
    assert CsvWriter().render(frame) == "K,bound\n3,2.50000000000e-13\n"


def test_write_to_file(tmp_path):
    frame = pd.DataFrame({"t": [1.0], "value": [2.0]})
    out = tmp_path / "nested" / "result.csv"
    text = CsvWriter(precision=5).write(frame, out)
    assert out.read_bytes() == b"t,value\n1,2\n"
    assert text == "t,value\n1,2\n"


def test_write_to_stream():
    stream = io.StringIO()
    CsvWriter().write(pd.DataFrame({"value": [24.0]}), stream=stream)
    assert stream.getvalue() == "value\n24\n"


def test_write_is_deterministic(tmp_path):
    frame = pd.DataFrame({"t": [0.01 * k for k in range(50)], "y": [1.0 / (k + 1) for k in range(50)]})
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    write_table(frame, first)
    write_table(frame, second)
    assert first.read_bytes() == second.read_bytes()


def test_write_table_to_stdout(capsys):
    write_table(pd.DataFrame({"value": [0.5]}), precision=3)
    assert capsys.readouterr().out == "value\n0.5\n"


@pytest.mark.parametrize("precision", [18, 100])
def test_precision_out_of_range(precision):
    with pytest.raises(ValueError):
        CsvWriter(precision)
