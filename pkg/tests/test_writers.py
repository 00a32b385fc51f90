"""Deterministic table output."""

import json

import pytest

from spinscape.writers import (
    format_cell,
    gnuplot_lines_script,
    gnuplot_map_script,
    write_csv,
    write_json,
    write_table,
)


def test_format_cell():
    assert format_cell(1.5) == "1.5"
    assert format_cell(0.1) == "0.1"  # repr round-trips, no padding
    assert format_cell(1e-17) == "1e-17"
    assert format_cell(3) == "3"
    assert format_cell(True) == "true"
    assert format_cell("label") == "label"
    with pytest.raises(TypeError):
        format_cell(object())


def test_csv_layout(tmp_path):
    out = tmp_path / "t.csv"
    write_csv(out, [("tool", "demo"), ("n", 2)], ["a", "b"], [[1.0, "x"], [2.5, "y"]])
    text = out.read_text()
    lines = text.splitlines()
    assert lines[0] == "# tool: demo"
    assert lines[1] == "# n: 2"
    assert lines[2] == "a,b"
    assert lines[3] == "1.0,x"
    assert lines[4] == "2.5,y"
    assert text.endswith("\n")


def test_csv_byte_stable(tmp_path):
    rows = [[0.1 * i, i] for i in range(20)]
    p1 = tmp_path / "a.csv"
    p2 = tmp_path / "b.csv"
    write_csv(p1, [("k", "v")], ["x", "n"], rows)
    write_csv(p2, [("k", "v")], ["x", "n"], rows)
    assert p1.read_bytes() == p2.read_bytes()


def test_json_layout(tmp_path):
    out = tmp_path / "t.json"
    write_json(out, [("tool", "demo")], ["a", "b"], [[1.0, True], [float("nan"), "s"]])
    doc = json.loads(out.read_text())
    assert doc["meta"] == {"tool": "demo"}
    assert doc["columns"] == ["a", "b"]
    assert doc["rows"][0] == [1.0, True]
    assert doc["rows"][1][0] is None  # NaN has no JSON literal
    assert out.read_text().endswith("\n")


def test_write_table_dispatch(tmp_path):
    write_table(tmp_path / "x.csv", "csv", [], ["c"], [[1]])
    write_table(tmp_path / "x.json", "json", [], ["c"], [[1]])
    with pytest.raises(ValueError):
        write_table(tmp_path / "x.tsv", "tsv", [], ["c"], [[1]])


def test_gnuplot_snippets():
    s = gnuplot_lines_script("data.csv", 3, "levels")
    assert "data.csv" in s
    assert "for [i=2:4]" in s
    assert "using 1:i" in s
    m = gnuplot_map_script("map.csv", "fidelity")
    assert "using 1:2:3" in m
