# tests/integration/test_traces.py

import csv
import io

import numpy as np
import pytest

from radialopt.operations.solvers import radial_subgradient_run, renegar_a_run
from radialopt.operations.steps import SquareSummable
from radialopt.schemas.solver import SolverConfig
from radialopt.traces import (
    TRACE_FIELDS,
    read_trace_csv,
    trace_header,
    write_compare_csv,
    write_trace_csv,
)


def _rows(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.reader(f))


def test_trace_header():
    assert trace_header(2) == TRACE_FIELDS + ["x0", "x1"]
    assert trace_header(1)[:3] == ["iter", "z", "f_x"]
    assert ",".join(trace_header(2)) == (
        "iter,z,f_x,alpha,subgrad_norm,gamma_residual,rel_accuracy,lemma34_slack,x0,x1"
    )


def test_trace_csv_layout(tmp_path, ball):
    trace = radial_subgradient_run(ball, SquareSummable(), SolverConfig(max_iters=5))
    path = tmp_path / "trace.csv"
    write_trace_csv(trace, path)
    rows = _rows(path)
    assert rows[0] == trace_header(2)
    assert len(rows) == 1 + len(trace.records)
    assert [row[0] for row in rows[1:]] == [str(i) for i in range(6)]

    last = dict(zip(rows[0], rows[-1]))
    # no step leaves the final record
    assert last["alpha"] == ""
    assert last["subgrad_norm"] == ""
    assert last["lemma34_slack"] == ""
    assert last["rel_accuracy"] != ""


def test_trace_csv_keeps_full_precision(tmp_path, ball):
    trace = radial_subgradient_run(ball, SquareSummable(), SolverConfig(max_iters=20))
    path = tmp_path / "trace.csv"
    write_trace_csv(trace, path)
    records = read_trace_csv(path)
    assert len(records) == len(trace.records)
    for original, parsed in zip(trace.records, records):
        assert parsed.iter == original.iter
        assert parsed.z == original.z
        assert parsed.f_x == original.f_x
        assert parsed.alpha == original.alpha
        assert parsed.rel_accuracy == original.rel_accuracy
        assert parsed.descent_slack == original.descent_slack
        np.testing.assert_array_equal(parsed.x, original.x)


def test_trace_csv_without_optimum(tmp_path, unbounded_lp):
    trace = radial_subgradient_run(unbounded_lp, SquareSummable(), SolverConfig(max_iters=5))
    path = tmp_path / "trace.csv"
    write_trace_csv(trace, path)
    records = read_trace_csv(path)
    assert all(r.rel_accuracy is None for r in records)


def test_trace_csv_is_deterministic(tmp_path, kinked_pieces):
    paths = []
    for name in ("a.csv", "b.csv"):
        trace = radial_subgradient_run(kinked_pieces, SquareSummable(), SolverConfig(max_iters=40))
        paths.append(tmp_path / name)
        write_trace_csv(trace, paths[-1])
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_trace_csv_propagates_io_errors(tmp_path, ball):
    trace = radial_subgradient_run(ball, SquareSummable(), SolverConfig(max_iters=1))
    with pytest.raises(OSError):
        write_trace_csv(trace, tmp_path / "missing" / "trace.csv")


def test_compare_csv(ball):
    short = radial_subgradient_run(ball, SquareSummable(), SolverConfig(max_iters=3))
    long = renegar_a_run(ball, 0.1, SolverConfig(max_iters=6))
    out = io.StringIO()
    rows = write_compare_csv({"radial": short, "renegar_a": long}, out)
    assert rows == 7

    table = list(csv.reader(io.StringIO(out.getvalue())))
    assert table[0] == ["iter", "radial", "renegar_a"]
    assert len(table) == 8
    # the shorter run has ended
    assert table[5][1] == ""
    assert table[5][2] != ""

    radial_column = [float(row[1]) for row in table[1:5]]
    assert all(a >= b for a, b in zip(radial_column, radial_column[1:]))


def test_compare_csv_empty():
    out = io.StringIO()
    assert write_compare_csv({}, out) == 0
    assert out.getvalue().strip() == "iter"
