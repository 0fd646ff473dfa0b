# radialopt/traces.py
"""Plot-ready CSV output for run traces and algorithm comparisons."""

import csv
from pathlib import Path
from typing import Dict, List, Optional, TextIO, Union

import numpy as np

from radialopt.core.config import get_settings
from radialopt.operations.solvers import IterateRecord, RunTrace, best_so_far

# column name -> IterateRecord attribute
_OPTIONAL_COLUMNS = {
    "alpha": "alpha",
    "subgrad_norm": "subgrad_norm",
    "gamma_residual": "gamma_residual",
    "rel_accuracy": "rel_accuracy",
    "lemma34_slack": "descent_slack",
}
TRACE_FIELDS = ["iter", "z", "f_x", *_OPTIONAL_COLUMNS]


def _cell(value: Optional[float]) -> str:
    if value is None:
        return ""
    return f"{float(value):.{get_settings().TRACE_DIGITS}g}"


def _parse(cell: str) -> Optional[float]:
    return float(cell) if cell != "" else None


def trace_header(dimension: int) -> List[str]:
    return TRACE_FIELDS + [f"x{j}" for j in range(dimension)]


def write_trace_csv(trace: RunTrace, path: Union[str, Path]) -> None:
    """
    One row per record, doubles with 17 significant digits, empty cells for
    absent values. I/O errors propagate.
    """
    dimension = len(trace.records[0].x) if trace.records else 0
    with Path(path).open("w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(trace_header(dimension))
        for r in trace.records:
            w.writerow(
                [str(r.iter), _cell(r.z), _cell(r.f_x)]
                + [_cell(getattr(r, attr)) for attr in _OPTIONAL_COLUMNS.values()]
                + [_cell(v) for v in r.x]
            )


def read_trace_csv(path: Union[str, Path]) -> List[IterateRecord]:
    """Parse a trace written by write_trace_csv back into records."""
    records = []
    with Path(path).open("r", newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        coords = [name for name in (reader.fieldnames or []) if name.startswith("x")]
        for row in reader:
            records.append(IterateRecord(
                iter=int(row["iter"]),
                x=np.array([float(row[name]) for name in coords], dtype=np.float64),
                z=float(row["z"]),
                f_x=float(row["f_x"]),
                **{attr: _parse(row[column]) for column, attr in _OPTIONAL_COLUMNS.items()},
            ))
    return records


def write_compare_csv(traces: Dict[str, RunTrace], out: TextIO) -> int:
    """
    Best-so-far relative accuracy per algorithm, one row per iteration up to the
    longest run. Columns are named after the dict keys; cells are empty once a
    run has ended. Returns the number of data rows.
    """
    columns = {name: best_so_far(trace) for name, trace in traces.items()}
    rows = max((len(values) for values in columns.values()), default=0)
    w = csv.writer(out)
    w.writerow(["iter"] + list(columns))
    for i in range(rows):
        w.writerow([str(i)] + [_cell(values[i]) if i < len(values) else "" for values in columns.values()])
    return rows
