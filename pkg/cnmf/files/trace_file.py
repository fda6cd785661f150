"""
CNMF Toolkit - Trace Files

CSV with header `iteration,elapsed_s,loss`, one row per FitTrace record.
Floats are printed with 17 significant digits so they read back bit-exact.
"""

import csv
from pathlib import Path

from ..errors import MatrixFormatError
from ..solvers.base import FitTrace, TraceRecord
from .atomic import atomic_open

TRACE_HEADER = ("iteration", "elapsed_s", "loss")


def _g17(value: float) -> str:
    return "%.17g" % value


def write_trace(path, trace: FitTrace, timing: bool = True) -> None:
    """With timing=False the elapsed column carries the iteration index instead."""
    with atomic_open(path, "w") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        for r in trace.records:
            elapsed = r.elapsed_s if timing else r.iteration
            writer.writerow((r.iteration, _g17(elapsed), _g17(r.loss)))


def read_trace(path) -> FitTrace:
    with Path(path).open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != TRACE_HEADER:
        raise MatrixFormatError(f"{path}: missing trace header {','.join(TRACE_HEADER)}")

    trace = FitTrace()
    for lineno, row in enumerate(rows[1:], start=2):
        try:
            record = TraceRecord(int(row[0]), float(row[1]), float(row[2]))
        except (IndexError, ValueError) as e:
            raise MatrixFormatError(f"{path}:{lineno}: bad trace row {row!r}") from e
        if trace.records:
            last = trace.records[-1]
            if record.iteration <= last.iteration or record.elapsed_s <= last.elapsed_s:
                raise MatrixFormatError(f"{path}:{lineno}: trace rows out of order")
        trace.records.append(record)
    return trace
