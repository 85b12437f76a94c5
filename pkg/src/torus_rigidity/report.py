"""Deterministic JSON and CSV serialization of reports."""

from __future__ import annotations

import csv
import io
import json
from typing import Any

from .mixing import DiagnosticsReport, approx

__all__ = ["emit_report", "to_jsonable", "DIAGNOSTICS_CSV_HEADER"]

DIAGNOSTICS_CSV_HEADER = ("N", "average_re", "average_im", "target_re", "target_im")


def to_jsonable(report: Any) -> Any:
    if hasattr(report, "to_dict"):
        return to_jsonable(report.to_dict())
    if hasattr(report, "to_json"):
        return to_jsonable(report.to_json())
    if isinstance(report, dict):
        return {str(k): to_jsonable(v) for k, v in report.items()}
    if isinstance(report, (list, tuple)):
        return [to_jsonable(v) for v in report]
    if isinstance(report, bool) or report is None or isinstance(report, str):
        return report
    if isinstance(report, int):
        return str(report)
    if isinstance(report, complex):
        return [repr(report.real), repr(report.imag)]
    if isinstance(report, float):
        return repr(report)
    return str(report)


def _flatten(prefix: str, value: Any, out: list) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, out)
    elif isinstance(value, list):
        if not value:
            out.append((prefix, "[]"))
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, "" if value is None else
                    str(value).lower() if isinstance(value, bool) else str(value)))


def _diagnostics_rows(report: DiagnosticsReport) -> list:
    rows = []
    first = 0 if report.series_kind == "tail_value" else 1
    for pair in report.pairs:
        t = approx(pair.target)
        for idx, z in enumerate(pair.series, start=first):
            z = complex(z)
            rows.append((str(idx), repr(z.real), repr(z.imag), repr(t.real), repr(t.imag)))
    return rows


def emit_report(report: Any, fmt: str = "json") -> str:
    """Serialize a report.

    JSON keeps the key order each report defines; every number is a string.
    CSV of a diagnostics report lists the partial series of each pair in
    request order, the index restarting with every pair (at 0 for tail
    values, which are indexed by j).  Other reports are flattened to
    ``key,value`` rows.
    """
    if fmt == "json":
        return json.dumps(to_jsonable(report), indent=2, ensure_ascii=False) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if isinstance(report, DiagnosticsReport):
        w.writerow(DIAGNOSTICS_CSV_HEADER)
        w.writerows(_diagnostics_rows(report))
    else:
        rows: list = []
        _flatten("", to_jsonable(report), rows)
        w.writerow(("key", "value"))
        w.writerows(rows)
    return buf.getvalue()
