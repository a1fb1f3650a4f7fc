"""Canonical report serialization: byte-deterministic JSON, a console
table, and delimited per-item detail rows.

Floats are canonicalized to 12 significant digits before serialization and
keys are sorted, so re-running a campaign with the same parameters and seed
produces byte-identical report files regardless of job count.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .verify import VerificationReport

__all__ = [
    "canonical_json_bytes",
    "report_json_bytes",
    "render_table",
    "write_report",
    "write_details_csv",
]


def _canon(obj):
    if isinstance(obj, float):
        if obj != obj or obj in (float("inf"), float("-inf")):
            raise ValueError(f"non-finite float {obj!r} cannot be serialized")
        return float(format(obj, ".12g"))
    if isinstance(obj, dict):
        return {str(k): _canon(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canon(v) for v in obj]
    if isinstance(obj, (str, int, bool)) or obj is None:
        return obj
    if hasattr(obj, "to_dict"):
        return _canon(obj.to_dict())
    raise TypeError(f"cannot canonicalize {type(obj).__name__}")


def canonical_json_bytes(obj) -> bytes:
    """Stable bytes: sorted keys, compact separators, 12-significant-digit
    floats, trailing newline."""
    return (
        json.dumps(_canon(obj), sort_keys=True, separators=(",", ":"), allow_nan=False)
        + "\n"
    ).encode("ascii")


def report_json_bytes(report: VerificationReport) -> bytes:
    return canonical_json_bytes(report.to_dict())


def render_table(report: VerificationReport) -> str:
    """Human-oriented summary (includes measured runtime, which the
    canonical JSON intentionally omits)."""
    buf = io.StringIO()
    status = "PASS" if report.passed else "FAIL"
    buf.write(f"campaign: {report.campaign}  [{status}]\n")
    params = ", ".join(f"{k}={v}" for k, v in sorted(report.params.items()))
    buf.write(f"params:   {params}\n")
    buf.write(f"runtime:  {report.runtime_seconds:.2f}s\n")
    width = max((len(k) for k in report.counters), default=4)
    for key in sorted(report.counters):
        buf.write(f"  {key.ljust(width)}  {report.counters[key]}\n")
    if report.failures:
        buf.write(f"failures ({len(report.failures)}):\n")
        for f in report.failures[:20]:
            reason = f.detail.get("reason", "?")
            buf.write(f"  {f.graph6}  {reason}\n")
        if len(report.failures) > 20:
            buf.write(f"  ... and {len(report.failures) - 20} more\n")
    return buf.getvalue()


def write_report(report: VerificationReport, path: str | Path) -> Path:
    path = Path(path)
    path.write_bytes(report_json_bytes(report))
    return path


def write_details_csv(report: VerificationReport, path: str | Path) -> Path:
    """Per-item rows for the campaign, one CSV line each (header from the
    union of row keys, column order first-seen)."""
    path = Path(path)
    fields: list[str] = []
    for row in report.details:
        for key in row:
            if key not in fields:
                fields.append(key)
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields or ["empty"])
        writer.writeheader()
        for row in report.details:
            writer.writerow({k: _csv_cell(row.get(k)) for k in fields})
    return path


def _csv_cell(v):
    if isinstance(v, float):
        return format(v, ".12g")
    return v
