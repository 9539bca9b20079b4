"""Machine-readable run reports: stable JSON, CSV and text emission.

Reports are deterministic functions of (description, seed, command):
rerunning with the same inputs must give byte-identical JSON and CSV.
Wall-clock timing is therefore carried only in the human-readable text
format and never serialized into the machine formats.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field

SCHEMA = "koszulcalc-report/1"


@dataclass
class Report:
    command: str
    spec_text: str
    field_name: str
    max_weight: int
    seed: int
    options: dict
    result: dict
    status: str  # "ok" | "failed" | "error"
    exit_code: int
    timing_seconds: float | None = None

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.spec_text.encode()).hexdigest()

    def document(self) -> dict:
        """The serializable document, volatile fields excluded."""
        return {
            "schema": SCHEMA,
            "command": self.command,
            "input": {
                "digest": self.digest,
                "field": self.field_name,
                "max_weight": self.max_weight,
            },
            "seed": self.seed,
            "options": dict(sorted(self.options.items())),
            "status": self.status,
            "result": self.result,
        }


def emit(report: Report, fmt: str) -> bytes:
    if fmt == "json":
        return (json.dumps(report.document(), indent=2, sort_keys=False)
                + "\n").encode()
    if fmt == "csv":
        return _emit_csv(report)
    if fmt == "text":
        return _emit_text(report)
    raise ValueError(f"unknown format {fmt!r}")


def _tables(result: dict):
    """(name, rows) pairs for every list-of-dicts table in the result."""
    out = []
    for key in sorted(result):
        val = result[key]
        if isinstance(val, list) and all(isinstance(r, dict) for r in val):
            out.append((key, val))
    return out


def _emit_csv(report: Report) -> bytes:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["command", report.command])
    writer.writerow(["digest", report.digest])
    writer.writerow(["field", report.field_name])
    writer.writerow(["max_weight", report.max_weight])
    writer.writerow(["seed", report.seed])
    writer.writerow(["status", report.status])
    for key in sorted(report.result):
        val = report.result[key]
        if not isinstance(val, (list, dict)):
            writer.writerow([key, val])
    for name, rows in _tables(report.result):
        cols: list = []
        for row in rows:
            for c in row:
                if c not in cols:
                    cols.append(c)
        writer.writerow([])
        writer.writerow(["table", name, *cols])
        for row in rows:
            writer.writerow(["row", name, *[row.get(c, "") for c in cols]])
    return buf.getvalue().encode()


def _emit_text(report: Report) -> bytes:
    lines = [
        f"command:     {report.command}",
        f"input:       {report.field_name}, max weight {report.max_weight}, "
        f"digest {report.digest[:16]}",
        f"seed:        {report.seed}",
        f"status:      {report.status}",
    ]
    if report.timing_seconds is not None:
        lines.append(f"time:        {report.timing_seconds:.3f}s")
    for key in sorted(report.result):
        val = report.result[key]
        if not isinstance(val, (list, dict)):
            lines.append(f"{key}: {val}")
    for name, rows in _tables(report.result):
        lines.append("")
        lines.append(f"[{name}]")
        if not rows:
            lines.append("  (empty)")
            continue
        cols: list = []
        for row in rows:
            for c in row:
                if c not in cols:
                    cols.append(c)
        widths = {c: max(len(str(c)), max(len(str(r.get(c, ""))) for r in rows))
                  for c in cols}
        lines.append("  " + "  ".join(str(c).ljust(widths[c]) for c in cols))
        for row in rows:
            lines.append("  " + "  ".join(
                str(row.get(c, "")).ljust(widths[c]) for c in cols))
    return ("\n".join(lines) + "\n").encode()
