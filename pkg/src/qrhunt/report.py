"""ExperimentReport: what every CLI run emits, as JSON, CSV or plain text."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import __version__

KINDS = ("hunt", "ratio", "grid", "sweep", "rtable", "kronecker", "sum", "weight", "psi", "rho", "lemma6")

# results entry holding the per-record table, for kinds that have one
_TABLE_KEY = {"hunt": "witnesses", "sweep": "rows", "rtable": "counts"}
# fields that legitimately differ between otherwise identical runs
_VOLATILE = ("elapsed",)


def fmt_number(v) -> str:
    if isinstance(v, bool) or v is None:
        return "" if v is None else str(v).lower()
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".15g")
    return str(v)


@dataclass
class ExperimentReport:
    kind: str
    params: dict
    results: dict
    version: str = __version__
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown report kind {self.kind!r}")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "version": self.version,
            "timestamp": self.timestamp,
            "params": self.params,
            "results": self.results,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ExperimentReport":
        obj = json.loads(text)
        return cls(obj["kind"], obj["params"], obj["results"], obj["version"], obj["timestamp"])

    def canonical(self) -> str:
        """JSON without the timestamp and timing fields, for run-to-run comparison."""
        results = {k: v for k, v in self.results.items() if k not in _VOLATILE}
        return json.dumps({"kind": self.kind, "version": self.version, "params": self.params, "results": results})

    def table(self) -> tuple[list[str], list[list]]:
        key = _TABLE_KEY.get(self.kind)
        if key == "counts":
            return ["b", "r"], [[int(b), r] for b, r in self.results["counts"].items()]
        if key is not None:
            rows = self.results[key]
            header = list(rows[0]) if rows else []
            return header, [[row[h] for h in header] for row in rows]
        flat = {k: v for k, v in self.results.items() if not isinstance(v, (list, dict))}
        return list(flat), [list(flat.values())]

    def to_csv(self) -> str:
        header, rows = self.table()
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt_number(v) for v in row])
        return buf.getvalue()

    def to_text(self) -> str:
        if "value" in self.results and len(self.results) == 1:
            return fmt_number(self.results["value"]) + "\n"
        lines = [f"{self.kind} ({', '.join(f'{k}={fmt_number(v)}' for k, v in self.params.items())})"]
        for k, v in self.results.items():
            if not isinstance(v, (list, dict)):
                lines.append(f"  {k}: {fmt_number(v)}")
        key = _TABLE_KEY.get(self.kind)
        if key is not None and self.results[key]:
            header, rows = self.table()
            lines.append("  " + "\t".join(header))
            lines += ["  " + "\t".join(fmt_number(v) for v in row) for row in rows]
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return {"json": self.to_json, "csv": self.to_csv, "text": self.to_text}[fmt]()
