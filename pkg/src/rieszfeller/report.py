"""Structured experiment reports: CSV for sequences, JSON for config and summary.

Float cells use shortest-roundtrip repr, so identical runs produce byte-
identical files; wall-clock timing is kept out of the deterministic
`verify` reports and carried only where the interface asks for it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from . import __version__


def fmt_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (int, str)):
        return str(value)
    if isinstance(value, complex):
        return f"{value.real!r}{value.imag:+}j"
    return str(value)


def _jsonable(value):
    if isinstance(value, float):
        return None if math.isnan(value) else value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, complex):
        return [value.real, value.imag]
    if hasattr(value, "item"):  # numpy scalars
        return _jsonable(value.item())
    return value


@dataclass
class ExperimentReport:
    subcommand: str
    config: dict
    columns: list[str]
    rows: list[tuple]
    summary: dict = field(default_factory=dict)
    passed: bool = True
    wall_time_s: float | None = None

    def csv_text(self) -> str:
        lines = [",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(fmt_cell(v) for v in row))
        return "\n".join(lines) + "\n"

    def json_payload(self, include_rows: bool = False) -> dict:
        payload = {
            "subcommand": self.subcommand,
            "version": __version__,
            "config": _jsonable(self.config),
            "summary": _jsonable(self.summary),
            "passed": bool(self.passed),
        }
        if include_rows:
            payload["columns"] = list(self.columns)
            payload["rows"] = _jsonable([list(r) for r in self.rows])
        if self.wall_time_s is not None:
            payload["wall_time_s"] = self.wall_time_s
        return payload

    def write(self, base_path: str, fmt: str = "csv") -> list[str]:
        """Write <base>.csv + <base>.json (fmt=csv) or a single <base>.json (fmt=json).

        Returns the paths written.
        """
        written = []
        if fmt == "csv":
            csv_path = base_path + ".csv"
            with open(csv_path, "w") as fh:
                fh.write(self.csv_text())
            written.append(csv_path)
            json_path = base_path + ".json"
            with open(json_path, "w") as fh:
                json.dump(self.json_payload(include_rows=False), fh, indent=2, sort_keys=True)
                fh.write("\n")
            written.append(json_path)
        elif fmt == "json":
            json_path = base_path + ".json"
            with open(json_path, "w") as fh:
                json.dump(self.json_payload(include_rows=True), fh, indent=2, sort_keys=True)
                fh.write("\n")
            written.append(json_path)
        else:
            raise ValueError(f"unknown output format {fmt!r} (choose csv or json)")
        return written
