"""Tabular experiment results and their CSV form.

CSV layout: UTF-8, comma separator, dot decimals, `#`-prefixed metadata
lines (key: value), then one header row of column names, then numeric rows.
Only stable metadata goes into the file (config hash, seed, version), so a
rerun with the same config and seed is byte-identical; the in-memory table
additionally carries a wall-clock stamp for logging.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

__all__ = ["ResultTable", "config_hash", "write_csv", "read_csv"]

_STABLE_KEYS = ("config_hash", "seed", "version")


def config_hash(mapping: dict) -> str:
    """Short stable digest of a flat key-value configuration."""
    blob = "\n".join(f"{k}={mapping[k]}" for k in sorted(mapping))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:12]


@dataclass
class ResultTable:
    """Named numeric columns plus run metadata."""

    columns: list[str]
    rows: list[tuple]
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        width = len(self.columns)
        for row in self.rows:
            if len(row) != width:
                raise ValueError("row width differs from column count")
        self.metadata.setdefault(
            "wall_clock", datetime.now(timezone.utc).isoformat()
        )

    @classmethod
    def from_arrays(
        cls, columns: list[str], arrays: list, metadata: dict[str, str]
    ) -> "ResultTable":
        cols = [np.asarray(a).reshape(-1) for a in arrays]
        n = {c.size for c in cols}
        if len(n) != 1:
            raise ValueError("columns must have equal length")
        rows = list(zip(*[c.tolist() for c in cols]))
        return cls(list(columns), rows, dict(metadata))

    def column(self, name: str) -> np.ndarray:
        if name not in self.columns:
            raise KeyError(f"no column named {name!r}")
        i = self.columns.index(name)
        return np.array([row[i] for row in self.rows])


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float) and value.is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def write_csv(table: ResultTable, path: str | Path) -> Path:
    """Write the table; emits only the stable metadata keys."""
    path = Path(path)
    lines = [
        f"# {key}: {table.metadata[key]}"
        for key in _STABLE_KEYS
        if key in table.metadata
    ]
    lines.append(",".join(table.columns))
    for row in table.rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def read_csv(path: str | Path) -> ResultTable:
    """Read a table written by :func:`write_csv`."""
    metadata: dict[str, str] = {}
    columns: list[str] | None = None
    rows: list[tuple] = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            metadata[key.strip()] = value.strip()
        elif columns is None:
            columns = line.split(",")
        else:
            rows.append(tuple(float(v) for v in line.split(",")))
    if columns is None:
        raise ValueError(f"{path} has no header row")
    return ResultTable(columns, rows, metadata)
