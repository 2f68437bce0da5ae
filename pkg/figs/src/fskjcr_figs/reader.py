"""Reader for the experiment CSV schema.

The upstream format: UTF-8, `#`-prefixed `key: value` metadata lines, one
comma-separated header row, then numeric rows. This module re-implements
the reader against that documented schema on purpose; the figure pipeline
must stand on the files alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = ["SchemaError", "Table", "read_table"]


class SchemaError(ValueError):
    """Input file missing, empty, or shaped differently than documented."""


@dataclass(frozen=True)
class Table:
    path: Path
    metadata: dict[str, str]
    columns: tuple[str, ...]
    data: np.ndarray # (rows, columns) float

    def col(self, name: str) -> np.ndarray:
        if name not in self.columns:
            raise SchemaError(f"{self.path}: no column named {name!r}")
        return self.data[:, self.columns.index(name)]

    def require(self, *names: str) -> None:
        missing = [n for n in names if n not in self.columns]
        if missing:
            raise SchemaError(f"{self.path}: missing columns {missing}")


def read_table(path: str | Path) -> Table:
    path = Path(path)
    if not path.is_file():
        raise SchemaError(f"{path}: no such file")
    metadata: dict[str, str] = {}
    columns: tuple[str, ...] | None = None
    rows: list[list[float]] = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            metadata[key.strip()] = value.strip()
            continue
        if columns is None:
            columns = tuple(line.split(","))
            continue
        cells = line.split(",")
        if len(cells) != len(columns):
            raise SchemaError(f"{path}:{lineno}: expected {len(columns)} cells")
        try:
            rows.append([float(c) for c in cells])
        except ValueError as err:
            raise SchemaError(f"{path}:{lineno}: non-numeric cell") from err
    if columns is None:
        raise SchemaError(f"{path}: no header row")
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return Table(path, metadata, columns, np.array(rows, dtype=float))
