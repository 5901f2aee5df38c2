"""Readers for the versioned drivenwell CSV/JSON artifacts.

The plotting layer never recomputes physics: it only checks that an artifact
carries the expected schema tag and columns, then hands the numbers over.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = ["ArtifactError", "Table", "read_table", "read_summary"]


class ArtifactError(RuntimeError):
    """Schema mismatch, missing column, or empty artifact."""


@dataclass(frozen=True)
class Table:
    path: Path
    schema: str
    config: str
    columns: tuple[str, ...]
    data: np.ndarray            # (rows, columns) floats

    def column(self, name: str) -> np.ndarray:
        if name not in self.columns:
            raise ArtifactError(
                f"{self.path}: missing column {name!r} (has {self.columns})")
        return self.data[:, self.columns.index(name)]

    def rows_where(self, name: str, value: float, tol: float = 0.0) -> "Table":
        col = self.column(name)
        keep = np.abs(col - value) <= tol if tol else col == value
        return Table(self.path, self.schema, self.config, self.columns,
                     self.data[keep])


def _parse_header(line: str, path: Path) -> tuple[str, str]:
    if not line.startswith("#"):
        raise ArtifactError(f"{path}: missing schema header line")
    fields = dict(part.split("=", 1) for part in line[1:].split()
                  if "=" in part)
    if "schema" not in fields:
        raise ArtifactError(f"{path}: header carries no schema tag")
    return fields["schema"], fields.get("config", "")


def read_table(path, expected_schema: str | None = None) -> Table:
    """Load one CSV artifact; raises ArtifactError on any schema problem or
    when no data rows are present."""
    path = Path(path)
    if not path.exists():
        raise ArtifactError(f"artifact not found: {path}")
    lines = path.read_text().splitlines()
    if len(lines) < 2:
        raise ArtifactError(f"{path}: truncated artifact")
    schema, config = _parse_header(lines[0], path)
    if expected_schema is not None \
            and not schema.startswith(expected_schema + "/"):
        raise ArtifactError(
            f"{path}: schema {schema!r} does not match {expected_schema!r}")
    columns = tuple(lines[1].split(","))
    body = [line for line in lines[2:] if line.strip()]
    if not body:
        raise ArtifactError(f"{path}: artifact holds no data rows")
    try:
        data = np.array([[float(v) for v in line.split(",")] for line in body])
    except ValueError as exc:
        raise ArtifactError(f"{path}: malformed data row ({exc})")
    if data.shape[1] != len(columns):
        raise ArtifactError(f"{path}: row width does not match columns")
    return Table(path=path, schema=schema, config=config, columns=columns,
                 data=data)


def read_summary(path, expected_schema: str | None = None) -> dict:
    """Load one JSON artifact with the same schema conventions."""
    path = Path(path)
    if not path.exists():
        raise ArtifactError(f"artifact not found: {path}")
    body = json.loads(path.read_text())
    schema = body.get("schema", "")
    if expected_schema is not None \
            and not schema.startswith(expected_schema + "/"):
        raise ArtifactError(
            f"{path}: schema {schema!r} does not match {expected_schema!r}")
    return body
