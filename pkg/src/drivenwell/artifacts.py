"""Deterministic CSV/JSON artifact files with versioned schemas.

Every artifact carries its schema name and the hash of the producing
configuration in a header (CSV) or top-level field (JSON), so downstream
figure tooling can check what it reads.  Numeric formatting is fixed to
shortest round-trip representation; re-running a task with the same
configuration reproduces every artifact byte for byte (the manifest's
timestamp field is the one exception).
"""

from __future__ import annotations

import datetime
import hashlib
import json
from pathlib import Path

import numpy as np

__all__ = ["config_hash", "write_csv", "write_json", "Manifest"]

_FORMAT_VERSION = 1


def config_hash(config_text: str) -> str:
    """Short stable digest of a configuration's canonical text form."""
    return hashlib.sha256(config_text.encode()).hexdigest()[:12]


def _format_value(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_csv(path, schema: str, columns, rows, config_digest: str) -> Path:
    """Write one versioned CSV artifact.

    ``rows`` is an iterable of sequences matching ``columns``; floats are
    written in shortest round-trip form.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [
        f"# drivenwell schema={schema}/v{_FORMAT_VERSION} config={config_digest}",
        ",".join(columns),
    ]
    for row in rows:
        if len(row) != len(columns):
            raise ValueError(f"row width {len(row)} != {len(columns)} columns")
        lines.append(",".join(_format_value(v) for v in row))
    path.write_text("\n".join(lines) + "\n")
    return path


def write_json(path, schema: str, payload: dict, config_digest: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    body = {
        "schema": f"{schema}/v{_FORMAT_VERSION}",
        "config": config_digest,
        **payload,
    }
    path.write_text(json.dumps(body, indent=2, sort_keys=True,
                               default=_json_default) + "\n")
    return path


def _json_default(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)!r}")


class Manifest:
    """Collects the artifacts of one task run and writes the manifest file.

    The manifest carries the configuration hash and a creation timestamp;
    the timestamp is the only non-deterministic output of a run.
    """

    def __init__(self, output_dir, task: str, config_digest: str):
        self.output_dir = Path(output_dir)
        self.task = task
        self.config_digest = config_digest
        self.entries: list[dict] = []

    def add_csv(self, name: str, schema: str, columns, rows) -> Path:
        path = write_csv(self.output_dir / f"{name}.csv", schema, columns,
                         rows, self.config_digest)
        self.entries.append({"name": name, "path": path.name,
                             "schema": f"{schema}/v{_FORMAT_VERSION}"})
        return path

    def add_json(self, name: str, schema: str, payload: dict) -> Path:
        path = write_json(self.output_dir / f"{name}.json", schema, payload,
                          self.config_digest)
        self.entries.append({"name": name, "path": path.name,
                             "schema": f"{schema}/v{_FORMAT_VERSION}"})
        return path

    def write(self) -> Path:
        path = self.output_dir / "manifest.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        body = {
            "task": self.task,
            "config": self.config_digest,
            "artifacts": self.entries,
            "created": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        }
        path.write_text(json.dumps(body, indent=2, sort_keys=True) + "\n")
        return path
