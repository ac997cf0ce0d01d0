"""Run manifests and on-disk artifact formats.

Every command resolves its configuration into a manifest whose identity
hash covers only deterministic content (command, configuration, seeds,
package version) so that repeated runs with identical parameters produce
byte-identical data artifacts.  Timings and the hashes of written files
are recorded alongside but stay outside the identity.

CSV conventions: one leading ``# key=value`` comment line carrying the
manifest hash, plain decimal numbers with 17 significant digits, no
locale separators.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DataFormatError

PACKAGE_VERSION = "0.1.0"


def _canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


@dataclass
class RunManifest:
    """Traceability record for one CLI invocation."""

    command: str
    config: dict
    inputs: dict = field(default_factory=dict)
    version: str = PACKAGE_VERSION
    timings: dict = field(default_factory=dict)
    artifacts: dict = field(default_factory=dict)

    @property
    def identity_hash(self) -> str:
        core = {
            "command": self.command,
            "config": self.config,
            "inputs": self.inputs,
            "version": self.version,
        }
        return hashlib.sha256(_canonical_json(core).encode()).hexdigest()

    def record_timing(self, name: str, seconds: float) -> None:
        self.timings[name] = round(seconds, 6)

    def register(self, path: Path) -> None:
        self.artifacts[path.name] = hashlib.sha256(path.read_bytes()).hexdigest()

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "config": self.config,
            "inputs": self.inputs,
            "version": self.version,
            "manifest_sha256": self.identity_hash,
            "timings": self.timings,
            "artifacts": self.artifacts,
        }

    def write(self, path: Path) -> None:
        path.write_text(json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n")


def comment_line(manifest: RunManifest) -> str:
    return f"# manifest_sha256={manifest.identity_hash}\n"


def write_matrix_csv(path: Path, matrix: np.ndarray, manifest: RunManifest) -> None:
    """Dense real matrix, 17 significant digits per entry."""
    matrix = np.asarray(matrix, dtype=float)
    with path.open("w", newline="") as fh:
        fh.write(comment_line(manifest))
        for row in matrix:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def write_series_csv(path: Path, series: np.ndarray, manifest: RunManifest,
                     columns: list | None = None) -> None:
    series = np.asarray(series, dtype=float)
    with path.open("w", newline="") as fh:
        fh.write(comment_line(manifest))
        if columns is None:
            columns = [f"x{j + 1}" for j in range(series.shape[1])]
        fh.write(",".join(columns) + "\n")
        for row in series:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def write_table_csv(path: Path, rows: list, columns: list, manifest: RunManifest) -> None:
    with path.open("w", newline="") as fh:
        fh.write(comment_line(manifest))
        writer = csv.DictWriter(fh, fieldnames=columns)
        writer.writeheader()
        for row in rows:
            formatted = {
                key: (f"{value:.17g}" if isinstance(value, float) else value)
                for key, value in row.items()
            }
            writer.writerow(formatted)


def write_json(path: Path, payload: dict, manifest: RunManifest | None = None) -> None:
    if manifest is not None:
        payload = dict(payload)
        payload["manifest_sha256"] = manifest.identity_hash
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def read_series_csv(path: Path, no_header: bool = False) -> tuple[np.ndarray, list | None]:
    """Read an (n, p) numeric CSV.

    Leading ``#`` comment lines are skipped.  Unless ``no_header`` is set,
    a non-numeric first row is treated as column names.  Any other
    non-numeric cell raises :class:`DataFormatError` with its location.
    """
    path = Path(path)
    rows = []
    columns = None
    lines = path.read_text().splitlines()
    data_started = False
    width = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cells = next(csv.reader([line]))
        if not data_started and not no_header:
            try:
                rows.append([float(cell) for cell in cells])
            except ValueError:
                columns = [cell.strip() for cell in cells]
                data_started = True
                continue
            data_started = True
            width = len(cells)
            continue
        data_started = True
        try:
            values = [float(cell) for cell in cells]
        except ValueError as exc:
            raise DataFormatError(f"{path}:{lineno}: non-numeric cell in {cells!r}") from exc
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise DataFormatError(
                f"{path}:{lineno}: expected {width} columns, found {len(values)}"
            )
        rows.append(values)
    if not rows:
        raise DataFormatError(f"{path}: no numeric rows found")
    matrix = np.asarray(rows, dtype=float)
    if not np.all(np.isfinite(matrix)):
        raise DataFormatError(f"{path}: non-finite values in data")
    return matrix, columns
