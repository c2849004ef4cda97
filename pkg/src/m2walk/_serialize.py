"""CSV / JSON output plumbing shared by the command-line interface.

Every file is written atomically (temp file in the destination
directory, then `os.replace`) and floats are serialized with 17
significant digits so a round trip through text is exact.  Each run
directory gets a JSON manifest carrying the full parameter set and the
SHA-256 digest of every data file, which is what makes re-runs provably
byte-identical.
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
import tempfile
from datetime import datetime, timezone
from pathlib import Path

from . import __version__

__all__ = [
    "format_value",
    "write_csv",
    "write_json",
    "write_plot_data",
    "sha256_digest",
    "utc_now",
    "build_manifest",
]


def format_value(value) -> str:
    """Serialize one CSV cell; floats keep 17 significant digits."""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _atomic_write(path: Path, writer_fn) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            writer_fn(handle)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


def write_csv(path, header, rows) -> Path:
    """Write an RFC-4180 CSV (CRLF, minimal quoting, header always)."""
    path = Path(path)

    def _write(handle):
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(v) for v in row])

    _atomic_write(path, _write)
    return path


def write_json(path, payload: dict) -> Path:
    path = Path(path)
    _atomic_write(path, lambda h: h.write(json.dumps(payload, indent=2) + "\n"))
    return path


def write_plot_data(path, columns) -> Path:
    """Two (or more) aligned whitespace-separated columns, no header —
    the bare format external plotting tools ingest directly."""
    path = Path(path)
    rows = list(zip(*columns))

    def _write(handle):
        for row in rows:
            handle.write(" ".join(format_value(v) for v in row) + "\n")

    _atomic_write(path, _write)
    return path


def sha256_digest(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            digest.update(chunk)
    return "sha256:" + digest.hexdigest()


def utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


def build_manifest(subcommand: str, parameters: dict, outputs,
                   started: str, finished: str) -> dict:
    """Assemble the run manifest for a finished subcommand.

    ``outputs`` are paths of the data files already written; their
    digests go into the manifest, so the manifest must be written last.
    """
    return {
        "tool": "m2walk",
        "version": __version__,
        "subcommand": subcommand,
        "parameters": dict(parameters),
        "started": started,
        "finished": finished,
        "outputs": {Path(p).name: sha256_digest(p) for p in outputs},
    }
