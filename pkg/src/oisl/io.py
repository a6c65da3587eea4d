"""Config loading, CSV/JSON emitters and run manifests."""

from __future__ import annotations

import csv
import enum
import hashlib
import io
import json
import sys
from dataclasses import asdict, dataclass, field, is_dataclass
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


class ConfigError(ValueError):
    """Unreadable or inconsistent configuration."""


def load_toml(path: str | Path | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _plain(obj):
    """Recursively convert numpy, enum and dataclass values to JSON types."""
    if is_dataclass(obj) and not isinstance(obj, type):
        return _plain(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def to_json(obj) -> str:
    return json.dumps(_plain(obj), indent=2, sort_keys=True, allow_nan=True) + "\n"


def to_csv(rows: Iterable[dict]) -> str:
    rows = [_plain(r) for r in rows]
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: _fmt(v) for k, v in r.items()})
    return buf.getvalue()


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return v


@dataclass
class RunManifest:
    """What was run and the SHA-256 of every file it emitted."""

    subcommand: str
    config: str | None
    output_dir: str | None
    seed: int | None
    files: dict = field(default_factory=dict)

    def record(self, path: Path, text: str) -> None:
        self.files[path.name] = hashlib.sha256(text.encode("utf-8")).hexdigest()


class Emitter:
    """Writes named outputs into a directory, or to a stream when none is set."""

    def __init__(self, out_dir: str | Path | None, manifest: RunManifest,
                 stream: TextIO | None = None):
        self.out_dir = Path(out_dir) if out_dir else None
        self.manifest = manifest
        self.stream = stream or sys.stdout
        if self.out_dir:
            self.out_dir.mkdir(parents=True, exist_ok=True)

    def emit(self, name: str, text: str) -> None:
        if self.out_dir is None:
            self.stream.write(text)
            return
        path = self.out_dir / name
        path.write_text(text, encoding="utf-8")
        self.manifest.record(path, text)

    def table(self, stem: str, rows: list[dict], fmt: str) -> None:
        if fmt == "json":
            self.emit(f"{stem}.json", to_json(rows))
        else:
            self.emit(f"{stem}.csv", to_csv(rows))

    def close(self) -> None:
        if self.out_dir is not None:
            (self.out_dir / "manifest.json").write_text(to_json(self.manifest), encoding="utf-8")
