"""Built-in shell catalogue, user shell files, and embedded reference tables."""

from __future__ import annotations

import csv
import io
import sys
from importlib import resources
from pathlib import Path

from .orbital import ShellSpec, parse_walker

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

_REQUIRED = ("altitude_km", "inclination_deg", "planes", "sats_per_plane")


class CatalogueError(ValueError):
    """Malformed shell file."""


def _data_text(name: str) -> str:
    return resources.files("oisl.data").joinpath(name).read_text(encoding="utf-8")


def shells_from_mapping(table: dict) -> dict[str, ShellSpec]:
    """Build shells from a ``{"shells": {name: {...}}}`` mapping.

    Each entry carries either the four required keys or a ``walker`` string
    plus ``altitude_km``.
    """
    entries = table.get("shells")
    if not isinstance(entries, dict) or not entries:
        raise CatalogueError("expected a non-empty [shells] table")
    out = {}
    for name, entry in entries.items():
        if not isinstance(entry, dict):
            raise CatalogueError(f"shell {name!r} is not a table")
        try:
            if "walker" in entry:
                shell = parse_walker(entry["walker"], float(entry["altitude_km"]), name)
            else:
                missing = [k for k in _REQUIRED if k not in entry]
                if missing:
                    raise CatalogueError(f"shell {name!r} missing {', '.join(missing)}")
                shell = ShellSpec.from_degrees(
                    entry["altitude_km"], entry["inclination_deg"], entry["planes"],
                    entry["sats_per_plane"], entry.get("phase_factor", 0), name)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, CatalogueError):
                raise
            raise CatalogueError(f"shell {name!r}: {exc}") from exc
        out[name] = shell
    return out


def builtin_shells() -> dict[str, ShellSpec]:
    """The 13 catalogued shells ``A1`` ... ``D3``, in table order."""
    return shells_from_mapping(tomllib.loads(_data_text("shells.toml")))


def load_shells(path: str | Path) -> dict[str, ShellSpec]:
    try:
        with open(path, "rb") as fh:
            table = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise CatalogueError(f"{path}: {exc}") from exc
    return shells_from_mapping(table)


def golden_margins() -> list[dict]:
    """Reference margin cells: regime, link, shell, scheme, two margins, class."""
    rows = list(csv.DictReader(io.StringIO(_data_text("golden_margins.csv"))))
    for r in rows:
        r["staircase_dB"] = float(r["staircase_dB"])
        r["ofec_dB"] = float(r["ofec_dB"])
    return rows


def golden_doppler() -> list[dict]:
    """Reference Doppler peaks per shell and interorbital link."""
    rows = list(csv.DictReader(io.StringIO(_data_text("golden_doppler.csv"))))
    for r in rows:
        r["delta_f_max_GHz"] = float(r["delta_f_max_GHz"])
        r["phase_factor"] = int(r["phase_factor"])
        r["delta_f_dot_max_GHz_per_s"] = float(r["delta_f_dot_max_GHz_per_s"])
    return rows
