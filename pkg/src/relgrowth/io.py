"""Panel CSV reading and writing.

The panel format is long: a header ``entity,year,value`` followed by one row
per observation, UTF-8, comma separated, ``.`` as decimal point.  Rows may
come in any order.
"""

from __future__ import annotations

import csv
import math
from importlib import resources
from pathlib import Path
from typing import Mapping

from .errors import InputError
from .timeseries import GrowthSeries

HEADER = ("entity", "year", "value")


def ingest_csv(path: str | Path) -> dict[str, GrowthSeries]:
    """Read a long-format panel into one :class:`GrowthSeries` per entity.

    Raises :class:`InputError` on an empty file, a wrong header, an
    unparseable row (with its line number) or a duplicated (entity, year).
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8-sig")
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except UnicodeDecodeError as exc:
        raise InputError(f"{path}: not valid UTF-8 ({exc.reason})") from None
    if not text.strip():
        raise InputError(f"{path}: empty input")

    reader = csv.reader(text.splitlines())
    header = tuple(h.strip().lower() for h in next(reader))
    if header != HEADER:
        raise InputError(f"{path}: line 1: expected header 'entity,year,value', got {','.join(header)!r}")

    seen: dict[tuple[str, int], int] = {}
    obs: dict[str, list[tuple[int, float]]] = {}
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 3:
            raise InputError(f"{path}: line {lineno}: expected 3 fields, got {len(row)}")
        entity = row[0].strip()
        if not entity:
            raise InputError(f"{path}: line {lineno}: empty entity label")
        try:
            year = int(row[1].strip())
        except ValueError:
            raise InputError(f"{path}: line {lineno}: year {row[1]!r} is not an integer") from None
        try:
            value = float(row[2].strip())
        except ValueError:
            raise InputError(f"{path}: line {lineno}: value {row[2]!r} is not a number") from None
        if not math.isfinite(value):
            raise InputError(f"{path}: line {lineno}: value must be finite")
        key = (entity, year)
        if key in seen:
            raise InputError(
                f"{path}: line {lineno}: duplicate entry for ({entity}, {year}), "
                f"first seen on line {seen[key]}"
            )
        seen[key] = lineno
        obs.setdefault(entity, []).append((year, value))

    if not obs:
        raise InputError(f"{path}: empty input")
    return {e: GrowthSeries.from_pairs(e, o) for e, o in sorted(obs.items())}


def write_panel_csv(panel: Mapping[str, GrowthSeries], path: str | Path) -> Path:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(HEADER)
        for entity in sorted(panel):
            s = panel[entity]
            for year, value in zip(s.years, s.values):
                w.writerow((entity, year, repr(value)))
    return path


def gdp_panel_path() -> Path:
    """Bundled GDP per capita of Italian regions, 1981/1991/2001 (2003 euros)."""
    return Path(str(resources.files("relgrowth") / "data" / "gdp_per_capita_1981_2001.csv"))
