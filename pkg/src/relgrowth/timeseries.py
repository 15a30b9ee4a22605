"""Entity time series and the preprocessing chain feeding the regression.

The chain turns yearly levels (GDP per capita, say) into the regression
operands: annual growth rates, smoothed by a centered moving average, then
paired year by year with the reference entity and log-transformed.  Years
where a log cannot be taken are dropped and recorded, never imputed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal, Sequence

import numpy as np

from .errors import DomainError

RateMethod = Literal["percent-change", "log-difference"]
SmoothOrder = Literal["rate-first", "level-first"]

RATE_METHODS: tuple[str, ...] = ("percent-change", "log-difference")
SMOOTH_ORDERS: tuple[str, ...] = ("rate-first", "level-first")

NON_POSITIVE = "non-positive rate"
UNMATCHED = "unmatched year"


@dataclass(frozen=True)
class GrowthSeries:
    """Yearly observations of one entity.

    ``units`` is a free label; the pipeline uses ``"level"`` for raw data
    and ``"rate"`` once growth rates have been taken.
    """

    entity: str
    years: tuple[int, ...]
    values: tuple[float, ...]
    units: str = "level"

    def __post_init__(self):
        years = tuple(int(y) for y in self.years)
        values = tuple(float(v) for v in self.values)
        if len(years) != len(values):
            raise ValueError(
                f"{self.entity}: {len(years)} years but {len(values)} values"
            )
        if any(b <= a for a, b in zip(years, years[1:])):
            raise ValueError(f"{self.entity}: years must be strictly increasing")
        object.__setattr__(self, "years", years)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.years)

    @classmethod
    def from_pairs(cls, entity: str, observations, units: str = "level") -> "GrowthSeries":
        """Build from an iterable of ``(year, value)``, sorting by year."""
        obs = sorted((int(y), float(v)) for y, v in observations)
        return cls(entity, tuple(y for y, _ in obs), tuple(v for _, v in obs), units)

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.years, dtype=float), np.asarray(self.values, dtype=float)

    def value_at(self, year: int) -> float:
        try:
            return self.values[self.years.index(int(year))]
        except ValueError:
            raise KeyError(f"{self.entity}: no observation for {year}") from None


@dataclass(frozen=True)
class PairedSample:
    """Aligned ``(year, ln y, ln x)`` triples for one target/reference pair."""

    target_entity: str
    reference_entity: str
    pairs: tuple[tuple[int, float, float], ...]
    dropped: tuple[tuple[int, str], ...] = ()

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def years(self) -> np.ndarray:
        return np.array([p[0] for p in self.pairs], dtype=int)

    @property
    def ln_y(self) -> np.ndarray:
        return np.array([p[1] for p in self.pairs], dtype=float)

    @property
    def ln_x(self) -> np.ndarray:
        return np.array([p[2] for p in self.pairs], dtype=float)


@dataclass(frozen=True)
class PreprocessConfig:
    rate_method: RateMethod = "percent-change"
    ma_window: int = 3
    rebase_year: int | None = None
    smooth_order: SmoothOrder = "rate-first"

    def __post_init__(self):
        if self.rate_method not in RATE_METHODS:
            raise ValueError(f"unknown rate method {self.rate_method!r}")
        if self.smooth_order not in SMOOTH_ORDERS:
            raise ValueError(f"unknown smoothing order {self.smooth_order!r}")
        if int(self.ma_window) != self.ma_window or self.ma_window < 1 or self.ma_window % 2 == 0:
            raise ValueError(f"ma_window must be an odd positive integer, got {self.ma_window!r}")

    def to_dict(self) -> dict:
        return {
            "rate_method": self.rate_method,
            "ma_window": self.ma_window,
            "rebase_year": self.rebase_year,
            "smooth_order": self.smooth_order,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PreprocessConfig":
        return cls(**d)


def growth_rates(series: GrowthSeries, method: RateMethod = "percent-change") -> GrowthSeries:
    """Year-on-year growth rates, each labeled by the later year.

    ``percent-change`` gives ``v[t] / v[t-1] - 1``; ``log-difference`` gives
    ``ln(v[t] / v[t-1])`` and needs strictly positive levels.
    """
    if len(series) < 2:
        raise ValueError(f"{series.entity}: need at least 2 observations for growth rates")
    _, v = series.arrays()
    if method == "percent-change":
        rates = v[1:] / v[:-1] - 1.0
    elif method == "log-difference":
        if np.any(v <= 0):
            raise DomainError(f"{series.entity}: log-difference needs positive levels")
        rates = np.log(v[1:] / v[:-1])
    else:
        raise ValueError(f"unknown rate method {method!r}")
    return GrowthSeries(series.entity, series.years[1:], tuple(rates.tolist()), "rate")


def moving_average(series: GrowthSeries, window: int = 3) -> GrowthSeries:
    """Centered arithmetic moving average; output has ``n - window + 1`` points."""
    if window < 1 or window % 2 == 0:
        raise ValueError(f"window must be an odd positive integer, got {window}")
    n = len(series)
    if window > n:
        raise ValueError(f"{series.entity}: window {window} exceeds series length {n}")
    if window == 1:
        return series
    half = window // 2
    _, v = series.arrays()
    csum = np.concatenate(([0.0], np.cumsum(v)))
    smooth = (csum[window:] - csum[:-window]) / window
    return replace(series, years=series.years[half:n - half], values=tuple(smooth.tolist()))


def rebase(series: GrowthSeries, base_year: int) -> GrowthSeries:
    """Divide every value by the value observed in ``base_year``."""
    try:
        base = series.value_at(base_year)
    except KeyError:
        raise ValueError(f"{series.entity}: base year {base_year} not in series") from None
    if base == 0:
        raise DomainError(f"{series.entity}: zero level in base year {base_year}")
    return replace(series, values=tuple(v / base for v in series.values))


def pair_and_log(target: GrowthSeries, reference: GrowthSeries) -> PairedSample:
    """Align two rate series by year and take natural logs.

    Years where either rate is non-positive, or which only one side has, are
    listed in ``dropped`` with the reason.
    """
    t_map = dict(zip(target.years, target.values))
    r_map = dict(zip(reference.years, reference.values))
    common = sorted(set(t_map) & set(r_map))
    if not common:
        raise ValueError(f"{target.entity} and {reference.entity} share no years")
    pairs = []
    dropped = []
    for year in sorted(set(t_map) | set(r_map)):
        if year not in t_map or year not in r_map:
            dropped.append((year, UNMATCHED))
            continue
        y, x = t_map[year], r_map[year]
        if y <= 0 or x <= 0:
            dropped.append((year, NON_POSITIVE))
            continue
        pairs.append((year, math.log(y), math.log(x)))
    return PairedSample(target.entity, reference.entity, tuple(pairs), tuple(dropped))


def preprocess(series: GrowthSeries, config: PreprocessConfig = PreprocessConfig()) -> GrowthSeries:
    """Levels to smoothed growth rates according to ``config``."""
    if config.rebase_year is not None:
        series = rebase(series, config.rebase_year)
    if config.smooth_order == "rate-first":
        rates = growth_rates(series, config.rate_method)
        return moving_average(rates, config.ma_window)
    smooth = moving_average(series, config.ma_window)
    return growth_rates(smooth, config.rate_method)


def prepare_pair(
    target: GrowthSeries,
    reference: GrowthSeries,
    config: PreprocessConfig = PreprocessConfig(),
) -> PairedSample:
    """Run :func:`preprocess` on both series and pair the results."""
    return pair_and_log(preprocess(target, config), preprocess(reference, config))


def panel_from_rows(rows: Sequence[tuple[str, int, float]], units: str = "level") -> dict[str, GrowthSeries]:
    """Group ``(entity, year, value)`` rows into one series per entity."""
    grouped: dict[str, list[tuple[int, float]]] = {}
    for entity, year, value in rows:
        grouped.setdefault(entity, []).append((year, value))
    return {e: GrowthSeries.from_pairs(e, obs, units) for e, obs in sorted(grouped.items())}
