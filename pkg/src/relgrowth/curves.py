"""S-shaped growth curves and the allometric relations derived from them.

Two curve families are supported:

* logistic, ``Y = K / (1 + exp(a - b t))`` with ``a = b t1``; symmetric,
  inflection at ``K / 2`` when ``t = t1``.
* Gompertz, ``Y = K exp(-exp(I - J t))``; asymmetric, inflection at
  ``K / e`` when ``t = I / J``.

When a target system ``X`` and a reference system ``Y`` both follow such a
curve, eliminating time gives (exactly, or in the early-growth limit) the
power law ``X = A Y**B`` whose exponent is the ratio of intrinsic growth
rates, target over reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Literal, Mapping

import numpy as np

from .errors import DomainError, FitError
from .timeseries import GrowthSeries

Derivation = Literal["logistic-pair", "gompertz-equal-rate", "generalized", "fitted"]

# relative tolerance for treating two Gompertz rates as equal (v == 1)
EQUAL_RATE_RTOL = 1e-12

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class LogisticCurve:
    capacity: float
    rate: float
    inflection_time: float

    def __post_init__(self):
        if not self.capacity > 0:
            raise DomainError(f"capacity must be positive, got {self.capacity}")
        if not self.rate > 0:
            raise DomainError(f"rate must be positive, got {self.rate}")

    @property
    def location(self) -> float:
        """The constant ``a = b * t1`` of the linearized form."""
        return self.rate * self.inflection_time

    def __call__(self, t):
        return logistic_eval(self, t)


@dataclass(frozen=True)
class GompertzCurve:
    capacity: float
    rate: float
    shape: float

    def __post_init__(self):
        if not self.capacity > 0:
            raise DomainError(f"capacity must be positive, got {self.capacity}")
        if not self.rate > 0:
            raise DomainError(f"rate must be positive, got {self.rate}")

    @property
    def g(self) -> float:
        return math.exp(self.shape)

    @property
    def inflection_time(self) -> float:
        return self.shape / self.rate

    def __call__(self, t):
        return gompertz_eval(self, t)


@dataclass(frozen=True)
class AllometricRelation:
    """The power law ``x = scale * y**exponent``.

    ``constants`` keeps the intermediate quantities of the derivation
    (``C1`` for a logistic pair, ``M`` and ``v`` for Gompertz, ``m`` for the
    generalized system) so callers can inspect them.
    """

    scale: float
    exponent: float
    derivation: Derivation
    constants: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not self.scale > 0:
            raise DomainError(f"scale must be positive, got {self.scale}")

    def __call__(self, y):
        return allometric_eval(self, y)


# -- evaluation and linearizations -------------------------------------------

def logistic_eval(curve: LogisticCurve, t):
    """Level of the logistic curve at time ``t`` (scalar or array)."""
    with np.errstate(over="ignore"):
        z = np.exp(curve.rate * curve.inflection_time - curve.rate * np.asarray(t, dtype=float))
    out = curve.capacity / (1.0 + z)
    return float(out) if np.ndim(out) == 0 else out


def logistic_logit(curve: LogisticCurve, level):
    """``ln((K - level) / level)``, which equals ``a - b t`` on the curve."""
    y = np.asarray(level, dtype=float)
    if np.any(y <= 0) or np.any(y >= curve.capacity):
        raise DomainError(f"level must lie in (0, {curve.capacity})")
    out = np.log((curve.capacity - y) / y)
    return float(out) if np.ndim(out) == 0 else out


def gompertz_eval(curve: GompertzCurve, t):
    """Level of the Gompertz curve at time ``t`` (scalar or array)."""
    with np.errstate(over="ignore"):
        inner = np.exp(curve.shape - curve.rate * np.asarray(t, dtype=float))
    out = curve.capacity * np.exp(-inner)
    return float(out) if np.ndim(out) == 0 else out


def gompertz_loglog(curve: GompertzCurve, level):
    """``ln(ln(K / level))``, which equals ``I - J t`` on the curve."""
    y = np.asarray(level, dtype=float)
    if np.any(y <= 0) or np.any(y >= curve.capacity):
        raise DomainError(f"level must lie in (0, {curve.capacity})")
    out = np.log(np.log(curve.capacity / y))
    return float(out) if np.ndim(out) == 0 else out


# -- allometric relations ----------------------------------------------------

def derive_allometry_logistic(curve_y: LogisticCurve, curve_x: LogisticCurve) -> AllometricRelation:
    """Early-growth power law between two logistic curves.

    ``curve_y`` is the reference system and ``curve_x`` the target. The
    exponent is ``b_x / b_y``.  The scale comes from solving
    ``Y / K1 = C1 (X / K2)**(b1/b2)`` for ``X``, so that
    ``A = K2 * (K1 * C1)**(-B)`` with ``C1 = exp(b1 (t2 - t1))``.
    """
    exponent = curve_x.rate / curve_y.rate
    c1 = math.exp(curve_y.rate * (curve_x.inflection_time - curve_y.inflection_time))
    scale = curve_x.capacity * (curve_y.capacity * c1) ** (-exponent)
    return AllometricRelation(scale, exponent, "logistic-pair", {"C1": c1})


def allometric_eval(rel: AllometricRelation, y):
    yy = np.asarray(y, dtype=float)
    if np.any(yy <= 0):
        raise DomainError("allometric relation is defined for y > 0 only")
    out = rel.scale * yy ** rel.exponent
    return float(out) if np.ndim(out) == 0 else out


def derive_allometry_gompertz(curve_y: GompertzCurve, curve_x: GompertzCurve) -> AllometricRelation:
    """Exact power law between two Gompertz curves growing at the same rate.

    Only valid when ``J1 == J2`` (within :data:`EQUAL_RATE_RTOL`); otherwise
    use :func:`gompertz_relation_exact`.
    """
    if not math.isclose(curve_y.rate, curve_x.rate, rel_tol=EQUAL_RATE_RTOL, abs_tol=0.0):
        raise DomainError(
            f"Gompertz rates differ ({curve_y.rate} vs {curve_x.rate}); "
            "no power law exists, use gompertz_relation_exact"
        )
    m = math.exp(curve_y.shape - curve_x.shape)
    exponent = 1.0 / m
    scale = curve_x.capacity / curve_y.capacity ** exponent
    return AllometricRelation(scale, exponent, "gompertz-equal-rate", {"M": m, "v": 1.0})


def gompertz_relation_exact(curve_y: GompertzCurve, curve_x: GompertzCurve, x):
    """Reference level ``Y`` matching target level ``x`` at the same instant.

    ``Y = K1 exp(-M (ln(K2 / x))**v)`` with ``v = J1/J2`` and
    ``M = e**I1 / (e**I2)**v``; holds for any pair of rates.
    """
    xx = np.asarray(x, dtype=float)
    if np.any(xx <= 0) or np.any(xx >= curve_x.capacity):
        raise DomainError(f"x must lie in (0, {curve_x.capacity})")
    v = curve_y.rate / curve_x.rate
    m = math.exp(curve_y.shape - v * curve_x.shape)
    out = curve_y.capacity * np.exp(-m * np.log(curve_x.capacity / xx) ** v)
    return float(out) if np.ndim(out) == 0 else out


def derive_allometry_generalized(k1: float, u1: float, k2: float, u2: float) -> AllometricRelation:
    """Power law for the generalized pair of growth equations.

    ``m = K1 u1 / (K2 u2)``, exponent ``1/m``, scale ``(K2/K1)**(1/m)``.
    With ``u = b / K`` the exponent reduces to the logistic ``b2 / b1``.
    """
    for name, val in (("K1", k1), ("u1", u1), ("K2", k2), ("u2", u2)):
        if not val > 0:
            raise DomainError(f"{name} must be positive, got {val}")
    m = (k1 * u1) / (k2 * u2)
    exponent = 1.0 / m
    return AllometricRelation((k2 / k1) ** exponent, exponent, "generalized", {"m": m})


# -- fitting -----------------------------------------------------------------

@dataclass(frozen=True)
class _Family:
    linearize: Callable[[float, np.ndarray], np.ndarray]
    # intercept, slope of the linearized fit -> level at t
    level: Callable[[float, float, float, np.ndarray], np.ndarray]


def _logistic_level(k, c0, c1, t):
    with np.errstate(over="ignore"):
        return k / (1.0 + np.exp(c0 + c1 * t))


def _gompertz_level(k, c0, c1, t):
    with np.errstate(over="ignore"):
        return k * np.exp(-np.exp(c0 + c1 * t))


_FAMILIES = {
    "logistic": _Family(lambda k, y: np.log((k - y) / y), _logistic_level),
    "gompertz": _Family(lambda k, y: np.log(np.log(k / y)), _gompertz_level),
}


def _line(t: np.ndarray, z: np.ndarray) -> tuple[float, float]:
    tm = t.mean()
    dt = t - tm
    slope = float(dt @ (z - z.mean()) / (dt @ dt))
    return float(z.mean() - slope * tm), slope


def capacity_sse(series: GrowthSeries, capacity: float, family: str = "logistic") -> float:
    """Level-space SSE of the best linearized fit at a fixed capacity.

    Returns ``inf`` for a candidate capacity that does not exceed every
    observation, since the linearizing log is then undefined.
    """
    fam = _FAMILIES[family]
    t, y = series.arrays()
    if not np.all(y < capacity):
        return math.inf
    c0, c1 = _line(t, fam.linearize(capacity, y))
    resid = y - fam.level(capacity, c0, c1, t)
    return float(resid @ resid)


def _golden_section(f, lo: float, hi: float, rtol: float = 1e-13, maxiter: int = 500) -> float:
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(maxiter):
        if hi - lo <= rtol * hi:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
    return x1 if f1 <= f2 else x2


def _fit(series: GrowthSeries, family: str, grid_size: int = 96) -> tuple[float, float, float]:
    if len(series) < 4:
        raise ValueError(f"{series.entity}: need at least 4 observations to fit a curve")
    t, y = series.arrays()
    if np.any(y <= 0):
        raise DomainError(f"{series.entity}: levels must be positive")
    if np.all(y == y[0]):
        raise FitError(f"{series.entity}: constant series")
    if y[-1] <= y[0]:
        raise FitError(f"{series.entity}: series is non-increasing overall")

    top = float(y.max())
    lo, hi = top * (1.0 + 1e-9), top * 10.0
    grid = np.geomspace(lo, hi, grid_size)
    sse = np.array([capacity_sse(series, k, family) for k in grid])
    i = int(np.argmin(sse))
    if i == grid_size - 1:
        raise FitError(f"{series.entity}: capacity search brackets no minimum")
    k = _golden_section(
        lambda c: capacity_sse(series, c, family),
        float(grid[max(i - 1, 0)]),
        float(grid[i + 1]),
    )
    c0, c1 = _line(t, _FAMILIES[family].linearize(k, y))
    if c1 >= 0:
        raise FitError(f"{series.entity}: fitted growth rate is not positive")
    return k, c0, c1


def fit_logistic(series: GrowthSeries) -> LogisticCurve:
    """Fit a logistic curve to a level series.

    The capacity is found by a golden-section search over
    ``(max(y), 10 max(y)]`` on the level-space SSE; for each candidate the
    linearized model ``ln((K - y)/y) = a - b t`` is solved by least squares.
    """
    k, a, neg_b = _fit(series, "logistic")
    b = -neg_b
    return LogisticCurve(k, b, a / b)


def fit_gompertz(series: GrowthSeries) -> GompertzCurve:
    """Fit a Gompertz curve; mirror of :func:`fit_logistic` on ``ln ln(K/y)``."""
    k, i, neg_j = _fit(series, "gompertz")
    return GompertzCurve(k, -neg_j, i)


def fit_curve(series: GrowthSeries, family: str = "logistic"):
    if family == "logistic":
        return fit_logistic(series)
    if family == "gompertz":
        return fit_gompertz(series)
    raise ValueError(f"unknown curve family {family!r}")
