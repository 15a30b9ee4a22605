"""Simple linear regression with the statistics of a regression table.

``ols_fit`` solves ``ln y = ln a + B ln x + e`` in closed form and reports
coefficient standard errors, residual standard error, R-squared (plain and
adjusted), the regression F test and the Durbin-Watson statistic.  Tail
probabilities come from the Student t and F distributions, both expressed
through the regularized incomplete beta function.

Degenerate perfect fits (zero residual sum of squares) are kept total:
``s = 0``, standard errors are 0, t statistics become signed infinities
(or 0 when the estimate equals the null value exactly), F becomes ``inf``
and the Durbin-Watson statistic, undefined there, is ``None``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Mapping, Sequence

import numpy as np
from scipy.special import betainc

from .errors import DomainError, FitError
from .timeseries import PairedSample

Alternative = Literal["two-sided", "less", "greater"]

SIGNIFICANCE_LEVELS: tuple[float, ...] = (0.10, 0.05, 0.01, 0.001)


@dataclass(frozen=True)
class OlsFit:
    n: int
    intercept: float
    slope: float
    se_intercept: float
    se_slope: float
    s: float
    r2: float
    r2_adj: float
    f_stat: float
    f_p: float
    dw: float | None
    residuals: tuple[float, ...]

    @property
    def df(self) -> int:
        return self.n - 2


@dataclass(frozen=True)
class HypothesisTest:
    """t test of a regression coefficient against ``null_value``.

    ``p_value`` belongs to ``alternative``; ``p_two_sided`` is always
    reported as well.  ``reject_at`` maps each level in
    :data:`SIGNIFICANCE_LEVELS` to ``p_value <= level``.
    """

    null_value: float
    t_stat: float
    df: int
    p_two_sided: float
    alternative: Alternative
    p_value: float
    reject_at: Mapping[float, bool]

    def rejects(self, alpha: float) -> bool:
        return self.p_value <= alpha


# -- distributions -----------------------------------------------------------

def student_t_cdf(t: float, df: float) -> float:
    """CDF of Student's t with ``df`` degrees of freedom.

    Uses ``P(|T| > |t|) = I_x(df/2, 1/2)`` with ``x = df / (df + t**2)``.
    """
    if not df > 0:
        raise DomainError(f"degrees of freedom must be positive, got {df}")
    if math.isnan(t):
        return math.nan
    if math.isinf(t):
        return 1.0 if t > 0 else 0.0
    tail = 0.5 * float(betainc(0.5 * df, 0.5, df / (df + t * t)))
    return 1.0 - tail if t >= 0 else tail


def student_t_sf_two_sided(t: float, df: float) -> float:
    """``P(|T| >= |t|)``."""
    if math.isinf(t):
        return 0.0
    return float(betainc(0.5 * df, 0.5, df / (df + t * t)))


def f_sf(f: float, dfn: float, dfd: float) -> float:
    """Upper tail ``P(F >= f)`` of the F(dfn, dfd) distribution."""
    if math.isinf(f):
        return 0.0
    if f <= 0:
        return 1.0
    return float(betainc(0.5 * dfd, 0.5 * dfn, dfd / (dfd + dfn * f)))


# -- regression --------------------------------------------------------------

def durbin_watson(residuals: Sequence[float]) -> float:
    """``sum((e[t] - e[t-1])**2) / sum(e[t]**2)``, always in ``[0, 4]``."""
    e = np.asarray(residuals, dtype=float)
    if e.size < 2:
        raise DomainError("Durbin-Watson needs at least 2 residuals")
    denom = float(e @ e)
    if denom == 0:
        raise DomainError("Durbin-Watson is undefined for all-zero residuals")
    d = np.diff(e)
    return float(d @ d) / denom


def dw_zone(d: float, d_lower: float, d_upper: float) -> str:
    """Place ``d`` in the Durbin-Watson decision zones for tabulated bounds.

    Critical values depend on ``n`` and the number of regressors; they are
    left to the caller.
    """
    if not 0 < d_lower <= d_upper <= 2:
        raise DomainError("need 0 < d_lower <= d_upper <= 2")
    if d < d_lower:
        return "positive autocorrelation"
    if d <= d_upper:
        return "indeterminate"
    if d < 4 - d_upper:
        return "no autocorrelation"
    if d <= 4 - d_lower:
        return "indeterminate"
    return "negative autocorrelation"


def ols_xy(x: Sequence[float], y: Sequence[float]) -> OlsFit:
    """Regress ``y`` on ``x`` with an intercept."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-d arrays of equal length")
    n = x.size
    if n < 3:
        raise FitError(f"need at least 3 observations, got {n}")
    xm, ym = x.mean(), y.mean()
    dx = x - xm
    sxx = float(dx @ dx)
    if sxx == 0:
        raise FitError("regressor has zero variance")
    slope = float(dx @ (y - ym)) / sxx
    intercept = float(ym - slope * xm)
    resid = y - (intercept + slope * x)
    sse = float(resid @ resid)
    dy = y - ym
    sst = float(dy @ dy)
    df = n - 2

    s = math.sqrt(sse / df)
    se_slope = s / math.sqrt(sxx)
    se_intercept = s * math.sqrt(1.0 / n + xm * xm / sxx)
    r2 = 1.0 - sse / sst if sst > 0 else 0.0
    r2_adj = 1.0 - (1.0 - r2) * (n - 1) / df

    t0 = _t_stat(slope, 0.0, se_slope)
    f_stat = t0 * t0
    f_p = f_sf(f_stat, 1, df)
    dw = durbin_watson(resid) if sse > 0 else None
    return OlsFit(
        n=n,
        intercept=intercept,
        slope=slope,
        se_intercept=se_intercept,
        se_slope=se_slope,
        s=s,
        r2=r2,
        r2_adj=r2_adj,
        f_stat=f_stat,
        f_p=f_p,
        dw=dw,
        residuals=tuple(resid.tolist()),
    )


def ols_fit(pairs: PairedSample) -> OlsFit:
    """Fit ``ln y_t = ln a + B ln x_t`` on a paired sample."""
    return ols_xy(pairs.ln_x, pairs.ln_y)


def f_test(fit: OlsFit) -> tuple[float, float]:
    """Regression F statistic with (1, n-2) df and its p-value."""
    t0 = _t_stat(fit.slope, 0.0, fit.se_slope)
    f = t0 * t0
    return f, f_sf(f, 1, fit.df)


# -- t tests -----------------------------------------------------------------

def _t_stat(estimate: float, null_value: float, se: float) -> float:
    diff = estimate - null_value
    if se == 0:
        return 0.0 if diff == 0 else math.copysign(math.inf, diff)
    return diff / se


def t_test_summary(
    estimate: float,
    se: float,
    df: int,
    null_value: float,
    alternative: Alternative = "two-sided",
) -> HypothesisTest:
    """t test built from a published estimate and its standard error."""
    if df < 1:
        raise DomainError(f"degrees of freedom must be >= 1, got {df}")
    if se < 0:
        raise DomainError(f"standard error must be non-negative, got {se}")
    t = _t_stat(estimate, null_value, se)
    p2 = student_t_sf_two_sided(t, df)
    if alternative == "two-sided":
        p = p2
    elif alternative == "less":
        p = student_t_cdf(t, df)
    elif alternative == "greater":
        p = student_t_cdf(-t, df)
    else:
        raise ValueError(f"unknown alternative {alternative!r}")
    return HypothesisTest(
        null_value=null_value,
        t_stat=t,
        df=df,
        p_two_sided=p2,
        alternative=alternative,
        p_value=p,
        reject_at={a: p <= a for a in SIGNIFICANCE_LEVELS},
    )


def t_test(fit: OlsFit, null_value: float, alternative: Alternative = "two-sided") -> HypothesisTest:
    """Test the slope of ``fit`` against ``null_value``."""
    return t_test_summary(fit.slope, fit.se_slope, fit.df, null_value, alternative)
