"""Growth typology from an estimated allometric exponent.

Two t tests on the slope decide the label:

* ``B = 0`` (two-sided): is there a significant relation at all?
* ``B = 1`` against the one-sided alternative pointing at the estimate
  (``B < 1`` when the estimate is below one, ``B > 1`` above): does the
  target grow at a different relative rate than the reference?

==========================  ===============  ==============================
                            B = 1 rejected    B = 1 not rejected
==========================  ===============  ==============================
B = 0 rejected              Positive/Neg.     Isometry
B = 0 not rejected          Suspect Pos/Neg   SuspectIsometry
==========================  ===============  ==============================
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .inference import HypothesisTest, OlsFit, t_test, t_test_summary


class Label(str, enum.Enum):
    ISOMETRY = "Isometry"
    POSITIVE = "PositiveAllometry"
    NEGATIVE = "NegativeAllometry"
    SUSPECT_ISOMETRY = "SuspectIsometry"
    SUSPECT_POSITIVE = "SuspectPositiveAllometry"
    SUSPECT_NEGATIVE = "SuspectNegativeAllometry"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class TypologyVerdict:
    label: Label
    alpha: float
    test_vs_zero: HypothesisTest
    test_vs_one: HypothesisTest
    point_estimate: float
    rationale: tuple[str, ...]


def decide(significant: bool, differs_from_one: bool, b_hat: float) -> Label:
    """The four-cell decision table; ``b_hat`` only breaks the direction."""
    if significant:
        if not differs_from_one:
            return Label.ISOMETRY
        return Label.POSITIVE if b_hat > 1 else Label.NEGATIVE
    if not differs_from_one or b_hat == 1:
        return Label.SUSPECT_ISOMETRY
    return Label.SUSPECT_POSITIVE if b_hat > 1 else Label.SUSPECT_NEGATIVE


def _direction(b_hat: float) -> str:
    if b_hat < 1:
        return "less"
    if b_hat > 1:
        return "greater"
    return "two-sided"


def _fmt_p(p: float) -> str:
    return f"{p:.4g}"


def _verdict(b_hat: float, test0: HypothesisTest, test1: HypothesisTest, alpha: float) -> TypologyVerdict:
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    sig0 = test0.rejects(alpha)
    rej1 = test1.rejects(alpha)
    label = decide(sig0, rej1, b_hat)
    alt = {"less": "B < 1", "greater": "B > 1", "two-sided": "B != 1"}[test1.alternative]
    rationale = (
        f"B_hat = {b_hat:.6g} with {test0.df} residual df",
        f"H0: B = 0 (two-sided): t = {test0.t_stat:.4g}, p = {_fmt_p(test0.p_value)} -> "
        + ("significant relation" if sig0 else "no significant relation")
        + f" at alpha = {alpha:g}",
        f"H0: B = 1 vs H1: {alt}: t = {test1.t_stat:.4g}, p = {_fmt_p(test1.p_value)} -> "
        + ("rejected" if rej1 else "not rejected"),
        f"label: {label.value}"
        + ("" if sig0 else " (slope not distinguishable from zero, verdict is suspect)"),
    )
    return TypologyVerdict(label, alpha, test0, test1, b_hat, rationale)


def classify(fit: OlsFit, alpha: float = 0.05) -> TypologyVerdict:
    """Classify the relative growth measured by a fitted regression."""
    test0 = t_test(fit, 0.0, "two-sided")
    test1 = t_test(fit, 1.0, _direction(fit.slope))
    return _verdict(fit.slope, test0, test1, alpha)


def classify_from_summary(b_hat: float, se: float, n: int, alpha: float = 0.05) -> TypologyVerdict:
    """Same rule as :func:`classify`, fed by published ``(B_hat, SE, N)``."""
    if not se > 0:
        raise ValueError(f"standard error must be positive, got {se}")
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    df = n - 2
    test0 = t_test_summary(b_hat, se, df, 0.0, "two-sided")
    test1 = t_test_summary(b_hat, se, df, 1.0, _direction(b_hat))
    return _verdict(b_hat, test0, test1, alpha)


def format_relation(intercept: float, slope: float, target: str, reference: str) -> str:
    return f"{target} y_t = {math.exp(intercept):.3f} · {reference} x_t^{slope:.3f}"


def render_relation(fit: OlsFit, target: str, reference: str) -> str:
    """Power-law form of a fit, e.g. ``CItaly y_t = 0.603 · NItaly x_t^0.630``."""
    return format_relation(fit.intercept, fit.slope, target, reference)
