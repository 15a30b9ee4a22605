"""Synthetic target/reference level series with known growth-rate ratios.

Levels are sampled from exact curves at integer years and multiplied by
``exp(eps)``, ``eps ~ Normal(0, noise_sd**2)``.  Noise comes from numpy's
``default_rng(seed)`` (PCG64 bit generator); the target's draws are taken
first, then the reference's, so a given spec always yields the same pair.

Ground truth for the regression slope is ``rate(target) / rate(reference)``.
For Gompertz curves the log-difference growth rate is an exact exponential
in time, so the log-log slope of smoothed rates equals that ratio exactly.
For logistic curves it holds in the saturating phase, past both inflections.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Literal, Union

import numpy as np

from .curves import GompertzCurve, LogisticCurve, gompertz_eval, logistic_eval
from .errors import InputError
from .inference import OlsFit, ols_fit
from .timeseries import GrowthSeries, PairedSample, PreprocessConfig, prepare_pair
from .typology import TypologyVerdict, classify

Curve = Union[LogisticCurve, GompertzCurve]
Family = Literal["logistic", "gompertz"]


@dataclass(frozen=True)
class ScenarioSpec:
    family: Family
    target: Curve
    reference: Curve
    years: tuple[int, ...]
    noise_sd: float = 0.0
    seed: int = 0
    target_label: str = "target"
    reference_label: str = "reference"

    def __post_init__(self):
        object.__setattr__(self, "years", tuple(int(y) for y in self.years))
        if self.noise_sd < 0:
            raise ValueError(f"noise_sd must be non-negative, got {self.noise_sd}")
        if len(self.years) < 4:
            raise ValueError("a scenario needs at least 4 years")
        if self.family not in ("logistic", "gompertz"):
            raise ValueError(f"unknown family {self.family!r}")
        cls = LogisticCurve if self.family == "logistic" else GompertzCurve
        if not (isinstance(self.target, cls) and isinstance(self.reference, cls)):
            raise ValueError(f"both curves must be {cls.__name__}")

    @property
    def rate_ratio(self) -> float:
        return self.target.rate / self.reference.rate


@dataclass(frozen=True)
class Recovery:
    b_true_ratio: float
    b_hat: float
    verdict: TypologyVerdict
    fit: OlsFit
    pairs: PairedSample


def _sample(curve: Curve, t: np.ndarray) -> np.ndarray:
    if isinstance(curve, LogisticCurve):
        return np.asarray(logistic_eval(curve, t), dtype=float)
    return np.asarray(gompertz_eval(curve, t), dtype=float)


def generate(spec: ScenarioSpec) -> tuple[GrowthSeries, GrowthSeries]:
    """Draw ``(target, reference)`` level series for ``spec``."""
    t = np.asarray(spec.years, dtype=float)
    rng = np.random.default_rng(spec.seed)
    out = []
    for curve, label in ((spec.target, spec.target_label), (spec.reference, spec.reference_label)):
        levels = _sample(curve, t)
        if spec.noise_sd > 0:
            levels = levels * np.exp(rng.normal(0.0, spec.noise_sd, size=t.size))
        out.append(GrowthSeries(label, spec.years, tuple(levels.tolist())))
    return out[0], out[1]


def recovery_check(
    spec: ScenarioSpec,
    config: PreprocessConfig = PreprocessConfig(),
    alpha: float = 0.05,
) -> Recovery:
    """Run the full pipeline on synthetic data and compare to the true ratio."""
    target, reference = generate(spec)
    pairs = prepare_pair(target, reference, config)
    fit = ols_fit(pairs)
    return Recovery(spec.rate_ratio, fit.slope, classify(fit, alpha), fit, pairs)


# -- scenario files ----------------------------------------------------------

_CURVE_KEYS = {
    "logistic": ("capacity", "rate", "inflection_time"),
    "gompertz": ("capacity", "rate", "shape"),
}


def _curve_from_dict(family: str, d: dict) -> Curve:
    keys = _CURVE_KEYS[family]
    missing = [k for k in keys if k not in d]
    if missing:
        raise InputError(f"{family} curve is missing {', '.join(missing)}")
    args = [float(d[k]) for k in keys]
    return LogisticCurve(*args) if family == "logistic" else GompertzCurve(*args)


def scenario_from_dict(d: dict) -> ScenarioSpec:
    """Build a spec from the JSON scenario layout documented in the README."""
    try:
        family = d["family"]
        if family not in _CURVE_KEYS:
            raise InputError(f"unknown family {family!r}")
        first, last = d["years"]
        labels = d.get("labels", {})
        return ScenarioSpec(
            family=family,
            target=_curve_from_dict(family, d["target"]),
            reference=_curve_from_dict(family, d["reference"]),
            years=tuple(range(int(first), int(last) + 1)),
            noise_sd=float(d.get("noise_sd", 0.0)),
            seed=int(d.get("seed", 0)),
            target_label=labels.get("target", "target"),
            reference_label=labels.get("reference", "reference"),
        )
    except KeyError as exc:
        raise InputError(f"scenario is missing key {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"invalid scenario: {exc}") from None


def load_scenario(path: str | Path) -> ScenarioSpec:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    return scenario_from_dict(data)


def scenario_to_dict(spec: ScenarioSpec) -> dict:
    keys = _CURVE_KEYS[spec.family]
    years = spec.years
    if years != tuple(range(years[0], years[-1] + 1)):
        raise ValueError("only contiguous year ranges are expressible in a scenario file")
    return {
        "family": spec.family,
        "target": {k: getattr(spec.target, k) for k in keys},
        "reference": {k: getattr(spec.reference, k) for k in keys},
        "years": [years[0], years[-1]],
        "noise_sd": spec.noise_sd,
        "seed": spec.seed,
        "labels": {"target": spec.target_label, "reference": spec.reference_label},
    }
