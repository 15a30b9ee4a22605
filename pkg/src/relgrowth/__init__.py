"""Allometric measurement of relative growth between economic systems.

A target system and a reference system whose outputs follow S-shaped
growth curves are related by a power law ``X = A * Y**B``; the exponent
``B`` is the ratio of their growth rates.  The package estimates ``B`` from
paired yearly series by log-log regression and labels the result as
isometric growth, positive allometry (development) or negative allometry
(under-development).
"""

__version__ = "0.1.0"

from .curves import (  # noqa: E402
    AllometricRelation,
    GompertzCurve,
    LogisticCurve,
    allometric_eval,
    derive_allometry_generalized,
    derive_allometry_gompertz,
    derive_allometry_logistic,
    fit_gompertz,
    fit_logistic,
    gompertz_eval,
    gompertz_loglog,
    gompertz_relation_exact,
    logistic_eval,
    logistic_logit,
)
from .errors import DomainError, FitError, InputError, RelGrowthError  # noqa: E402
from .inference import (  # noqa: E402
    HypothesisTest,
    OlsFit,
    durbin_watson,
    f_test,
    ols_fit,
    student_t_cdf,
    t_test,
)
from .timeseries import (  # noqa: E402
    GrowthSeries,
    PairedSample,
    PreprocessConfig,
    growth_rates,
    moving_average,
    pair_and_log,
    rebase,
)
from .typology import Label, TypologyVerdict, classify, classify_from_summary, render_relation  # noqa: E402

__all__ = [
    "AllometricRelation", "GompertzCurve", "LogisticCurve", "allometric_eval",
    "derive_allometry_generalized", "derive_allometry_gompertz", "derive_allometry_logistic",
    "fit_gompertz", "fit_logistic", "gompertz_eval", "gompertz_loglog",
    "gompertz_relation_exact", "logistic_eval", "logistic_logit",
    "DomainError", "FitError", "InputError", "RelGrowthError",
    "HypothesisTest", "OlsFit", "durbin_watson", "f_test", "ols_fit", "student_t_cdf", "t_test",
    "GrowthSeries", "PairedSample", "PreprocessConfig", "growth_rates", "moving_average",
    "pair_and_log", "rebase",
    "Label", "TypologyVerdict", "classify", "classify_from_summary", "render_relation",
    "__version__",
]
