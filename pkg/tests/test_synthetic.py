import json
import math
from importlib import resources

import numpy as np
import pytest

from relgrowth.curves import GompertzCurve, LogisticCurve, gompertz_eval, logistic_eval
from relgrowth.errors import InputError
from relgrowth.synthetic import (
    ScenarioSpec,
    generate,
    load_scenario,
    recovery_check,
    scenario_from_dict,
    scenario_to_dict,
)
from relgrowth.timeseries import PreprocessConfig
from relgrowth.typology import Label

SCENARIO = resources.files("relgrowth") / "data" / "scenario_gompertz_half.json"

LOGDIFF = PreprocessConfig(rate_method="log-difference")


def logistic_spec(**kw):
    base = dict(
        family="logistic",
        target=LogisticCurve(100.0, 0.5, 10.0),
        reference=LogisticCurve(100.0, 0.5, 10.0),
        years=range(0, 25),
    )
    base.update(kw)
    return ScenarioSpec(**base)


class TestGenerate:
    def test_zero_noise_is_exact(self):
        target, reference = generate(logistic_spec())
        t = np.arange(25.0)
        np.testing.assert_allclose(target.values, logistic_eval(LogisticCurve(100.0, 0.5, 10.0), t),
                                   rtol=1e-12)
        assert target.years == tuple(range(25))
        assert reference.entity == "reference"

    def test_gompertz_zero_noise(self):
        g = GompertzCurve(60.0, 0.025, 1.39)
        spec = ScenarioSpec("gompertz", g, g, range(10))
        target, _ = generate(spec)
        np.testing.assert_allclose(target.values, gompertz_eval(g, np.arange(10.0)), rtol=1e-12)

    def test_seed_determinism(self):
        spec = logistic_spec(noise_sd=0.01, seed=7)
        assert generate(spec) == generate(spec)

    def test_different_seeds_differ(self):
        a = generate(logistic_spec(noise_sd=0.01, seed=1))
        b = generate(logistic_spec(noise_sd=0.01, seed=2))
        assert a[0].values != b[0].values

    def test_noise_scale(self):
        spec = logistic_spec(noise_sd=0.01, seed=42)
        target, _ = generate(spec)
        exact = logistic_eval(spec.target, np.arange(25.0))
        mad = float(np.mean(np.abs(np.log(np.asarray(target.values) / exact))))
        expected = math.sqrt(2 / math.pi) * 0.01
        assert 0.5 * expected <= mad <= 1.5 * expected

    def test_levels_stay_positive(self):
        target, reference = generate(logistic_spec(noise_sd=0.5, seed=3))
        assert min(target.values) > 0 and min(reference.values) > 0

    @pytest.mark.parametrize("kw", [
        {"noise_sd": -0.1},
        {"years": range(3)},
        {"family": "weibull"},
        {"target": GompertzCurve(1.0, 0.1, 1.0)},
    ])
    def test_invalid_spec(self, kw):
        with pytest.raises(ValueError):
            logistic_spec(**kw)


class TestRecovery:
    def test_identical_curves_give_isometry(self):
        rec = recovery_check(logistic_spec())
        assert rec.b_hat == pytest.approx(1.0, abs=1e-9)
        assert rec.verdict.label is Label.ISOMETRY
        assert rec.b_true_ratio == 1.0

    def test_gompertz_logdiff_exact(self):
        spec = ScenarioSpec(
            "gompertz",
            GompertzCurve(60.0, 0.025, 1.39),
            GompertzCurve(100.0, 0.05, 1.48),
            range(0, 40),
        )
        rec = recovery_check(spec, LOGDIFF)
        assert rec.b_true_ratio == 0.5
        assert rec.b_hat == pytest.approx(0.5, abs=1e-9)
        assert rec.fit.n == 37

    def test_logistic_saturating_phase(self):
        spec = logistic_spec(
            target=LogisticCurve(100.0, 0.1, -40.0),
            reference=LogisticCurve(100.0, 0.2, -20.0),
            years=range(10, 40),
        )
        rec = recovery_check(spec, LOGDIFF)
        assert rec.b_hat == pytest.approx(0.5, abs=0.05)

    def test_noisy_single_seed(self):
        rec = recovery_check(load_scenario(SCENARIO))
        assert 0.3 < rec.b_hat < 0.7
        assert rec.verdict.label in (Label.NEGATIVE, Label.SUSPECT_NEGATIVE)


class TestScenarioFiles:
    def test_bundled_scenario(self):
        spec = load_scenario(SCENARIO)
        assert spec.family == "gompertz"
        assert spec.rate_ratio == 0.5
        assert spec.years == tuple(range(40))
        assert (spec.target_label, spec.reference_label) == ("Region", "North")

    def test_round_trip(self):
        spec = load_scenario(SCENARIO)
        assert scenario_from_dict(json.loads(json.dumps(scenario_to_dict(spec)))) == spec

    def test_logistic_round_trip(self):
        spec = logistic_spec(noise_sd=0.02, seed=9)
        assert scenario_from_dict(scenario_to_dict(spec)) == spec

    def test_missing_key(self):
        d = scenario_to_dict(logistic_spec())
        del d["reference"]
        with pytest.raises(InputError, match="reference"):
            scenario_from_dict(d)

    def test_missing_curve_parameter(self):
        d = scenario_to_dict(logistic_spec())
        del d["target"]["rate"]
        with pytest.raises(InputError, match="rate"):
            scenario_from_dict(d)

    def test_unknown_family(self):
        d = scenario_to_dict(logistic_spec())
        d["family"] = "richards"
        with pytest.raises(InputError):
            scenario_from_dict(d)

    def test_bad_json(self, tmp_path):
        p = tmp_path / "s.json"
        p.write_text("{not json")
        with pytest.raises(InputError):
            load_scenario(p)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            load_scenario(tmp_path / "absent.json")
