import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from relgrowth.errors import DomainError
from relgrowth.timeseries import (
    NON_POSITIVE,
    UNMATCHED,
    GrowthSeries,
    PreprocessConfig,
    growth_rates,
    moving_average,
    pair_and_log,
    preprocess,
    rebase,
)


def series(values, start=1, entity="e", units="level"):
    return GrowthSeries(entity, tuple(range(start, start + len(values))), tuple(values), units)


levels = st.lists(st.floats(min_value=0.1, max_value=1e5), min_size=4, max_size=40)


class TestGrowthSeries:
    def test_rejects_unsorted_years(self):
        with pytest.raises(ValueError):
            GrowthSeries("e", (2001, 2000), (1.0, 2.0))

    def test_rejects_duplicate_years(self):
        with pytest.raises(ValueError):
            GrowthSeries("e", (2000, 2000), (1.0, 2.0))

    def test_from_pairs_sorts(self):
        s = GrowthSeries.from_pairs("e", [(2002, 3), (2000, 1), (2001, 2)])
        assert s.years == (2000, 2001, 2002)
        assert s.values == (1.0, 2.0, 3.0)


class TestGrowthRates:
    def test_percent_change(self):
        r = growth_rates(series([100, 110, 121]), "percent-change")
        np.testing.assert_allclose(r.values, [0.10, 0.10], rtol=1e-12)
        assert r.years == (2, 3)
        assert r.units == "rate"

    def test_log_difference(self):
        r = growth_rates(series([100, 110, 121]), "log-difference")
        np.testing.assert_allclose(r.values, [0.0953101798043249408] * 2, rtol=1e-12)

    def test_single_observation(self):
        with pytest.raises(ValueError):
            growth_rates(series([100.0]))

    def test_log_difference_needs_positive(self):
        with pytest.raises(DomainError):
            growth_rates(series([100.0, -5.0, 3.0]), "log-difference")

    def test_percent_change_allows_negative_rates(self):
        r = growth_rates(series([100.0, 90.0]))
        assert r.values[0] == pytest.approx(-0.1)

    @given(levels, st.floats(min_value=1e-3, max_value=1e3))
    def test_rebase_invariance(self, vals, c):
        s = series(vals)
        scaled = GrowthSeries("e", s.years, tuple(v * c for v in vals))
        for method in ("percent-change", "log-difference"):
            np.testing.assert_allclose(
                growth_rates(scaled, method).values, growth_rates(s, method).values,
                rtol=1e-12, atol=1e-12,
            )

    def test_rebase_leaves_percent_change_identical(self):
        s = series([100.0, 110.0, 99.0, 130.0])
        np.testing.assert_allclose(
            growth_rates(rebase(s, 1)).values, growth_rates(s).values, rtol=1e-14
        )


class TestMovingAverage:
    def test_window_three(self):
        m = moving_average(series([1, 2, 3, 4]), 3)
        assert m.values == (2.0, 3.0)
        assert m.years == (2, 3)

    def test_window_one_is_identity(self):
        s = series([0.3, -0.1, 0.7])
        assert moving_average(s, 1) == s

    def test_alternating(self):
        m = moving_average(series([0.1, 0.4, 0.1, 0.4, 0.1]), 3)
        np.testing.assert_allclose(m.values, [0.2, 0.3, 0.2], rtol=1e-12)

    def test_window_too_long(self):
        with pytest.raises(ValueError):
            moving_average(series([1, 2]), 3)

    @pytest.mark.parametrize("w", [0, 2, -1])
    def test_bad_window(self, w):
        with pytest.raises(ValueError):
            moving_average(series([1, 2, 3, 4]), w)

    @given(st.floats(-1e3, 1e3), st.integers(5, 30), st.sampled_from([1, 3, 5]))
    def test_constant_series_preserved(self, c, n, w):
        m = moving_average(series([c] * n), w)
        np.testing.assert_allclose(m.values, c, atol=1e-12 * max(1.0, abs(c)))

    def test_window_five(self):
        m = moving_average(series([1, 2, 3, 4, 5, 6]), 5)
        assert m.values == (3.0, 4.0)
        assert m.years == (3, 4)


class TestRebase:
    def test_basic(self):
        s = GrowthSeries("e", (1980, 1981), (100.0, 110.0))
        assert rebase(s, 1980).values == (1.0, 1.1)

    def test_idempotent(self):
        s = GrowthSeries("e", (1980, 1981, 1982), (100.0, 110.0, 95.0))
        once = rebase(s, 1981)
        assert rebase(once, 1981) == once

    def test_missing_year(self):
        with pytest.raises(ValueError):
            rebase(GrowthSeries("e", (1980, 1981), (100.0, 110.0)), 1979)

    def test_zero_base(self):
        with pytest.raises(DomainError):
            rebase(GrowthSeries("e", (1980, 1981), (0.0, 110.0)), 1980)


class TestPairAndLog:
    def test_all_positive(self):
        p = pair_and_log(series([0.05, 0.03], units="rate"), series([0.04, 0.02], units="rate"))
        assert len(p) == 2 and p.dropped == ()
        assert p.pairs[0] == (1, math.log(0.05), math.log(0.04))

    def test_non_positive_dropped(self):
        p = pair_and_log(series([0.05, -0.01]), series([0.04, 0.02]))
        assert len(p) == 1
        assert p.dropped == ((2, NON_POSITIVE),)

    def test_unmatched_years(self):
        p = pair_and_log(series([0.1, 0.2, 0.3], start=1), series([0.2, 0.3, 0.4], start=2))
        assert [y for y, _, _ in p.pairs] == [2, 3]
        assert p.dropped == ((1, UNMATCHED), (4, UNMATCHED))

    def test_no_overlap(self):
        with pytest.raises(ValueError):
            pair_and_log(series([0.1, 0.2], start=1), series([0.1, 0.2], start=10))

    @given(
        st.dictionaries(st.integers(1900, 1960), st.floats(-1, 1), min_size=1),
        st.dictionaries(st.integers(1900, 1960), st.floats(-1, 1), min_size=1),
    )
    def test_conservation(self, a, b):
        if not set(a) & set(b):
            return
        ta = GrowthSeries.from_pairs("a", a.items())
        tb = GrowthSeries.from_pairs("b", b.items())
        p = pair_and_log(ta, tb)
        years = [y for y, _, _ in p.pairs] + [y for y, _ in p.dropped]
        assert sorted(years) == sorted(set(a) | set(b))
        assert len(p.pairs) + len(p.dropped) == len(set(a) | set(b))

    def test_arrays(self):
        p = pair_and_log(series([0.05, 0.03]), series([0.04, 0.02]))
        np.testing.assert_allclose(p.ln_y, np.log([0.05, 0.03]))
        np.testing.assert_allclose(p.ln_x, np.log([0.04, 0.02]))


class TestPreprocess:
    @pytest.mark.parametrize("order", ["rate-first", "level-first"])
    @pytest.mark.parametrize("length", [5, 10, 24])
    def test_length_accounting(self, order, length):
        s = series(list(np.linspace(100, 200, length)))
        out = preprocess(s, PreprocessConfig(smooth_order=order))
        assert len(out) == length - 3

    def test_rate_first_matches_manual_chain(self):
        s = series([100, 104, 109, 111, 118, 121])
        out = preprocess(s, PreprocessConfig())
        assert out == moving_average(growth_rates(s), 3)

    def test_level_first(self):
        s = series([100, 104, 109, 111, 118, 121])
        out = preprocess(s, PreprocessConfig(smooth_order="level-first"))
        assert out == growth_rates(moving_average(s, 3))

    def test_rebase_in_chain(self):
        s = series([100, 104, 109, 111, 118, 121], start=1980)
        out = preprocess(s, PreprocessConfig(rebase_year=1981, rate_method="log-difference"))
        ref = preprocess(s, PreprocessConfig(rate_method="log-difference"))
        np.testing.assert_allclose(out.values, ref.values, rtol=1e-12)

    @pytest.mark.parametrize("kwargs", [
        {"ma_window": 2}, {"ma_window": 0}, {"rate_method": "diff"}, {"smooth_order": "both"},
    ])
    def test_config_validation(self, kwargs):
        with pytest.raises(ValueError):
            PreprocessConfig(**kwargs)

    def test_config_dict_round_trip(self):
        c = PreprocessConfig("log-difference", 5, 1981, "level-first")
        assert PreprocessConfig.from_dict(c.to_dict()) == c
