"""
Paired statistics tests
"""

import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from quaydeck.exceptions import ZeroVariance
from quaydeck.stats import (
    PairedSample, critical_value, describe, improvement_pct, paired_t_test, pearson_r,
    seconds_to_minutes, two_tailed_p,
)

minutes = st.floats(min_value=1.0, max_value=1000.0, allow_nan=False)
pairs = st.lists(st.tuples(minutes, minutes), min_size=3, max_size=30)


def spread(values):
    return float(np.std(values))


class TestPairedSample:

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            PairedSample([1, 2, 3], [1, 2])

    def test_too_short(self):
        with pytest.raises(ValueError):
            PairedSample([1], [2])


class TestPairedTTest:

    def test_worked_case(self):
        result = paired_t_test(PairedSample([1, 2, 3], [2, 4, 6]))
        assert result.t_statistic == pytest.approx(3.4641, abs=1e-4)
        assert result.degrees_of_freedom == 2
        assert result.p_value == pytest.approx(1 - math.sqrt(6 / 7), abs=1e-9)
        assert not result.significant
        assert result.pearson_r == pytest.approx(1.0)
        assert (result.mean_a, result.mean_b) == (2.0, 4.0)

    def test_sign_convention(self):
        faster = [10.0, 11.0, 12.5, 9.0]
        slower = [13.0, 12.0, 16.0, 12.5]
        assert paired_t_test(PairedSample(faster, slower)).t_statistic > 0
        assert paired_t_test(PairedSample(slower, faster)).t_statistic < 0

    def test_significant_difference(self):
        rng = np.random.default_rng(0)
        base = rng.normal(60.0, 3.0, size=20)
        result = paired_t_test(PairedSample(base - 5.0 + rng.normal(0, 0.5, 20), base))
        assert result.significant
        assert result.p_value < 0.05

    def test_constant_differences(self):
        with pytest.raises(ZeroVariance):
            paired_t_test(PairedSample([1, 2, 3], [2, 3, 4]))

    def test_constant_sample_leaves_r_undefined(self):
        result = paired_t_test(PairedSample([5, 5, 5], [6, 7, 9]))
        assert math.isnan(result.pearson_r)

    def test_as_dict(self):
        d = paired_t_test(PairedSample([1, 2, 3], [2, 4, 6])).as_dict()
        assert set(d) >= {'t', 'df', 'p', 'significant', 'r'}

    @given(st.lists(st.tuples(minutes, minutes), min_size=3, max_size=30))
    def test_p_in_unit_interval(self, pairs):
        a, b = zip(*pairs)
        try:
            result = paired_t_test(PairedSample(a, b))
        except ZeroVariance:
            return
        assert 0.0 <= result.p_value <= 1.0
        assert math.isnan(result.pearson_r) or -1.0 <= result.pearson_r <= 1.0

    @given(pairs)
    def test_swapping_negates_t(self, pairs):
        a, b = zip(*pairs)
        assume(spread(np.subtract(b, a)) > 1e-6)
        forward = paired_t_test(PairedSample(a, b))
        backward = paired_t_test(PairedSample(b, a))
        assert backward.t_statistic == pytest.approx(-forward.t_statistic)
        assert backward.p_value == pytest.approx(forward.p_value, abs=1e-12)

    @given(pairs, st.floats(min_value=-500.0, max_value=500.0))
    def test_common_shift_changes_nothing(self, pairs, shift):
        a, b = zip(*pairs)
        assume(spread(np.subtract(b, a)) > 0.01)
        assume(spread(a) > 0.01 and spread(b) > 0.01)
        base = paired_t_test(PairedSample(a, b))
        moved = paired_t_test(PairedSample([x + shift for x in a], [x + shift for x in b]))
        assert moved.t_statistic == pytest.approx(base.t_statistic, rel=1e-6, abs=1e-6)
        assert moved.p_value == pytest.approx(base.p_value, rel=1e-6, abs=1e-9)
        assert moved.pearson_r == pytest.approx(base.pearson_r, abs=1e-6)


class TestDistribution:

    def test_critical_value(self):
        assert critical_value(19) == pytest.approx(2.093, abs=1e-3)
        assert critical_value(2) == pytest.approx(4.303, abs=1e-3)

    def test_p_at_critical_value(self):
        assert two_tailed_p(critical_value(19), 19) == pytest.approx(0.05, abs=1e-9)

    def test_p_extremes(self):
        assert two_tailed_p(0.0, 10) == pytest.approx(1.0)
        assert two_tailed_p(math.inf, 10) == 0.0

    @given(st.floats(0.0, 50.0), st.floats(0.0, 50.0), st.integers(1, 200))
    def test_p_falls_as_t_grows(self, t1, t2, df):
        low, high = sorted((t1, t2))
        assert two_tailed_p(high, df) <= two_tailed_p(low, df) + 1e-15
        assert two_tailed_p(-high, df) == two_tailed_p(high, df)


class TestHelpers:

    def test_pearson(self):
        assert pearson_r(PairedSample([1, 2, 3, 4], [1, 3, 2, 4])) == pytest.approx(0.8)
        assert pearson_r(PairedSample([1, 2, 3], [3, 2, 1])) == pytest.approx(-1.0, abs=1e-12)
        assert pearson_r(PairedSample([1, 2, 3], [2, 4, 6])) == pytest.approx(1.0, abs=1e-12)

    def test_pearson_constant(self):
        with pytest.raises(ZeroVariance):
            pearson_r(PairedSample([2, 2, 2], [1, 2, 3]))

    def test_improvement(self):
        assert improvement_pct(780.33, 667.62) == pytest.approx(14.44, abs=0.01)
        assert improvement_pct(63.82, 55.43) == pytest.approx(13.15, abs=0.01)

    def test_improvement_needs_positive_baseline(self):
        with pytest.raises(ValueError):
            improvement_pct(0.0, 10.0)

    def test_describe(self):
        stats = describe([1.0, 2.0, 3.0, 6.0])
        assert stats['min'] == 1.0 and stats['max'] == 6.0
        assert stats['mean'] == 3.0
        assert stats['sd'] == pytest.approx(math.sqrt(14 / 3))

    def test_minutes(self):
        assert seconds_to_minutes(1920) == 32.0
