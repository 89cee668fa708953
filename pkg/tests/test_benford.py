import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from benfordqpt.benford import (
    BenfordSample,
    DigitHistogram,
    analyze_series,
    benford_pmf,
    first_significant_digit,
    histogram,
    shift_scale,
    violation_from_counts,
    violation_parameter,
)
from benfordqpt.exceptions import DegenerateSampleError, DomainError, EmptyHistogramError

P = [math.log10(1 + 1 / d) for d in range(1, 10)]


class TestPmf:
    def test_first_and_last(self):
        assert benford_pmf(1) == pytest.approx(0.30103, abs=1e-5)
        assert benford_pmf(9) == pytest.approx(0.04576, abs=1e-5)

    def test_normalised(self):
        assert math.fsum(benford_pmf(d) for d in range(1, 10)) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("d", [0, 10, 1.5, -3])
    def test_out_of_range(self, d):
        with pytest.raises(DomainError):
            benford_pmf(d)


class TestShiftScale:
    def test_three_points(self):
        s = shift_scale([1, 2, 3])
        assert s.values.tolist() == [0.5] and s.sample_size == 1

    def test_four_points(self):
        np.testing.assert_allclose(shift_scale([10, 20, 30, 40]).values, [1 / 3, 2 / 3])

    def test_constant(self):
        with pytest.raises(DegenerateSampleError):
            shift_scale([5, 5, 5])

    def test_ties_at_extremes_removed(self):
        assert shift_scale([0, 0, 1, 2, 2]).sample_size == 1

    def test_too_short(self):
        with pytest.raises(DomainError):
            shift_scale([1, 2])

    def test_sample_rejects_endpoints(self):
        with pytest.raises(DomainError):
            BenfordSample(np.array([0.0, 0.5]))


class TestFirstDigit:
    @pytest.mark.parametrize("x, d", [(0.00234, 2), (0.5, 5), (0.0999, 9), (0.1, 1), (0.3, 3), (1e-300, 1)])
    def test_examples(self, x, d):
        assert first_significant_digit(x) == d

    def test_value_just_below_decade(self):
        assert first_significant_digit(0.1 * (1 - 2**-53)) == 9

    @pytest.mark.parametrize("x", [0.0, 1.0, -0.2, 1.5])
    def test_domain(self, x):
        with pytest.raises(DomainError):
            first_significant_digit(x)

    @settings(max_examples=300)
    @given(st.floats(1e-290, 1, exclude_max=True))
    def test_scale_by_ten(self, x):
        mantissa = x / 10.0 ** math.floor(math.log10(x))
        assume(abs(mantissa - round(mantissa)) > 1e-12)
        assert first_significant_digit(x) == first_significant_digit(x / 10)

    @settings(max_examples=200)
    @given(st.floats(1e-30, 1, exclude_max=True))
    def test_agrees_with_shortest_repr(self, x):
        assert first_significant_digit(x) == int(next(c for c in repr(x) if c in "123456789"))


class TestHistogram:
    def test_small(self):
        h = histogram(BenfordSample(np.array([0.1, 0.11, 0.2])))
        assert h.counts == {1: 2, 2: 1, 3: 0, 4: 0, 5: 0, 6: 0, 7: 0, 8: 0, 9: 0}
        assert h.sample_size == 3

    def test_empty(self):
        h = histogram(BenfordSample(np.array([])))
        assert h.sample_size == 0 and sum(h.counts.values()) == 0

    def test_equidistributed_mantissas_follow_benford(self):
        # {k log10 2} mod 1 is equidistributed, so 10**-u has Benford leading digits
        k = np.arange(1, 10001)
        u = np.mod(k * math.log10(2), 1.0)
        h = histogram(BenfordSample(10.0 ** (-u)))
        np.testing.assert_allclose(h.relative_frequencies(), P, atol=0.01)

    def test_inconsistent_counts_rejected(self):
        with pytest.raises(DomainError):
            DigitHistogram({1: 3}, 2)


class TestViolationParameter:
    @pytest.mark.parametrize("n", [1, 1998, 10**6])
    def test_zero_for_exact_benford_counts(self, n):
        counts = np.array([benford_pmf(d) * n for d in range(1, 10)])
        assert violation_from_counts(counts, n) == 0.0

    def test_near_benford_integer_counts(self):
        n = 10**6
        counts = np.round(np.array(P) * n).astype(int)
        h = DigitHistogram.from_array(counts)
        expected = sum(abs(c - h.sample_size * p) / (h.sample_size * p) for c, p in zip(counts, P))
        assert violation_parameter(h) == pytest.approx(expected, rel=1e-12)
        assert 0 < violation_parameter(h) < 1e-4

    @pytest.mark.parametrize("n", [1, 7, 1000])
    def test_single_digit(self, n):
        expected = (1 - P[0]) / P[0] + 8
        assert expected == pytest.approx(10.3219, abs=1e-4)
        assert violation_parameter(DigitHistogram({1: n}, n)) == pytest.approx(expected, abs=1e-9)

    def test_uniform(self):
        expected = sum(abs(1 / (9 * p) - 1) for p in P)
        assert expected == pytest.approx(5.8365, abs=1e-4)
        assert violation_parameter(DigitHistogram.from_array([100] * 9)) == pytest.approx(expected, abs=1e-9)

    def test_empty(self):
        with pytest.raises(EmptyHistogramError):
            violation_parameter(DigitHistogram())


class TestAnalyzeSeries:
    def test_three_points(self):
        h, delta = analyze_series([1, 2, 3])
        assert h.counts[5] == 1 and h.sample_size == 1
        assert delta == pytest.approx(sum(abs((d == 5) - p) / p for d, p in zip(range(1, 10), P)))

    def test_geometric_series_conforms(self):
        _, delta = analyze_series(1.01 ** np.arange(5000))
        assert delta < 0.5

    def test_constant(self):
        with pytest.raises(DegenerateSampleError):
            analyze_series(np.full(10, 3.0))

    @settings(max_examples=100, deadline=None)
    @given(
        v=arrays(np.float64, st.integers(3, 200), elements=st.floats(-1e3, 1e3)),
        alpha=st.floats(1e-3, 1e3),
        beta=st.floats(-1e3, 1e3),
    )
    def test_partition_and_nonnegative(self, v, alpha, beta):
        assume(v.max() > v.min())
        sample = shift_scale(v)
        h = histogram(sample)
        assert sum(h.counts.values()) == h.sample_size == sample.sample_size
        if h.sample_size == 0:
            with pytest.raises(EmptyHistogramError):
                analyze_series(v)
        else:
            assert analyze_series(v)[1] >= 0
