import functools
import math

import pytest

from golden_series.analysis import (
    PAPER_ROWS, AccuracyRow, accuracy_row, actual_accuracy, correct_digits,
    digits_of_accuracy, predicted_accuracy, rate_bits, term_bits,
)
from golden_series.dyadic import Dyadic
from golden_series.errors import DomainError, OraclePrecisionInsufficient
from golden_series.oracle import ReferenceValue, derived_ref
from golden_series.series import SeriesKind, evaluate

from published import TABLE2

A = SeriesKind.ALPHA


@functools.lru_cache(maxsize=None)
def cached_row(n, K):
    return accuracy_row(n, K)


def test_correct_digits_hand_values():
    assert correct_digits(Dyadic(1, 10)) == 3
    assert correct_digits(Dyadic(3, 3)) == 0
    assert correct_digits(Dyadic(-1, 4)) == 1
    # exact power of ten: -log10(10) = -1
    assert correct_digits(Dyadic(10)) == -1


def test_digits_of_accuracy_alpha_n2_k100():
    est = evaluate(2, A, 100)
    assert digits_of_accuracy(est, derived_ref(A, 2, 200)) == 10


def test_digits_of_accuracy_exact_difference():
    ref = ReferenceValue(A, 2, Dyadic(0), Dyadic(1, 40))
    assert digits_of_accuracy(Dyadic(1, 10), ref) == 3


def test_digits_of_accuracy_straddle():
    # |diff| is just above 10**-3 and the reference band crosses 10**-3
    ref = ReferenceValue(A, 2, Dyadic(0), Dyadic(1, 21))
    with pytest.raises(OraclePrecisionInsufficient):
        digits_of_accuracy(Dyadic(1049, 20), ref)


def test_digits_of_accuracy_coarse_reference():
    ref = ReferenceValue(A, 2, Dyadic(0), Dyadic(1, 11))
    with pytest.raises(OraclePrecisionInsufficient):
        digits_of_accuracy(Dyadic(1, 10), ref)


def test_digit_count_stable_across_reference_band():
    est = evaluate(10, SeriesKind.INVERSE_GAP, 10)
    ref = derived_ref(SeriesKind.INVERSE_GAP, 10, 200)
    d = digits_of_accuracy(est, ref)
    for shifted in (ref.lo, ref.hi):
        assert digits_of_accuracy(est, ReferenceValue(ref.target, 10, shifted, ref.error_bound)) == d


def test_rate_bits_n2():
    # 3 - 3 log2 3 + 2
    assert rate_bits(2) == pytest.approx(5 - 3 * math.log2(3), abs=1e-12)
    assert abs(rate_bits(2) - 0.24511) < 1e-5


@pytest.mark.parametrize("n, K, expected", [
    (2, 1000, 73),
    (10, 100, 185),
    (100, 2, 55),
])
def test_predicted_accuracy_examples(n, K, expected):
    assert predicted_accuracy(n, K) == expected


def test_predicted_accuracy_float_agreement():
    for n in (2, 3, 10, 57, 100):
        for K in (1, 7, 100, 1234):
            r = (n + 1) - (n + 1) * math.log2(n + 1) + n * math.log2(n)
            approx = K * r * math.log10(2)
            if abs(approx - round(approx)) > 1e-6:
                assert predicted_accuracy(n, K) == math.floor(approx)


def test_predicted_accuracy_domain():
    with pytest.raises(DomainError):
        predicted_accuracy(1, 10)
    with pytest.raises(DomainError):
        predicted_accuracy(2, 0)


def test_term_bits_examples():
    assert term_bits(2, SeriesKind.BETA, 2) == (2, 6)
    assert term_bits(2, A, 3) == (3, 9)


RATE_N2 = 3 * math.log2(3) - 2


@pytest.mark.parametrize("kind", list(SeriesKind))
def test_term_bits_growth_per_term_n2(kind):
    b100, _ = term_bits(2, kind, 100)
    b200, shift = term_bits(2, kind, 200)
    assert shift == 600
    assert abs((b200 - b100) / 100 - RATE_N2) < 0.05


@pytest.mark.parametrize("kind", list(SeriesKind))
def test_term_bits_ratio_includes_power_correction(kind):
    # numerators grow like (27/4)**k * k**-1.5, so bits/k sits about
    # 1.5*log2(k)/k below the limiting rate
    for k in (200, 400, 1000):
        bits, _ = term_bits(2, kind, k)
        assert abs(bits / k + 1.5 * math.log2(k) / k - RATE_N2) < 0.02
    assert abs(term_bits(2, kind, 1000)[0] / 1000 - RATE_N2) < 0.05


def test_rate_sanity_per_decade():
    for n, ks in ((2, (100, 1000)), (10, (10, 100))):
        for K in ks:
            gained = actual_accuracy(n, A, 10 * K) - actual_accuracy(n, A, K)
            predicted = predicted_accuracy(n, 10 * K) - predicted_accuracy(n, K)
            assert abs(gained - predicted) <= 2


def test_accuracy_row_small():
    assert accuracy_row(2, 100) == AccuracyRow(2, 100, 7, 10, 10, 9)
    assert accuracy_row(10, 10) == AccuracyRow(10, 10, 18, 23, 23, 21)


@pytest.mark.parametrize("n, K", PAPER_ROWS)
def test_predicted_column(n, K):
    assert predicted_accuracy(n, K) == TABLE2[(n, K)][0]


@pytest.mark.parametrize("n, K", PAPER_ROWS)
def test_gap_column_and_alpha_beta_pair(n, K):
    """Gap column matches; the alpha and 1/alpha cells match as a pair.

    In five rows the published alpha and 1/alpha cells appear in the
    opposite order from what the series give.  The 1/alpha series error is
    about (n+1)**2 / (4 n**2) times the alpha series error, so its count is
    never the smaller one.
    """
    row = cached_row(n, K)
    _, pub_a, pub_b, pub_g = TABLE2[(n, K)]
    assert row.actual_gap == pub_g
    assert sorted((row.actual_alpha, row.actual_beta)) == sorted((pub_a, pub_b))
    assert row.actual_beta >= row.actual_alpha


@pytest.mark.parametrize("n, K", PAPER_ROWS)
def test_predicted_not_above_actual(n, K):
    row = cached_row(n, K)
    assert row.predicted <= min(row.actual_alpha, row.actual_beta, row.actual_gap)
