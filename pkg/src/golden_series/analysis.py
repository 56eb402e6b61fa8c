"""Convergence-rate predictions and measured accuracy of truncated series."""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import asdict, dataclass

import mpmath

from .dyadic import Dyadic, floor_log10_abs
from .errors import DomainError, OraclePrecisionInsufficient
from .oracle import ReferenceValue, derived_ref
from .series import SeriesKind, evaluate, direct_coefficient

# the nine (n, K) rows of the published accuracy table
PAPER_ROWS = [
    (2, 100), (2, 1000), (2, 10000),
    (10, 10), (10, 100), (10, 1000),
    (100, 2), (100, 10), (100, 100),
]


@dataclass(frozen=True)
class AccuracyRow:
    n: int
    K: int
    predicted: int
    actual_alpha: int
    actual_beta: int
    actual_gap: int

    def as_dict(self):
        return asdict(self)


def _is_power_of_ten(x: Dyadic) -> bool:
    if x.exponent or x.mantissa <= 0:
        return False
    s = str(x.mantissa)
    return s[0] == "1" and s.count("0") == len(s) - 1


def correct_digits(diff: Dyadic) -> int:
    """``floor(-log10(|diff|))`` for a nonzero exact difference."""
    d = abs(diff)
    # floor(-y) == -ceil(y)
    ceil = floor_log10_abs(d) + (0 if _is_power_of_ten(d) else 1)
    return -ceil


def digits_of_accuracy(estimate: Dyadic, reference: ReferenceValue) -> int:
    """Correct decimal places of ``estimate`` against a certified reference.

    The count is certified: it is the same for every point in the
    reference's error interval.  Raises
    :class:`OraclePrecisionInsufficient` otherwise.
    """
    diff = abs(estimate - reference.value)
    eb = reference.error_bound
    if not diff or eb.shift(2) >= diff:
        raise OraclePrecisionInsufficient(
            f"reference error {float(eb):.3g} too coarse for difference {float(diff):.3g}")
    low, mid, high = correct_digits(diff - eb), correct_digits(diff), correct_digits(diff + eb)
    if not low == mid == high:
        raise OraclePrecisionInsufficient("digit count straddles a power of ten")
    return mid


def _rate_bits(n):
    """Per-term loss in bits, ``(n+1) - (n+1)*log2(n+1) + n*log2(n)``."""
    n1 = mpmath.iv.mpf(n + 1)
    nn = mpmath.iv.mpf(n)
    return n1 - n1 * mpmath.iv.log(n1) / mpmath.iv.log(2) + nn * mpmath.iv.log(nn) / mpmath.iv.log(2)


@contextmanager
def _iv_prec(prec):
    saved = mpmath.iv.prec
    mpmath.iv.prec = prec
    try:
        yield
    finally:
        mpmath.iv.prec = saved


def rate_bits(n: int) -> float:
    """Bits of accuracy gained per term (about 0.24511 for n = 2)."""
    with _iv_prec(64):
        return float(_rate_bits(n).mid)


def predicted_accuracy(n: int, K: int) -> int:
    """``floor(K * r(n) * log10(2))``, with the floor certified by intervals."""
    if n < 2 or K < 1:
        raise DomainError("need n >= 2 and K >= 1")
    prec = 64
    while prec <= 1 << 14:
        with _iv_prec(prec):
            v = K * _rate_bits(n) * mpmath.iv.log(2) / mpmath.iv.log(10)
            lo, hi = int(mpmath.floor(v.a)), int(mpmath.floor(v.b))
        if lo == hi:
            return lo
        prec *= 2
    raise ArithmeticError(f"could not certify predicted accuracy for n={n}, K={K}")


def term_bits(n: int, kind: SeriesKind | str, k: int) -> tuple[int, int]:
    """Bit length of the k-th integer numerator and its power-of-two shift."""
    kind = SeriesKind.parse(kind)
    return direct_coefficient(n, kind, k).bit_length(), k * (n + 1)


def actual_accuracy(n: int, kind: SeriesKind | str, K: int, start_digits: int | None = None,
                    estimate: Dyadic | None = None) -> int:
    """Measured digits of ``evaluate(n, kind, K)``, refining the oracle as needed."""
    kind = SeriesKind.parse(kind)
    if estimate is None:
        estimate = evaluate(n, kind, K)
    if start_digits is None:
        start_digits = predicted_accuracy(n, K)
    bits = (start_digits + 15) * 4
    while True:
        try:
            return digits_of_accuracy(estimate, derived_ref(kind, n, bits))
        except OraclePrecisionInsufficient:
            bits *= 2


def accuracy_row(n: int, K: int) -> AccuracyRow:
    predicted = predicted_accuracy(n, K)
    actual = [actual_accuracy(n, kind, K, predicted)
              for kind in (SeriesKind.ALPHA, SeriesKind.BETA, SeriesKind.INVERSE_GAP)]
    return AccuracyRow(n, K, predicted, *actual)


def accuracy_table(rows=PAPER_ROWS) -> list[AccuracyRow]:
    return [accuracy_row(n, K) for n, K in rows]
