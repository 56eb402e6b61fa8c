"""Certified reference values for alpha_n, independent of the series.

alpha_n is the root in (3/2, 2) of ``q(x) = x**(n+1) - 2*x**n + 1``
(the characteristic polynomial times ``x - 1``).  Every enclosure handed
out here is certified by exact sign evaluation of ``q`` at its endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dyadic import Dyadic
from .errors import DomainError, PrecisionExhausted
from .series import SeriesKind

# bits of working precision beyond the requested output
GUARD_BITS = 32
# bisection is cheap below this many bits; above it Newton takes over
NEWTON_THRESHOLD = 256


def _check_order(n):
    if n < 2:
        raise DomainError(f"order n must be >= 2, got {n}")


def poly_sign(n: int, x: Dyadic) -> int:
    """Exact sign of ``x**(n+1) - 2*x**n + 1``.

    With ``x = m / 2**e`` this is the sign of the integer
    ``m**n * (m - 2**(e+1)) + 2**(e*(n+1))``.
    """
    m, e = x.mantissa, x.exponent
    v = m**n * (m - (2 << e)) + (1 << (e * (n + 1)))
    return (v > 0) - (v < 0)


def poly_value(n: int, x: Dyadic) -> Dyadic:
    """Exact ``q_n(x)`` by Horner's rule on the sparse coefficients."""
    acc = Dyadic(1)
    acc = acc * x - 2
    for _ in range(n):
        acc = acc * x
    return acc + 1


@dataclass(frozen=True)
class RootBracket:
    n: int
    lo: Dyadic
    hi: Dyadic
    sign_lo: int
    sign_hi: int

    @property
    def width(self) -> Dyadic:
        return self.hi - self.lo

    def contains(self, x: Dyadic) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class ReferenceValue:
    """``value`` is within ``error_bound`` of the true quantity."""

    target: SeriesKind
    n: int
    value: Dyadic
    error_bound: Dyadic

    @property
    def lo(self) -> Dyadic:
        return self.value - self.error_bound

    @property
    def hi(self) -> Dyadic:
        return self.value + self.error_bound

    def bits(self) -> int:
        """Number of bits ``b`` with ``error_bound <= 2**-b``."""
        eb = self.error_bound
        return eb.exponent - eb.mantissa.bit_length() + (eb.mantissa & (eb.mantissa - 1) == 0)


def forsyth_bounds(n: int) -> tuple[Fraction, Fraction]:
    """``2 - 1/(2**n - n/2 - n**2/2**n)`` and ``2 - 1/(2**n - n/2)``."""
    p = Fraction(2) ** n
    return 2 - 1 / (p - Fraction(n, 2) - n * n / p), 2 - 1 / (p - Fraction(n, 2))


def _floor_dyadic(q: Fraction, e: int) -> Dyadic:
    return Dyadic((q.numerator << e) // q.denominator, e)


def _ceil_dyadic(q: Fraction, e: int) -> Dyadic:
    return Dyadic(-((-q.numerator << e) // q.denominator), e)


def forsyth_bracket(n: int) -> RootBracket:
    """Dyadic outer rounding of the Forsyth enclosure, sign-certified."""
    _check_order(n)
    lo_q, hi_q = forsyth_bounds(n)
    e = n + 8
    step = Dyadic(1, e)
    lo, hi = _floor_dyadic(lo_q, e), _ceil_dyadic(hi_q, e)
    floor = Dyadic(3, 1)
    for _ in range(64):
        s_lo, s_hi = poly_sign(n, lo), poly_sign(n, hi)
        if s_lo < 0 < s_hi:
            return RootBracket(n, lo, hi, s_lo, s_hi)
        if s_lo >= 0:
            lo = max(lo - step, floor)
        if s_hi <= 0:
            hi = hi + step
    raise ArithmeticError(f"could not certify the bracket for n={n}")


def _bisect(n: int, lo: Dyadic, hi: Dyadic, bits: int) -> tuple[Dyadic, Dyadic]:
    target = Dyadic(1, bits)
    while hi - lo > target:
        mid = (lo + hi).shift(-1)
        s = poly_sign(n, mid)
        if s == 0:
            return mid, mid
        if s < 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _newton(n: int, start: Dyadic, start_bits: int, bits: int) -> tuple[int, int]:
    """Fixed-point Newton iteration with doubling precision.

    Returns ``(X, p)`` with ``X / 2**p`` close to alpha_n.
    """
    p = max(start_bits, 8)
    x = (start.mantissa << p) >> start.exponent if start.exponent <= p \
        else start.mantissa >> (start.exponent - p)
    final = bits + GUARD_BITS
    while True:
        xn1 = x ** (n - 1)
        xn = xn1 * x
        f = xn * x - (xn << (p + 1)) + (1 << (p * (n + 1)))
        d = (n + 1) * xn - ((2 * n * xn1) << p)
        x -= f // d
        if p >= final:
            # one more step at full precision settles the last bits
            xn1 = x ** (n - 1)
            xn = xn1 * x
            f = xn * x - (xn << (p + 1)) + (1 << (p * (n + 1)))
            d = (n + 1) * xn - ((2 * n * xn1) << p)
            return x - f // d, p
        new_p = min(2 * p, final)
        x <<= new_p - p
        p = new_p


def alpha_ref(n: int, bits: int, accelerate: bool | None = None) -> ReferenceValue:
    """Certified enclosure of alpha_n of width at most ``2**-bits``.

    Bisection on exact signs is the baseline.  With ``accelerate`` (the
    default above ``NEWTON_THRESHOLD`` bits) Newton's method produces a
    candidate whose enclosure is then re-certified by exact signs, falling
    back to bisection if that check fails.
    """
    _check_order(n)
    if bits < 4:
        raise DomainError("bits must be >= 4")
    br = forsyth_bracket(n)
    if accelerate is None:
        accelerate = bits > NEWTON_THRESHOLD
    lo = hi = None
    if accelerate:
        # grid coarse enough that the bracket midpoint is a good start
        x, p = _newton(n, (br.lo + br.hi).shift(-1), n + 4, bits)
        half = 1 << (p - bits - 1)
        cand_lo, cand_hi = Dyadic(x - half, p), Dyadic(x + half, p)
        if (br.lo <= cand_lo and cand_hi <= br.hi
                and poly_sign(n, cand_lo) < 0 < poly_sign(n, cand_hi)):
            lo, hi = cand_lo, cand_hi
    if lo is None:
        lo, hi = _bisect(n, br.lo, br.hi, bits)
    value = (lo + hi).shift(-1)
    err = (hi - lo).shift(-1)
    if not err:
        # exact root on the grid cannot happen for irrational alpha_n
        err = Dyadic(1, bits + 1)
    return ReferenceValue(SeriesKind.ALPHA, n, value, err)


def _reciprocal_interval(a: Dyadic, b: Dyadic, w: int) -> tuple[Dyadic, Dyadic]:
    """Outward-rounded enclosure of ``[1/b, 1/a]`` on the grid ``2**-w``."""
    lo = Dyadic((1 << (w + b.exponent)) // b.mantissa, w)
    hi = Dyadic(-((-1 << (w + a.exponent)) // a.mantissa), w)
    return lo, hi


def reciprocal_ref(alpha: ReferenceValue, target: SeriesKind, bits: int) -> ReferenceValue:
    """Turn an alpha enclosure into one for ``1/alpha`` or ``1/(2-alpha)``.

    Raises :class:`PrecisionExhausted` when the result would be wider than
    ``2**-bits``.
    """
    target = SeriesKind.parse(target)
    a, b = alpha.lo, alpha.hi
    w = bits + GUARD_BITS
    if target is SeriesKind.ALPHA:
        lo, hi = a, b
    elif target is SeriesKind.BETA:
        lo, hi = _reciprocal_interval(a, b, w)
    else:
        # 1/(2 - x) is increasing in x
        lo, hi = _reciprocal_interval(2 - b, 2 - a, w)
    value = (lo + hi).shift(-1)
    err = (hi - lo).shift(-1)
    if err > Dyadic(1, bits):
        raise PrecisionExhausted(
            f"alpha enclosure of {alpha.bits()} bits gives only "
            f"{ReferenceValue(target, alpha.n, value, err).bits()} bits")
    return ReferenceValue(target, alpha.n, value, err)


def derived_ref(target: SeriesKind | str, n: int, bits: int,
                accelerate: bool | None = None) -> ReferenceValue:
    """Certified reference for ``alpha``, ``1/alpha`` or ``1/(2-alpha)``."""
    target = SeriesKind.parse(target)
    if target is SeriesKind.ALPHA:
        return alpha_ref(n, bits, accelerate)
    _check_order(n)
    # 1/(2-alpha) ~ 2**n amplifies input error by about 2**(2n)
    extra = 2 * n + 4 if target is SeriesKind.INVERSE_GAP else 4
    while True:
        try:
            return reciprocal_ref(alpha_ref(n, bits + extra, accelerate), target, bits)
        except PrecisionExhausted:
            extra += 32


def kbonacci(n: int, count: int) -> list[int]:
    """First ``count`` terms of the order-n sequence starting 0, ..., 0, 1."""
    _check_order(n)
    g = [0] * (n - 1) + [1]
    window = sum(g)
    while len(g) < count:
        g.append(window)
        window += window - g[-n - 1]
    return g[:count]


def kbonacci_ratio(n: int, i: int, digits: int) -> str:
    """``G[i+1] / G[i]`` truncated to ``digits`` decimal places."""
    _check_order(n)
    if i < n:
        raise DomainError(f"index must be >= n, got i={i}")
    if digits < 0:
        raise DomainError("digits must be nonnegative")
    g = kbonacci(n, i + 2)
    num, den = g[i + 1], g[i]
    whole, rem = divmod(num, den)
    frac = (rem * 10**digits) // den
    return f"{whole}.{frac:0{digits}d}" if digits else str(whole)
