"""Exact arithmetic on dyadic rationals ``m / 2**e``.

Every number the package produces lives here: truncated series sums,
root-finding brackets and error bounds.  Values are immutable and always
kept in canonical form (odd mantissa, or exponent 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InexactDivision

# exponents beyond this indicate a runaway computation, not a real request
MAX_EXPONENT = 2**62


def _normalize(mantissa: int, exponent: int) -> tuple[int, int]:
    if mantissa == 0:
        return 0, 0
    if exponent > 0:
        tz = (mantissa & -mantissa).bit_length() - 1
        if tz:
            shift = min(tz, exponent)
            mantissa >>= shift
            exponent -= shift
    elif exponent < 0:
        mantissa <<= -exponent
        exponent = 0
    if exponent > MAX_EXPONENT:
        raise OverflowError(f"dyadic exponent {exponent} out of range")
    return mantissa, exponent


@dataclass(frozen=True, init=False, eq=False)
class Dyadic:
    """The exact rational ``mantissa / 2**exponent``."""

    mantissa: int
    exponent: int

    def __init__(self, mantissa: int = 0, exponent: int = 0):
        m, e = _normalize(int(mantissa), int(exponent))
        object.__setattr__(self, "mantissa", m)
        object.__setattr__(self, "exponent", e)

    @classmethod
    def from_fraction(cls, q: Fraction) -> Dyadic:
        den = q.denominator
        if den & (den - 1):
            raise ValueError(f"{q} is not dyadic")
        return cls(q.numerator, den.bit_length() - 1)

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 1 << self.exponent)

    def _aligned(self, other: Dyadic) -> tuple[int, int, int]:
        e = max(self.exponent, other.exponent)
        return (self.mantissa << (e - self.exponent),
                other.mantissa << (e - other.exponent), e)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, e = self._aligned(other)
        return Dyadic(a + b, e)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, e = self._aligned(other)
        return Dyadic(a - b, e)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Dyadic(self.mantissa * other.mantissa,
                      self.exponent + other.exponent)

    __rmul__ = __mul__

    def __neg__(self) -> Dyadic:
        return Dyadic(-self.mantissa, self.exponent)

    def __abs__(self) -> Dyadic:
        return self if self.mantissa >= 0 else -self

    def __pow__(self, k: int) -> Dyadic:
        if k < 0:
            raise ValueError("negative powers leave the dyadic ring")
        return Dyadic(self.mantissa**k, self.exponent * k)

    def shift(self, bits: int) -> Dyadic:
        """Multiply by ``2**bits`` (``bits`` may be negative)."""
        return Dyadic(self.mantissa, self.exponent - bits)

    def sign(self) -> int:
        return (self.mantissa > 0) - (self.mantissa < 0)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.mantissa == other.mantissa and self.exponent == other.exponent

    def __hash__(self):
        return hash((self.mantissa, self.exponent))

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __bool__(self):
        return self.mantissa != 0

    def __float__(self):
        return float(self.to_fraction())

    def __repr__(self):
        if self.exponent == 0:
            return f"Dyadic({self.mantissa})"
        return f"Dyadic({self.mantissa}/2**{self.exponent})"


def _coerce(x):
    if isinstance(x, Dyadic):
        return x
    if isinstance(x, int):
        return Dyadic(x)
    if isinstance(x, Fraction):
        return Dyadic.from_fraction(x)
    return NotImplemented


ZERO = Dyadic(0)
ONE = Dyadic(1)
HALF = Dyadic(1, 1)


def add(a: Dyadic, b: Dyadic) -> Dyadic:
    return a + b


def mul(a: Dyadic, b: Dyadic) -> Dyadic:
    return a * b


def div_exact(a: Dyadic, d: int) -> Dyadic:
    """Return ``a / d``, requiring the odd part of ``d`` to divide the mantissa.

    Factors of two in ``d`` are moved into the exponent.  Anything left over
    that does not divide evenly raises :class:`InexactDivision`.
    """
    if d == 0:
        raise ZeroDivisionError("division by zero")
    m, e = a.mantissa, a.exponent
    if d < 0:
        m, d = -m, -d
    tz = (d & -d).bit_length() - 1
    d >>= tz
    q, r = divmod(m, d)
    if r:
        raise InexactDivision(f"{d} does not divide {m}")
    return Dyadic(q, e + tz)


def compare(a: Dyadic, b: Dyadic) -> int:
    """Three-way comparison: -1, 0 or 1."""
    b = _coerce(b)
    if b is NotImplemented:
        raise TypeError("can only compare with Dyadic, int or dyadic Fraction")
    x, y, _ = a._aligned(b)
    return (x > y) - (x < y)


def _format_fixed(scaled: int, places: int) -> str:
    digits = str(scaled)
    if not places:
        return digits
    digits = digits.rjust(places + 1, "0")
    return f"{digits[:-places]}.{digits[-places:]}"


def to_decimal(x: Dyadic, places: int) -> tuple[str, bool]:
    """Decimal string of ``x`` truncated toward zero to ``places`` digits.

    Returns ``(text, inexact)`` where ``inexact`` tells whether a nonzero
    tail was discarded.
    """
    if places < 0:
        raise ValueError("places must be nonnegative")
    scaled, rem = divmod(abs(x.mantissa) * 10**places, 1 << x.exponent)
    text = _format_fixed(scaled, places)
    if x.mantissa < 0:
        text = "-" + text
    return text, rem != 0


def to_decimal_rounded(x: Dyadic, places: int) -> str:
    """Decimal string of ``x`` rounded to nearest at ``places`` digits.

    Ties round away from zero.
    """
    if places < 0:
        raise ValueError("places must be nonnegative")
    den = 1 << x.exponent
    scaled, rem = divmod(abs(x.mantissa) * 10**places, den)
    if 2 * rem >= den:
        scaled += 1
    text = _format_fixed(scaled, places)
    return "-" + text if x.mantissa < 0 else text


def floor_log10_abs(x: Dyadic) -> int:
    """Exact ``floor(log10(|x|))``, decided by integer comparisons only."""
    if not x:
        raise DomainError("log10 of zero")
    m, e = abs(x.mantissa), x.exponent
    # |x| = m / 2**e; 10**k <= |x| iff 10**k * 2**e <= m (k >= 0)
    # or 2**e <= m * 10**-k (k < 0)
    est = int((m.bit_length() - e) * 0.30102999566398120) - 1

    def at_least(k: int) -> bool:
        if k >= 0:
            return (10**k << e) <= m
        return (1 << e) <= m * 10**-k

    k = est
    while not at_least(k):
        k -= 1
    while at_least(k + 1):
        k += 1
    return k


def ceil_log10(q: Fraction) -> int:
    """Smallest integer ``k`` with ``q <= 10**k`` for positive rational ``q``."""
    if q <= 0:
        raise DomainError("ceil_log10 needs a positive argument")
    k = len(str(q.numerator)) - len(str(q.denominator))
    while Fraction(10) ** k < q:
        k += 1
    while Fraction(10) ** (k - 1) >= q:
        k -= 1
    return k


def parse_decimal(text: str) -> Fraction:
    """Exact rational value of a plain decimal string such as ``-1.25``."""
    return Fraction(text.strip())
