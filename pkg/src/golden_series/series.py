"""Exact terms and truncated sums of the three series for alpha_n.

For ``m = n + 1`` the k-th summand of every series is ``c_k / 2**(k*m)``
where ``c_k = binom / k`` is an integer:

=============  =========================  ================================
kind           binom                      value of the full expression
=============  =========================  ================================
``BETA``       ``C(k*m, k-1)``            ``1/alpha = 1/2 + S/2``
``ALPHA``      ``C(k*m - 2, k-1)``        ``alpha = 2 - 2*S``
``INVERSE_GAP````C(k*m, k+1)``            ``1/(2-alpha) = 2**n - n/2 - S/2``
=============  =========================  ================================

Sums are accumulated over the common denominator ``2**(K*m)``, so the
truncated values are exact dyadic rationals.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .dyadic import Dyadic
from .errors import DomainError, InexactDivision, RatioNotContracting


class SeriesKind(enum.Enum):
    BETA = "beta"
    ALPHA = "alpha"
    INVERSE_GAP = "gap"

    @classmethod
    def parse(cls, name: str | SeriesKind) -> SeriesKind:
        if isinstance(name, cls):
            return name
        key = name.lower()
        for kind in cls:
            if key in (kind.value, kind.name.lower()):
                return kind
        raise ValueError(f"unknown series kind {name!r}")


def _check_order(n: int) -> None:
    if n < 2:
        raise DomainError(f"order n must be >= 2, got {n}")


def binomial_args(n: int, kind: SeriesKind, k: int) -> tuple[int, int]:
    """``(N, r)`` such that the k-th binomial of the series is ``C(N, r)``."""
    m = n + 1
    if kind is SeriesKind.BETA:
        return k * m, k - 1
    if kind is SeriesKind.ALPHA:
        return k * m - 2, k - 1
    return k * m, k + 1


def direct_binomial(n: int, kind: SeriesKind, k: int) -> int:
    return math.comb(*binomial_args(n, kind, k))


def direct_coefficient(n: int, kind: SeriesKind, k: int) -> int:
    """Integer numerator of the k-th term, straight from the closed form."""
    b = direct_binomial(n, kind, k)
    q, r = divmod(b, k)
    if r:
        raise InexactDivision(f"{k} does not divide C{binomial_args(n, kind, k)}")
    return q


def term(n: int, kind: SeriesKind, k: int) -> Dyadic:
    return Dyadic(direct_coefficient(n, kind, k), k * (n + 1))


@dataclass
class TermStream:
    """Iterator over the exact terms of one series.

    The binomial is carried from one index to the next: going from
    ``C(N, r)`` to ``C(N + m, r + 1)`` multiplies by ``(N+1)...(N+m)`` and
    divides by ``(r+1) * (N-r+1)...(N-r+m-1)``.  Both divisions are checked
    to be exact.
    """

    n: int
    kind: SeriesKind
    k: int = field(init=False, default=1)
    binom: int = field(init=False)
    coeff: int = field(init=False)

    def __post_init__(self):
        _check_order(self.n)
        self.kind = SeriesKind.parse(self.kind)
        self.binom = direct_binomial(self.n, self.kind, 1)
        self.coeff = self.binom

    def __iter__(self):
        return self

    def __next__(self) -> Dyadic:
        out = Dyadic(self.coeff, self.k * (self.n + 1))
        self.advance()
        return out

    def advance(self) -> None:
        m = self.n + 1
        big_n, r = binomial_args(self.n, self.kind, self.k)
        num = math.prod(range(big_n + 1, big_n + m + 1))
        den = (r + 1) * math.prod(range(big_n - r + 1, big_n - r + m))
        binom, rem = divmod(self.binom * num, den)
        if rem:
            raise InexactDivision(f"binomial update broke at k={self.k}")
        self.k += 1
        coeff, rem = divmod(binom, self.k)
        if rem:
            raise InexactDivision(
                f"{self.k} does not divide {self.kind.name} binomial (n={self.n})")
        self.binom, self.coeff = binom, coeff


def stream_new(n: int, kind: SeriesKind) -> TermStream:
    return TermStream(n, kind)


def stream_next(s: TermStream) -> tuple[Dyadic, TermStream]:
    return next(s), s


def raw_sum(n: int, kind: SeriesKind, K: int) -> Dyadic:
    """Sum of the first ``K`` terms, without the affine wrapper."""
    _check_order(n)
    if K < 0:
        raise DomainError("term count must be nonnegative")
    m = n + 1
    acc = 0
    if K:
        stream = TermStream(n, kind)
        for _ in range(K - 1):
            acc = (acc << m) + stream.coeff
            stream.advance()
        acc = (acc << m) + stream.coeff
    return Dyadic(acc, K * m)


def wrap(n: int, kind: SeriesKind, s: Dyadic) -> Dyadic:
    """Apply the affine map taking a raw sum to the target quantity."""
    if kind is SeriesKind.BETA:
        return Dyadic(1, 1) + s.shift(-1)
    if kind is SeriesKind.ALPHA:
        return Dyadic(2) - s.shift(1)
    return Dyadic(1 << n) - Dyadic(n, 1) - s.shift(-1)


def wrapper_scale(kind: SeriesKind) -> Dyadic:
    return Dyadic(2) if kind is SeriesKind.ALPHA else Dyadic(1, 1)


def evaluate(n: int, kind: SeriesKind | str, K: int) -> Dyadic:
    """Truncated series value using the first ``K`` terms of the sum."""
    kind = SeriesKind.parse(kind)
    return wrap(n, kind, raw_sum(n, kind, K))


def limit_ratio(n: int) -> Fraction:
    """Limit of consecutive term ratios, ``(n+1)**(n+1) / (n**n * 2**(n+1))``."""
    return Fraction((n + 1) ** (n + 1), n**n * 2 ** (n + 1))


def tail_bound(n: int, kind: SeriesKind | str, K: int) -> Dyadic:
    """Upper bound on ``|evaluate(n, kind, K) - exact value|``.

    The tail is majorised by a geometric series starting at term ``K+1``
    with ratio ``max(t[K+2]/t[K+1], limit_ratio(n))``.  Term ratios increase
    toward their limit from below (checked in the test-suite), so this
    ratio dominates every later one.
    """
    kind = SeriesKind.parse(kind)
    _check_order(n)
    if K < 1:
        raise DomainError("tail_bound needs K >= 1")
    t1 = term(n, kind, K + 1).to_fraction()
    t2 = term(n, kind, K + 2).to_fraction()
    rho = max(t2 / t1, limit_ratio(n))
    if rho >= 1:
        raise RatioNotContracting(f"term ratio {float(rho):.4g} >= 1 at K={K}")
    bound = wrapper_scale(kind).to_fraction() * t1 / (1 - rho)
    # round up onto a dyadic grid 64 bits finer than the leading tail term
    e = (K + 1) * (n + 1) + 64
    return Dyadic(-((-bound.numerator << e) // bound.denominator), e)
