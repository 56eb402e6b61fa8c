"""Invariant suites shared by the ``verify`` command and the test-suite.

Each suite returns a :class:`SuiteResult`; ``failure`` holds the first
counterexample found, if any.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dyadic import Dyadic
from .errors import InexactDivision
from .oracle import alpha_ref, derived_ref, forsyth_bracket, poly_sign
from .series import SeriesKind, TermStream, direct_binomial, evaluate, tail_bound

KINDS = (SeriesKind.BETA, SeriesKind.ALPHA, SeriesKind.INVERSE_GAP)


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    def fail(self, msg: str) -> SuiteResult:
        if self.failure is None:
            self.failure = msg
        return self


def residual_slack(n: int) -> int:
    """Exponent slack ``c`` in the residual bound ``2**(-bits + c)``.

    The reference sits within ``2**-(bits+1)`` of the root, and each
    identity has derivative at most ``2**n`` in absolute value on
    ``[3/2, 2]`` (for the reduced polynomial, ``alpha**(n-1) * ((n+1)*alpha - 2n)``
    is below ``2**n``).  One more bit absorbs the second-order term.
    """
    return n + 1


def identity_residuals(n: int, bits: int) -> dict[str, Fraction]:
    """Absolute residuals of the four polynomial identities at the oracle value."""
    a = alpha_ref(n, bits).value
    b = derived_ref(SeriesKind.BETA, n, bits).value
    af = a.to_fraction()
    return {
        "reduced": abs((a ** (n + 1) - 2 * a**n + 1).to_fraction()),
        "beta": abs((b - Dyadic(1, 1) - (b ** (n + 1)).shift(-1)).to_fraction()),
        "gap": abs(((2 - a) * a**n - 1).to_fraction()),
        "reciprocal": abs(2 / af - 1 - af ** -(n + 1)),
    }


def check_identities(n_values, bits: int) -> SuiteResult:
    res = SuiteResult("identity residuals")
    for n in n_values:
        limit = Fraction(1, 2 ** (bits - residual_slack(n)))
        for name, r in identity_residuals(n, bits).items():
            res.checked += 1
            if r >= limit:
                return res.fail(f"n={n} {name}: residual {float(r):.3g} >= 2^-{bits - residual_slack(n)}")
    return res


def check_integrality(n_values, k_max: int) -> SuiteResult:
    """Exact 1/k division and incremental binomial equal to the direct one."""
    res = SuiteResult("integrality")
    for n in n_values:
        for kind in KINDS:
            stream = TermStream(n, kind)
            try:
                for k in range(1, k_max + 1):
                    res.checked += 1
                    if stream.binom != direct_binomial(n, kind, k):
                        return res.fail(f"n={n} {kind.value} k={k}: incremental binomial differs")
                    if stream.coeff * k != stream.binom:
                        return res.fail(f"n={n} {kind.value} k={k}: coefficient mismatch")
                    if k < k_max:
                        stream.advance()
            except InexactDivision as exc:
                return res.fail(f"n={n} {kind.value}: {exc}")
    return res


def check_brackets(n_values) -> SuiteResult:
    res = SuiteResult("bracket validity")
    for n in n_values:
        res.checked += 1
        br = forsyth_bracket(n)
        if not (Dyadic(3, 1) <= br.lo < br.hi < 2):
            return res.fail(f"n={n}: bracket [{br.lo}, {br.hi}] leaves [3/2, 2)")
        if not (poly_sign(n, br.lo) < 0 < poly_sign(n, br.hi)):
            return res.fail(f"n={n}: no sign change across the bracket")
    return res


def check_agreement(n_values, k_values, bits: int) -> SuiteResult:
    """Truncated series within tail bound plus oracle error of the reference."""
    res = SuiteResult("oracle/series agreement")
    for n in n_values:
        for kind in KINDS:
            ref = derived_ref(kind, n, bits)
            for K in k_values:
                res.checked += 1
                err = abs(evaluate(n, kind, K) - ref.value)
                if err > tail_bound(n, kind, K) + ref.error_bound:
                    return res.fail(f"n={n} {kind.value} K={K}: error {float(err):.3g} exceeds bound")
    return res


def check_monotonicity(n_values, bits: int = 64) -> SuiteResult:
    """alpha_n increases with n and ``2 - alpha_n < 2**(1-n)``."""
    res = SuiteResult("monotonicity")
    prev = None
    for n in n_values:
        ref = alpha_ref(n, bits)
        res.checked += 1
        if not (2 - ref.lo < Dyadic(1, n - 1)):
            return res.fail(f"n={n}: 2 - alpha_n not below 2^{1 - n}")
        if prev is not None and not (ref.lo > prev.hi):
            return res.fail(f"n={n}: alpha_n not above alpha_{n - 1}")
        prev = ref
    return res


def run_all(n_max: int, k_max: int, bits: int) -> list[SuiteResult]:
    ns = range(2, n_max + 1)
    ks = sorted({1, max(1, k_max // 2), k_max})
    return [
        check_identities(ns, bits),
        check_integrality(ns, k_max),
        check_brackets(ns),
        check_agreement(ns, ks, bits),
        check_monotonicity(ns, max(bits, 64)),
    ]
