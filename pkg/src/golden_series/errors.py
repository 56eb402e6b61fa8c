class DomainError(ValueError):
    """An argument lies outside the domain of the operation (e.g. n < 2)."""


class InexactDivision(ArithmeticError):
    """An exact division left a remainder.

    Inside the series code this means an integrality invariant broke, so it
    is an internal consistency failure rather than bad user input.
    """


class RatioNotContracting(ArithmeticError):
    """Consecutive-term ratio is not below one; no geometric tail bound."""


class PrecisionExhausted(ArithmeticError):
    """The input enclosure is too wide for the requested output precision."""


class OraclePrecisionInsufficient(ArithmeticError):
    """Reference value is not sharp enough to certify a digit count."""
