"""Generalized golden means alpha_n from exact Lagrange-inversion series."""

from .dyadic import Dyadic
from .errors import (
    DomainError, InexactDivision, OraclePrecisionInsufficient, PrecisionExhausted,
    RatioNotContracting,
)
from .series import SeriesKind, TermStream, evaluate, tail_bound
from .oracle import alpha_ref, derived_ref, forsyth_bracket, kbonacci_ratio
from .analysis import AccuracyRow, accuracy_table, digits_of_accuracy, predicted_accuracy

__all__ = [
    "Dyadic", "SeriesKind", "TermStream", "evaluate", "tail_bound",
    "alpha_ref", "derived_ref", "forsyth_bracket", "kbonacci_ratio",
    "AccuracyRow", "accuracy_table", "digits_of_accuracy", "predicted_accuracy",
    "DomainError", "InexactDivision", "OraclePrecisionInsufficient",
    "PrecisionExhausted", "RatioNotContracting",
]
