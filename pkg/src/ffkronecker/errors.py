"""Exception hierarchy shared by every module.

Errors fall in three families. ``ArithmeticFailure`` covers exact-arithmetic
problems (division by zero, non-units). ``BadRandomChoice`` and its subclasses
mark a random genericity choice that was checked a posteriori and rejected;
callers resample and retry. ``PreconditionError`` marks inputs that can never
succeed, and the CLI maps it to exit status 2.
"""

from __future__ import annotations


class FFKError(Exception):
    """Base class for all library errors."""


# -- arithmetic ---------------------------------------------------------------


class ArithmeticFailure(FFKError):
    pass


class NotPrime(ArithmeticFailure, ValueError):
    pass


class IrreducibleSearchExhausted(FFKError):
    pass


class DivisionByZero(ArithmeticFailure, ZeroDivisionError):
    pass


class NotAUnit(ArithmeticFailure):
    """Inversion of a non-unit in a ring with zero divisors."""


class SingularMatrix(ArithmeticFailure):
    pass


class DuplicateAbscissa(FFKError, ValueError):
    pass


class NotBaseField(FFKError):
    """An element expected to lie in a subfield does not."""


# -- parsing ------------------------------------------------------------------


class ParseError(FFKError):
    pass


class SyntaxError(ParseError):  # noqa: A001 - name fixed by the input contract
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}")


class UnknownVariable(ParseError):
    pass


class NonPolynomial(ParseError):
    pass


# -- randomized choices that failed verification ------------------------------


class BadRandomChoice(FFKError):
    """A random choice failed its a posteriori check; resample."""


class UnluckyCenter(BadRandomChoice):
    pass


class UnluckyLambda(BadRandomChoice):
    pass


class NotLiftingPoint(BadRandomChoice):
    pass


class RamifiedRoot(BadRandomChoice):
    pass


class LiftDiverged(BadRandomChoice):
    pass


class PrecisionExceeded(LiftDiverged):
    pass


class NonLinearGcd(BadRandomChoice):
    pass


class ZeroDivisorHit(BadRandomChoice):
    pass


class ValidationFailed(BadRandomChoice):
    pass


class PathHitsDiscriminant(BadRandomChoice):
    pass


class NotSeparating(BadRandomChoice):
    pass


class BudgetExhausted(BadRandomChoice):
    pass


# -- hard failures ------------------------------------------------------------


class RetriesExhausted(FFKError):
    def __init__(self, message: str, stage: str = "", last_error: str = ""):
        self.stage = stage
        self.last_error = last_error
        super().__init__(message)


class InconsistentSystem(FFKError):
    pass


class PreconditionError(FFKError):
    pass


class FieldTooSmall(PreconditionError):
    def __init__(self, message: str, q: int = 0, bound: int = 0):
        self.q = q
        self.bound = bound
        super().__init__(message)


class InsufficientField(PreconditionError):
    pass


class TooLarge(FFKError):
    pass


class CountUnstable(FFKError):
    pass
