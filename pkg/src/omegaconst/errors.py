"""Exception hierarchy shared by all modules."""


class OmegaError(Exception):
    """Base class for every error raised by this package."""


# real ball arithmetic
class DivisorStraddlesZero(OmegaError, ZeroDivisionError):
    pass


class NonPositiveArgument(OmegaError, ValueError):
    pass


# formal power series
class NonzeroConstantTerm(OmegaError, ValueError):
    pass


class ConstantTermNotOne(OmegaError, ValueError):
    pass


class CompositionInnerConstantNonzero(OmegaError, ValueError):
    pass


class ZeroLinearCoefficient(OmegaError, ValueError):
    pass


# p-adic arithmetic
class PrimeMismatch(OmegaError, ValueError):
    pass


class NonUnit(OmegaError, ZeroDivisionError):
    pass


class CoefficientNotPIntegral(OmegaError, ValueError):
    pass


class ArgumentNotInMaximalIdeal(OmegaError, ValueError):
    pass


class HenselConditionFailed(OmegaError, ArithmeticError):
    pass


class DerivativeNotUnitEnough(OmegaError, ArithmeticError):
    pass


class IntegralityViolation(OmegaError, ArithmeticError):
    pass


# solvers and series evaluation
class NoConvergence(OmegaError, ArithmeticError):
    pass


class OutsideRadius(OmegaError, ValueError):
    pass


class BelowBranchPoint(OmegaError, ValueError):
    pass


class PrecisionGateFailed(OmegaError, ArithmeticError):
    def __init__(self, n, message=None):
        self.n = n
        super().__init__(message or f"cannot certify index {n} at this precision")


class PrecisionExhausted(OmegaError, ArithmeticError):
    """Ran out of certified digits.  ``result`` carries whatever was computed."""

    def __init__(self, message, result=None):
        self.result = result
        super().__init__(message)


class StagnationDetected(OmegaError, ArithmeticError):
    """An iteration failed to reach its target; ``result`` holds the trace."""

    def __init__(self, message, result=None):
        self.result = result
        super().__init__(message)
