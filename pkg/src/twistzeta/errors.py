"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class TwistZetaError(Exception):
    pass


class PartsMismatch(TwistZetaError, ValueError):
    pass


class VarArityMismatch(TwistZetaError, ValueError):
    pass


class ZeroPolynomial(TwistZetaError, ValueError):
    pass


class PolynomialParseError(TwistZetaError, ValueError):
    pass


class NotCertifiedPositive(TwistZetaError, ValueError):
    pass


class CertificationFailed(TwistZetaError, ValueError):
    pass


class NearPole(TwistZetaError, ValueError):
    pass


class UnsupportedArgument(TwistZetaError, ValueError):
    pass


class ExpansionTooLarge(TwistZetaError, MemoryError):
    pass


class WrongShape(TwistZetaError, ValueError):
    pass


class ValidationError(TwistZetaError, ValueError):
    """Raised when a problem specification fails validation.

    ``diagnostics`` holds the full list so callers can report every failure,
    not only the first.
    """

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        msg = "; ".join(str(d) for d in self.diagnostics) or "invalid specification"
        super().__init__(msg)


class InternalPositivityViolation(TwistZetaError, AssertionError):
    pass


class OpaqueValue(TwistZetaError, ValueError):
    """A symbolic value contains atoms with no numeric evaluation."""


class TailDivergent(TwistZetaError, ArithmeticError):
    pass


class NotFactorizable(TwistZetaError, ValueError):
    pass


class UnsupportedDepth(TwistZetaError, ValueError):
    pass


class ExpressionParseError(TwistZetaError, ValueError):
    pass
