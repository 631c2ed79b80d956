"""Exception hierarchy.

``TheoremViolation`` and ``InternalContradiction`` are deliberately separate
from ordinary input errors: they fire only when a decision procedure reaches
a state that the underlying theorems rule out.
"""


class LeibkitError(Exception):
    pass


class DivisionByZero(LeibkitError, ZeroDivisionError):
    pass


class FieldMismatch(LeibkitError, ValueError):
    pass


class ParseError(LeibkitError, ValueError):
    pass


class ShapeError(LeibkitError, ValueError):
    """Covers NonSquare, SizeMismatch and AmbientMismatch conditions."""


class NonSquare(ShapeError):
    pass


class SizeMismatch(ShapeError):
    pass


class AmbientMismatch(ShapeError):
    pass


class SingularMatrix(LeibkitError, ValueError):
    pass


class ZeroPolynomial(LeibkitError, ValueError):
    pass


class BudgetExhausted(LeibkitError, RuntimeError):
    pass


class NotClosed(LeibkitError, ValueError):
    pass


class NotIdeal(LeibkitError, ValueError):
    pass


class NotSubmodule(LeibkitError, ValueError):
    pass


class UnverifiedAlgebra(LeibkitError, ValueError):
    pass


class InvalidRepresentation(LeibkitError, ValueError):
    pass


class UnknownEntry(LeibkitError, KeyError):
    pass


class FieldUnsupported(LeibkitError, ValueError):
    pass


class ModeUnsupportedForField(LeibkitError, ValueError):
    pass


class PreconditionViolated(LeibkitError, ValueError):
    pass


class TheoremViolation(LeibkitError, AssertionError):
    """A checked hypothesis held but the guaranteed conclusion failed.

    ``state`` carries whatever the raiser had at hand for a post-mortem.
    """

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state or {}


class InternalContradiction(TheoremViolation):
    pass
