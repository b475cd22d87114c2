"""Exception hierarchy.

Parse-time problems and violated mathematical preconditions are kept apart so
the command line tool can map them to distinct exit codes (2 and 3).
"""


class CorrdynError(Exception):
    """Base class for all library errors."""


class ParseError(CorrdynError):
    """Malformed expression, point, field spec or job file."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class UnknownCommand(ParseError):
    pass


class WrongArity(ParseError):
    """A variable appears in a context whose arity forbids it."""


class MissingField(ParseError):
    """A job file lacks a required section or key."""


class PreconditionError(CorrdynError):
    """A documented precondition of an operation does not hold."""


class NotPrime(PreconditionError):
    pass


class InfiniteField(PreconditionError):
    pass


class FieldMismatch(PreconditionError):
    pass


class ZeroPolynomial(PreconditionError):
    pass


class Inseparable(PreconditionError):
    pass


class DegenerateComponent(PreconditionError):
    pass


class NotAnEdge(PreconditionError):
    pass


class SingularEdge(PreconditionError):
    pass


class VertexNotInSet(PreconditionError):
    pass


class NotMorphismType(PreconditionError):
    pass


class DegreeOne(PreconditionError):
    pass


class TraceUndefined(PreconditionError):
    pass


class NotForwardComplete(PreconditionError):
    pass


class NotRamificationIncreasing(PreconditionError):
    pass


class StabilityViolation(PreconditionError):
    """Image of a filtered function left the filtration level.

    Carries the offending pole (a point, or None for a degree overflow at a
    pole already in the support).
    """

    def __init__(self, message, pole=None):
        super().__init__(message)
        self.pole = pole


class NotDisjoint(PreconditionError):
    pass


class NonRationalPoint(PreconditionError):
    pass


class NonPositiveDegree(PreconditionError):
    pass


class WrongField(PreconditionError):
    """A point lives over a field the operation does not accept."""


class Balanced(PreconditionError):
    """Raised when an operation requires d1 != d2."""


class BudgetError(CorrdynError):
    """Internal signal: a search exceeded its explicit budgets."""
