"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: usage errors exit 2, resource errors
exit 3, internal invariant failures exit 4.
"""


class CoverCountError(Exception):
    pass


class UsageError(CoverCountError, ValueError):
    """Malformed input supplied by a caller."""


class ResourceError(CoverCountError):
    """A configured bound or budget would be exceeded."""


class InternalError(CoverCountError):
    """An invariant that should hold by construction did not."""


class NotDivisible(CoverCountError, ArithmeticError):
    pass


class WindowUnderflow(InternalError):
    pass


class BadConstantTerm(UsageError):
    pass


class OutOfBounds(ResourceError):
    pass


class BoundExceeded(ResourceError):
    pass


class BudgetExceeded(ResourceError):
    pass


class InvariantViolation(InternalError):
    pass


class NonIntegerEntry(InternalError):
    pass


class NonIntegerGenus(InternalError):
    pass
