"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: usage/domain errors exit 2, resource
errors exit 3, invariant violations exit 4.
"""


class CartierError(Exception):
    """Base class for all library errors."""

    kind = "error"


class UsageError(CartierError):
    """The caller asked for something the inputs do not support."""

    kind = "usage"


class DomainError(CartierError):
    """A mathematically undefined operation, e.g. inverting zero."""

    kind = "domain"


class ResourceError(CartierError):
    """A configured cap (iterations, degree, search space) was exceeded."""

    kind = "resource"


class InvariantViolation(CartierError):
    """An internal structure theorem failed to hold.  Never expected."""

    kind = "invariant"
