"""Exception hierarchy shared by every module of the toolkit."""


class KrylovIPRError(Exception):
    """Base class for all toolkit errors."""


class InvalidArgument(KrylovIPRError, ValueError):
    """An argument violates a documented precondition."""


class DegenerateInput(KrylovIPRError, ValueError):
    """Input is formally valid but too degenerate to process (zero seed, zero operator...)."""


class NumericalFailure(KrylovIPRError, ArithmeticError):
    """A numerical routine failed to reach the accuracy it promises."""


class ResourceLimit(KrylovIPRError, ValueError):
    """Requested problem is too large for dense linear algebra."""
