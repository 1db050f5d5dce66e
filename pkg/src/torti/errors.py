"""Exception hierarchy shared by every module."""


class TortiError(Exception):
    """Base class for all errors raised by the package."""


class InputError(TortiError, ValueError):
    """Invalid user input: bad fraction, bad knot parameters."""


class MalformedFractionError(InputError):
    """A continued fraction that cannot be evaluated or collapsed."""


class UsageError(TortiError, ValueError):
    """An operation was called outside its domain (e.g. wrong linking number)."""


class UnsupportedHypothesisError(UsageError):
    """The requested computation needs a hypothesis we cannot verify."""


class NormalizationError(TortiError, ValueError):
    """The zero polynomial has no unit-normal form."""


class DivisibilityError(TortiError, ArithmeticError):
    """An exact division left a remainder."""


class ConsistencyError(TortiError, RuntimeError):
    """Two independent computations of the same quantity disagree.

    Never expected on valid input; signals a bug upstream.
    """
