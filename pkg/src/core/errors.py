"""Exception types raised across the hecke-cells kernel."""


class HeckeCellsError(Exception):
    """Base class for errors raised by this package."""


class MethodDisagreementError(HeckeCellsError, RuntimeError):
    """
    Two independent computations of the same quantity returned different values.

    This always signals a bug (or a convention mismatch), never bad input.

    Parameters
    ----------
    message : str
        Human readable description
    witness : object, optional
        JSON-able data identifying the disagreeing input and both values
    """

    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness


class VerificationError(HeckeCellsError, AssertionError):
    """
    An identity of the theory failed on a concrete input.

    Parameters
    ----------
    check : str
        Name of the failing check (e.g. ``"P8"`` or ``"mathas"``)
    witness : object
        JSON-able counterexample
    """

    def __init__(self, check: str, witness: object, message: str | None = None):
        super().__init__(message or f"{check} failed on {witness!r}")
        self.check = check
        self.witness = witness


class RankBoundError(HeckeCellsError, ValueError):
    """Requested rank exceeds the configured maximum and was not forced."""


class CacheFormatError(HeckeCellsError, ValueError):
    """A cache payload is present but cannot be decoded."""
