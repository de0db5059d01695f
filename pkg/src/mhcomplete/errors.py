"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class MHError(Exception):
    """Base class for every error raised by the package."""

    code = "ERROR"


class MalformedParameters(MHError, ValueError):
    code = "MALFORMED"


class NotAdmissible(MHError, ValueError):
    code = "NOT_ADMISSIBLE"


class OutOfRange(MHError, ValueError):
    code = "OUT_OF_RANGE"


class IncompleteGraph(MHError, ValueError):
    code = "INCOMPLETE_GRAPH"


class NotSymmetric(MHError, ValueError):
    code = "NOT_SYMMETRIC"


class TooLarge(MHError, ValueError):
    code = "TOO_LARGE"


class EmptyBaseUnsupported(MHError, ValueError):
    code = "EMPTY_BASE_UNSUPPORTED"


class NoCompletion(MHError):
    """Raised where a partial structure provably has no completion.

    ``certificate`` holds whatever witnessed the failure (usually a tuple of
    vertices).
    """

    code = "NO_COMPLETION"

    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate
