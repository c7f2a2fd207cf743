"""Exception hierarchy.

Rejections of candidate inputs (a subset that is not a torsion class, a chain
that is not a t-structure) are values, not exceptions.  Exceptions signal bad
input, violated preconditions, or internal bugs.
"""


class TstrxError(Exception):
    """Base class for all package errors."""


class QuiverParseError(TstrxError, ValueError):
    def __init__(self, message: str, token: str = ""):
        super().__init__(message)
        self.token = token


class InputParseError(TstrxError, ValueError):
    """Malformed chain file, object literal, or dimension vector."""


class QuiverMismatch(TstrxError, ValueError):
    pass


class PreconditionError(TstrxError):
    """An operation was called outside its documented domain."""


class SizeGuardExceeded(PreconditionError):
    pass


class NonTrivialRequired(PreconditionError):
    pass


class UnvalidatedPresentation(PreconditionError):
    pass


class ContainmentError(PreconditionError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InternalInconsistency(TstrxError, RuntimeError):
    """Two independent computations disagreed.  Always a bug."""
