"""Exception hierarchy. Every error raised by the library derives from PfamError."""


class PfamError(Exception):
    pass


class DimensionMismatch(PfamError, ValueError):
    pass


class InfiniteLength(PfamError, ValueError):
    """A quotient has infinite length (ideal not m-primary)."""


class NotAPowerOfP(PfamError, ValueError):
    pass


class ContainmentError(PfamError, ValueError):
    pass


class ZeroIdealError(PfamError, ValueError):
    pass


class Unsupported(PfamError, NotImplementedError):
    pass


class CapExceeded(PfamError, RuntimeError):
    pass


class SingularSystem(PfamError, ArithmeticError):
    pass


class PreconditionFailed(PfamError, ValueError):
    """A checkable hypothesis (power containment, r(I|J)=0, ...) failed.

    ``where`` carries the offending index, e.g. ``{"b": 3}``.
    """

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where or {}
