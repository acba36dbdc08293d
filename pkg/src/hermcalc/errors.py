"""Exception hierarchy."""


class HermcalcError(Exception):
    """Base class for all errors raised by hermcalc."""


class DimensionMismatch(HermcalcError, ValueError):
    pass


class BidegreeError(HermcalcError, ValueError):
    """A form does not have the bidegree (or reality) an operation requires."""


class PreconditionError(HermcalcError, ValueError):
    pass


class NotClosedError(PreconditionError):
    """A form that must be d-closed is not; ``witness`` holds d(form)."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class HypothesisError(PreconditionError):
    """A theorem hypothesis (e.g. k-specialness of F) does not hold."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class TruncationError(PreconditionError):
    pass
