"""Exception hierarchy. Every error carries a short stable ``code`` that the
CLI prints verbatim, so scripts can match on it."""


class SpinChanError(Exception):
    code = "error"


class DimensionMismatchError(SpinChanError):
    code = "dimension-mismatch"


class ContractViolationError(SpinChanError):
    code = "contract-violation"


class NotPositiveError(SpinChanError):
    """Input required to be positive semidefinite is not."""

    code = "not-PSD"


class InvalidBlochError(SpinChanError):
    """Polarisation vector longer than 1."""

    code = "invalid-Bloch"


class InvalidParameterError(SpinChanError):
    code = "invalid-parameter"


class ExceptionalStateError(InvalidParameterError):
    """No finite-spin separable twin exists (|alpha| >= 1)."""

    code = "exceptional-state"


class SeparabilityRangeError(InvalidParameterError):
    """Requested decomposition outside |alpha| <= S/(S+1)."""

    code = "separability-range"


class CapacityError(SpinChanError):
    """Dense-path size cap exceeded."""

    code = "capacity"


class InvalidInputError(SpinChanError):
    code = "invalid-input"
