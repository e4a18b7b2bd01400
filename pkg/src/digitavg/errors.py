"""Exception hierarchy shared by every module."""


class DigitAvgError(Exception):
    """Base class for all library errors."""


class InvalidBaseError(DigitAvgError, ValueError):
    pass


class InvalidDigitError(DigitAvgError, ValueError):
    pass


class ZeroExpansionError(DigitAvgError, ValueError):
    """Raised when asked to expand a number with zero fractional part."""


class ExactModeUnavailable(DigitAvgError):
    """The denominator is too large for remainder-map period detection."""


class SpecError(DigitAvgError, ValueError):
    """A generator specification violates its invariants."""


class DigitFileError(DigitAvgError):
    """Problems reading or decoding a digit file."""


class DigitDecodeError(DigitFileError):
    def __init__(self, message, offset):
        super().__init__(message)
        self.offset = offset


class StreamTruncatedError(DigitFileError):
    """A finite-backed stream was pulled past its declared length."""

    def __init__(self, message, available):
        super().__init__(message)
        self.available = available


class PartialResultError(DigitAvgError):
    """Stream ended early; ``stats`` holds everything consumed before the failure."""

    def __init__(self, message, stats, cause=None):
        super().__init__(message)
        self.stats = stats
        self.cause = cause


class UndefinedAverageError(DigitAvgError, ValueError):
    pass


class IdentityMismatchError(DigitAvgError):
    """A checkpoint failed the weighted-frequency identity check."""


class UsageError(DigitAvgError):
    pass
