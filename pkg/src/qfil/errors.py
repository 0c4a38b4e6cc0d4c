"""Typed errors shared across the package."""


class QfilError(Exception):
    """Base class for analysis errors."""


class RingMismatch(QfilError):
    """Operands live over different ambient rings."""


class NotComputable(QfilError):
    """The requested operation is outside the exact toolkit for this input."""


class TruncationLimit(QfilError):
    """No certificate found up to the configured maximum truncation."""


class WindowExceeded(QfilError):
    """Series extraction failed: trailing coefficients do not vanish."""


class HypothesisFailed(QfilError):
    """A stated precondition of an operation does not hold."""


class SearchExhausted(QfilError):
    """Randomized search gave up after the configured number of retries."""


class Unsupported(QfilError):
    """Operation not defined for this input class."""


class InputError(QfilError):
    """Malformed instance document or expression."""
