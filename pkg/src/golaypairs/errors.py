"""Exception types shared across the package."""


class GolayError(Exception):
    """Base class for domain errors raised by this package."""


class OddModulusError(GolayError, ValueError):
    """Raised when an operation is only defined for an even modulus q."""


class NotAGapError(GolayError):
    """Raised when a pair of arrays is not a complementary array pair."""


class PartitionTooFineError(GolayError, ValueError):
    """Raised when a requested variable partition splits interacting variables."""


class BudgetExceededError(GolayError):
    """Raised when an enumeration would exceed the configured budget."""


class VerificationError(GolayError):
    """Raised when an internal exactness check fails.  Seeing this means a bug."""
