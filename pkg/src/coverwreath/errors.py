"""Exception taxonomy shared by the library and the command line."""


class CoverWreathError(Exception):
    """Base class for every error raised by coverwreath."""


class NotPrime(CoverWreathError, ValueError):
    pass


class SizeExceeded(CoverWreathError, ValueError):
    pass


class ZeroElement(CoverWreathError, ValueError):
    pass


class NoSuchOrder(CoverWreathError, ValueError):
    pass


class BudgetExceeded(CoverWreathError):
    """A group or system is larger than the configured budget."""

    def __init__(self, message, needed=None, budget=None):
        super().__init__(message)
        self.needed = needed
        self.budget = budget


class InvalidR(CoverWreathError, ValueError):
    pass


class WrongLabel(CoverWreathError, ValueError):
    pass


class NotInvariant(CoverWreathError, ValueError):
    pass


class NotCentralKernel(CoverWreathError, ValueError):
    pass


class InvalidInstance(CoverWreathError, ValueError):
    pass


class WitnessCheckFailed(CoverWreathError, AssertionError):
    """An asserted property of the diagonal witness failed (an implementation bug)."""


class CertificateError(CoverWreathError):
    """A certificate failed to parse or one of its checks failed."""
