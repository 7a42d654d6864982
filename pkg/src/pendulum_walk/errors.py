"""Exception types shared across the library."""


class DimensionError(ValueError):
    """A vector has an unsupported dimension (empty, wrong rank, ...)."""


class DomainError(ValueError):
    """Entries violate the domain contract (e.g. a transition probability >= 1)."""


class SizeCapError(ValueError):
    """An exhaustive enumeration was requested beyond the hard size cap."""


class StepLimitError(RuntimeError):
    """A simulated walk ran past its step cutoff without terminating."""
