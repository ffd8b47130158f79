"""Exception types shared across the package."""


class EntarchError(Exception):
    """Base class for all package-specific failures."""


class ContractViolation(EntarchError):
    """An operation was called with input that breaks its contract."""


class DimensionOverflow(ContractViolation):
    """A matrix operation would exceed the supported size (16 x 16)."""


class NumericFailure(EntarchError):
    """An iterative numeric routine failed to converge."""


class UnsupportedMode(EntarchError):
    """The requested physicality mode is not available for this model."""


class SearchFailure(EntarchError):
    """The optimizer could not find a feasible starting point."""


class ConfigurationError(EntarchError):
    """A sampler or grid configuration is unusable (e.g. wrong bounding box)."""
