"""Exception types shared across the package."""


class MmwsimError(ValueError):
    """Base class for all errors raised by mmwsim."""


class ParameterError(MmwsimError):
    """An operation received an out-of-contract argument."""


class ConfigError(MmwsimError):
    """A scenario configuration is inconsistent or cannot be loaded."""


class DegenerateInputError(MmwsimError):
    """Input is structurally valid but degenerate (zero matrix, coincident points)."""
