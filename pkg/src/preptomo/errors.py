"""Exception types."""


class PreptomoError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(PreptomoError, ValueError):
    pass


class NotHermitianError(PreptomoError, ValueError):
    pass


class NotPhysicalError(PreptomoError, ValueError):
    """A state that must be a density matrix is not one."""


class LinearDependenceError(PreptomoError, ValueError):
    """Input states do not span the operator space."""


class NotPreparableError(PreptomoError, ValueError):
    """A state cannot be produced by the given preparation procedure."""


class ConfigError(PreptomoError, ValueError):
    pass


class ConsistencyError(PreptomoError, RuntimeError):
    """Two independent computations of the same quantity disagree."""
