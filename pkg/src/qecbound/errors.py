"""Exception types shared across the package."""


class QecBoundError(Exception):
    """Base class for all package errors."""


class DimensionError(QecBoundError, ValueError):
    """Operands act on different qubit counts or incompatible spatial dimensions."""


class CapabilityError(QecBoundError, RuntimeError):
    """Request exceeds a hard resource bound (enumeration size, mode budget)."""


class DegenerateInputError(QecBoundError, ValueError):
    """Structurally empty or degenerate input (e.g. a mode grid with no modes)."""


class UnsupportedOrderError(QecBoundError, ValueError):
    """Third-order enumeration requested for a code that is not distance 3."""


class CriterionUnreachableError(QecBoundError, ValueError):
    """The distance criterion can never be exceeded for the given inputs."""


class ConfigError(QecBoundError, ValueError):
    """Configuration parsing or validation failure; message names the offending key."""
