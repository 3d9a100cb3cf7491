"""Exception types shared across the package.

The CLI maps ConfigError to exit code 2 and SolverAbort to exit code 3;
everything else is a plain bug.
"""


class NsacLabError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(NsacLabError):
    """Malformed or inconsistent experiment configuration."""


class SolverAbort(NsacLabError):
    """A run-time guard tripped (divergence, overshoot, non-convergence)."""


class FieldFormatError(NsacLabError):
    """Broken snapshot, curve, or manifest file."""


class GeometryError(NsacLabError):
    """Invalid curve or tubular-band request."""
