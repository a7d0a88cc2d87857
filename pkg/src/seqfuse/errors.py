"""Shared exception types."""


class ConfigError(ValueError):
    """A configuration value violates its validity constraints."""


class ProtocolError(RuntimeError):
    """A message frame or state transition violates the fusion protocol."""


class CalibrationError(RuntimeError):
    """Threshold calibration could not bracket or reach its target."""


class NonTerminatingError(RuntimeError):
    """A sequential loop exceeded its hard iteration cap."""
