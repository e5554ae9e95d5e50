"""Shared exception types.

The command line maps these onto exit codes: DomainError and its subclasses
mean the inputs were well formed but physically inadmissible (exit 1), while
ConfigError means the run could not even be set up (exit 2).
"""


class DomainError(Exception):
    """A physically inadmissible input or an out-of-range evaluation."""


class CapacityError(DomainError):
    """Problem size exceeds what an exact method can handle."""


class PotentialShapeError(DomainError):
    """The flux potential does not have the shape a convention requires."""


class ConfigError(Exception):
    """Malformed configuration: unreadable file, bad field, unknown option."""
