"""Exception types shared across the package."""


class TeagLabError(Exception):
    """Base class for package-specific errors."""


class GraphFormatError(TeagLabError):
    """An interchange file violates the graph JSON schema."""


class NotSimpleError(TeagLabError):
    """An operation defined only for simple graphs received a multigraph."""


class MissingPortsError(TeagLabError):
    """An adaptation requires port numbers that were not supplied."""


class InvalidPortsError(TeagLabError):
    """A port assignment violates the validity properties."""
