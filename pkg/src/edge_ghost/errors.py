class EdgeGhostError(ValueError):
    """Root of every error raised by the simulator."""


class MaskError(EdgeGhostError):
    """A phase mask could not be built from the given parameters."""


class WindowError(EdgeGhostError):
    """A window selects no pixels after clipping."""


class SpeckleError(EdgeGhostError):
    """A speckle realization was requested with invalid dimensions or index."""


class CorrelationError(EdgeGhostError):
    """The correlation between the two arms is undefined."""


class ScanError(EdgeGhostError):
    """A scan configuration is invalid."""


class BellError(EdgeGhostError):
    """The Bell-type analysis cannot be carried out."""


class ConfigError(EdgeGhostError):
    """An experiment config is malformed.

    The message always starts with the dotted path of the offending key.

    Example:
        >>> raise ConfigError("filter.l: must be an integer")
    """
