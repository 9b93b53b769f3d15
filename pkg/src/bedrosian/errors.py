"""Exception hierarchy shared by the library and the CLI."""


class BedrosianError(Exception):
    """Base class for all errors raised by this package."""


class GridMismatchError(BedrosianError, ValueError):
    """Two objects live on incompatible frequency grids."""


class EmptyInputError(BedrosianError, ValueError):
    """A support set that must be nonempty has no occupied bin."""


class AntiAliasingError(BedrosianError, ValueError):
    """A spectrum reaches outside the central half-window."""


class ConfigError(BedrosianError, ValueError):
    """Invalid analysis configuration.

    ``path`` names the offending location, e.g. ``set_a.ball.radius``.
    """

    def __init__(self, path, message):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)
