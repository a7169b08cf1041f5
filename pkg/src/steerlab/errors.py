"""Exception hierarchy shared by all steerlab modules."""


class SteerlabError(Exception):
    """Base class for every error raised by steerlab."""


class InvalidArgumentError(SteerlabError, ValueError):
    pass


class DomainError(SteerlabError, ValueError):
    """Input lies outside the domain of a measure (e.g. an unphysical state)."""


class PreconditionError(SteerlabError, ValueError):
    pass


class NumericDegenerateError(SteerlabError, ArithmeticError):
    """A matrix that must be invertible turned out singular."""


class StructureError(SteerlabError, RuntimeError):
    """A computed matrix does not have the block structure the model implies."""


class ConfigError(SteerlabError, ValueError):
    """Malformed sweep configuration, optionally tied to a line number."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
