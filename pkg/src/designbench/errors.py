"""Exception hierarchy shared across the workbench."""


class DesignbenchError(Exception):
    """Base class for all workbench errors."""


class RangeViolationError(DesignbenchError, ValueError):
    """A design parameter or unit coordinate is outside its allowed range."""

    def __init__(self, name: str, value: float, lo: float, hi: float):
        self.name = name
        self.value = value
        self.lo = lo
        self.hi = hi
        super().__init__(f"{name}={value!r} outside [{lo}, {hi}]")


class DomainError(DesignbenchError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class ProtocolError(DesignbenchError):
    """An action violates the session protocol (wrong count, wrong order)."""


class StageError(ProtocolError):
    """The session is not in the stage required for this action."""


class ModeError(ProtocolError):
    """The action is not available in the session's mode."""


class SequencingError(ProtocolError):
    """Proposal/evaluation alternation was violated."""


class InvalidSelectionError(ProtocolError):
    """A decision pick is not among the designs it must be drawn from."""


class InsufficientDataError(DesignbenchError, ValueError):
    """Not enough observations to fit a model."""


class NumericalError(DesignbenchError, ArithmeticError):
    """A numerical routine failed beyond recoverable jitter."""


class CorruptLogError(DesignbenchError):
    """An event log fails structural validation."""


class ConfigError(DesignbenchError, ValueError):
    """A configuration object is invalid."""
