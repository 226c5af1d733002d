"""Exception hierarchy shared by all modules."""


class AdjringError(Exception):
    """Base class for structured errors raised by the library."""


class DimensionError(AdjringError, ValueError):
    """Operands have incompatible dimensions."""


class NotContainedError(AdjringError, ValueError):
    """A point was required to lie in a polytope or cone but does not."""


class EmptyPolytopeError(AdjringError, ValueError):
    pass


class UnboundedError(AdjringError, ValueError):
    """An H-representation that was expected to be bounded is not."""


class NotPointedError(AdjringError, ValueError):
    pass


class FieldMismatchError(AdjringError, ValueError):
    """Quadratic scalars from two different fields were combined."""


class FanError(AdjringError, ValueError):
    pass


class PositivityError(AdjringError, ValueError):
    """A divisor lacks the positivity an operation requires."""


class BaseLocusError(AdjringError, ValueError):
    pass


class HypothesisError(AdjringError, ValueError):
    """A checkable hypothesis of a construction fails; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ScenarioError(AdjringError, ValueError):
    """Malformed scenario input (exit status 2 in the CLI)."""
