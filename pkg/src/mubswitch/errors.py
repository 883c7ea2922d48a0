"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Operand shapes are incompatible."""


class DomainError(ValueError):
    """A parameter lies outside its admissible range."""


class ConsistencyError(RuntimeError):
    """A computed object violated a contract it must satisfy by construction
    (completeness of a Kraus family, trace preservation, ...)."""
