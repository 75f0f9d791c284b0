class DomainError(ValueError):
    """Argument outside the domain an operation is defined on."""


class NumericalError(ArithmeticError):
    """A numerical procedure left its tolerance envelope."""
