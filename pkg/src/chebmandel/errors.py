class DomainError(ValueError):
    """Argument outside the region where a quantity is defined (e.g. x >= 2)."""


class ConvergenceError(RuntimeError):
    """An iterative routine hit its iteration or term cap."""
