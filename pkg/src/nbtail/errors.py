"""Shared exception types."""


class ConvergenceError(ArithmeticError):
    """An iterative numerical routine failed to reach its tolerance."""
