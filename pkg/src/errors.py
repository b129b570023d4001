"""Exceptions raised by the numerics and the front ends."""
from typing import Optional


class KinkBoxError(Exception):
    pass


class DomainError(KinkBoxError, ValueError):
    """Argument outside the region where an operation is defined."""


class PoleError(DomainError):
    """Argument sits on a pole (Gamma, hypergeometric lower parameter)."""


class RangeError(DomainError):
    """Dimensionless size too close to the l -> 0 singularity."""


class UnsupportedConfigurationError(KinkBoxError):
    pass


class PrecisionLossError(KinkBoxError, ArithmeticError):
    """Requested tolerance not reached; carries the best estimate and its bound."""

    def __init__(self, message: str, estimate: complex = float("nan"), bound: float = float("inf")) -> None:
        super().__init__(f"{message} (estimate={estimate}, bound={bound:.3g})")
        self.estimate = estimate
        self.bound = bound


class ConfigParseError(KinkBoxError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None) -> None:
        location = f"line {line}: " if line is not None else ""
        super().__init__(location + message)
        self.line = line
