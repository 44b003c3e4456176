"""
Exception hierarchy for numerical and configuration failures.
"""

from typing import Any, Dict, List, Optional, Sequence


class HitchinError(Exception):
    """Base class for all package errors."""

    def payload(self) -> Dict[str, Any]:
        """Diagnostic payload written next to failed reports."""
        return {"error": type(self).__name__, "message": str(self)}


class DomainError(HitchinError, ValueError):
    """Input outside the mathematical domain of an operation."""


class RangeError(DomainError):
    """Curve parameter outside the window with the chart flip disabled."""


class TransversalityError(DomainError):
    """Flags required to be transverse are not."""

    def __init__(self, message: str, index: Optional[int] = None, margin: Optional[float] = None):
        super().__init__(message)
        self.index = index
        self.margin = margin

    def payload(self) -> Dict[str, Any]:
        data = super().payload()
        data.update({"index": self.index, "margin": self.margin})
        return data


class PositivityViolation(DomainError):
    """A minor required to be positive is not."""

    def __init__(self, message: str, rows: Sequence[int] = (), cols: Sequence[int] = (), value: float = 0.0):
        super().__init__(message)
        self.rows = tuple(int(r) for r in rows)
        self.cols = tuple(int(c) for c in cols)
        self.value = float(value)

    def payload(self) -> Dict[str, Any]:
        data = super().payload()
        data.update({"rows": list(self.rows), "cols": list(self.cols), "value": self.value})
        return data


class DegenerateQuadrupleError(DomainError):
    """Quadruple with a vanishing superdiagonal entry."""


class UnsupportedSizeError(HitchinError):
    """Dimension beyond what exhaustive enumeration supports."""


class ConvergenceError(HitchinError):
    """Iteration cap reached before the tolerance."""

    def __init__(self, message: str, residuals: Optional[List[float]] = None):
        super().__init__(message)
        self.residuals = list(residuals or [])

    def payload(self) -> Dict[str, Any]:
        data = super().payload()
        data.update({
            "iterations": len(self.residuals),
            "last_residual": self.residuals[-1] if self.residuals else None,
            "residual_history": self.residuals[-50:],
        })
        return data


class ConfigError(HitchinError):
    """Invalid configuration document or override."""

    def __init__(self, message: str, field_path: str = ""):
        super().__init__(f"{field_path}: {message}" if field_path else message)
        self.field_path = field_path

    def payload(self) -> Dict[str, Any]:
        data = super().payload()
        data["field_path"] = self.field_path
        return data
