"""
Green's function utilities of the hyperbolic plane.

Gamma(a, b) = ∫_a^b ds / sinh(s) is the radial Green's function difference
for curvature −1 in dimension 2. It drives the exit-probability constant of
the exterior-ball estimate and the C⁰ boundary bound of the solver.
"""

import math
import logging

from scipy import integrate

from ..shared.errors import DomainError

# Configure logging
logger = logging.getLogger(__name__)

QUAD_RELATIVE_TOL = 1e-12


def _log_tanh_half(s: float) -> float:
    return math.log(math.tanh(s / 2.0))


def gamma_integral(a: float, b: float, method: str = "closed") -> float:
    """∫_a^b ds / sinh(s) for 0 < a ≤ b.

    Args:
        a: Lower limit, strictly positive (the integrand blows up at 0)
        b: Upper limit, at least a
        method: "closed" for log tanh(b/2) − log tanh(a/2), "quad" for
            adaptive quadrature

    Returns:
        The integral value
    """
    if a <= 0:
        raise DomainError(f"gamma integral needs a > 0, got {a}")
    if b < a:
        raise DomainError(f"gamma integral needs a ≤ b, got ({a}, {b})")
    if a == b:
        return 0.0

    if method == "closed":
        return _log_tanh_half(b) - _log_tanh_half(a)
    if method == "quad":
        value, _ = integrate.quad(lambda s: 1.0 / math.sinh(s), a, b,
                                  epsabs=0.0, epsrel=QUAD_RELATIVE_TOL, limit=200)
        return float(value)
    raise DomainError(f"unknown gamma integral method '{method}'")


def green_function(r: float) -> float:
    """Γ(r) = ∫_r^∞ ds / sinh(s) = −log tanh(r/2)."""
    if r <= 0:
        raise DomainError(f"Green's function needs r > 0, got {r}")
    return -_log_tanh_half(r)


def exit_constant(r: float) -> float:
    """Lower bound α(r) on the hitting measure of the far boundary piece.

    α(r) = (Γ(r+1) − Γ(r+2)) / (Γ(1) − Γ(r+2)), which lies in (0, 1).
    """
    if r <= 0:
        raise DomainError(f"exit constant needs r > 0, got {r}")
    return gamma_integral(r + 1.0, r + 2.0) / gamma_integral(1.0, r + 2.0)


def boundary_estimate_bound(r: float, lipschitz: float) -> float:
    """C⁰ boundary bound (2r + 5)·L / α(r) for L-coarse Lipschitz data."""
    if lipschitz < 0:
        raise DomainError(f"Lipschitz constant must be non-negative, got {lipschitz}")
    return (2.0 * r + 5.0) * lipschitz / exit_constant(r)
