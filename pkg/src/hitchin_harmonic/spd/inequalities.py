"""
Four-point inequalities of non-positively curved spaces.

For a quadruple (q0, q1, q2, q3) the sides are D = d(q0,q1), E′ = d(q1,q2),
D′ = d(q2,q3), E = d(q3,q0) and the diagonals F = d(q1,q3), F′ = d(q0,q2).
Each check returns (lhs, rhs); the inequality holds when lhs ≤ rhs.
"""

from typing import Callable, Dict, Sequence, Tuple

from ..shared.errors import DomainError
from .geometry import SpdPoint, distance


def quadrilateral_lengths(q: Sequence[SpdPoint],
                          metric: Callable[[SpdPoint, SpdPoint], float] = distance) -> Dict[str, float]:
    if len(q) != 4:
        raise DomainError("a quadrilateral needs four points")
    q0, q1, q2, q3 = q
    return {
        "D": metric(q0, q1),
        "E'": metric(q1, q2),
        "D'": metric(q2, q3),
        "E": metric(q3, q0),
        "F": metric(q1, q3),
        "F'": metric(q0, q2),
    }


def ptolemy_check(q: Sequence[SpdPoint],
                  metric: Callable[[SpdPoint, SpdPoint], float] = distance) -> Tuple[float, float]:
    """(F·F′, D·D′ + E·E′)."""
    s = quadrilateral_lengths(q, metric)
    return s["F"] * s["F'"], s["D"] * s["D'"] + s["E"] * s["E'"]


def quad_cr_bound_check(q: Sequence[SpdPoint],
                        metric: Callable[[SpdPoint, SpdPoint], float] = distance) -> Tuple[float, float]:
    """(F − D + F′ − D′, 2·E·E′ / D)."""
    s = quadrilateral_lengths(q, metric)
    if s["D"] == 0:
        raise DomainError("quadrilateral bound needs d(q0, q1) > 0")
    return s["F"] - s["D"] + s["F'"] - s["D'"], 2.0 * s["E"] * s["E'"] / s["D"]


def parallelogram_check(q: Sequence[SpdPoint],
                        metric: Callable[[SpdPoint, SpdPoint], float] = distance) -> Tuple[float, float]:
    """(F² + F′², D² + D′² + E² + E′²)."""
    s = quadrilateral_lengths(q, metric)
    return (s["F"] ** 2 + s["F'"] ** 2,
            s["D"] ** 2 + s["D'"] ** 2 + s["E"] ** 2 + s["E'"] ** 2)
