"""
Positive triples and quadruples of flags.

Normalizing a triple (f1, f2, f3) means finding g with
g·(f1, f2, f3) = (σ₀, n·σ₀, σ_∞) where n has unit superdiagonal. The map
p_d sends the triple to g⁻¹·o for a basepoint o in the diagonal flat.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from ..shared.errors import (
    DegenerateQuadrupleError,
    DomainError,
    PositivityViolation,
    TransversalityError,
)
from ..spd.busemann import busemann, ideal_from_flag, rho_type
from ..spd.geometry import SpdPoint, TangentSym, exp_map, trace_free, sym
from .flag import Flag, Unipotent, intersection_line, transverse
from .positivity import totally_positive

# Configure logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PositiveQuadruple:
    """Quadruple in standard position (m·σ₀, σ₀, n·σ₀, σ_∞)."""

    m: Unipotent
    n: Unipotent
    g: Optional[np.ndarray] = None

    @property
    def d(self) -> int:
        return self.n.d


def _require_transverse(flags: Sequence[Flag], tol: float):
    for a in range(len(flags)):
        for b in range(a + 1, len(flags)):
            check = transverse(flags[a], flags[b], tol)
            if not check.ok:
                raise TransversalityError(
                    f"flags {a} and {b} are not transverse (margin {check.margin:.3e})",
                    index=check.witness[0], margin=check.margin)


def _opposite_frame(f_low: Flag, f_high: Flag) -> np.ndarray:
    """g₁ with g₁·f_low = σ₀ and g₁·f_high = σ_∞.

    Column k of g₁⁻¹ spans f_high^(k) ∩ f_low^(d−k+1).
    """
    d = f_low.d
    q_low, q_high = f_low.canonical, f_high.canonical
    cols = [intersection_line(q_high[:, :k], q_low[:, :d - k + 1]) for k in range(1, d + 1)]
    return np.linalg.inv(np.column_stack(cols))


def _unipotent_of(flag: Flag) -> np.ndarray:
    """Upper unitriangular u with flag = u·σ₀ (flag transverse to σ₀ and σ_∞)."""
    d = flag.d
    q = flag.canonical
    u = np.eye(d)
    for j in range(1, d + 1):
        # (u σ₀)^(d+1−j) meets span(e_1..e_j) in the line of u e_j
        v = intersection_line(q[:, :d + 1 - j], np.eye(d)[:, :j])
        if abs(v[j - 1]) < 1e-300:
            raise TransversalityError("flag is not transverse to the standard pair", index=j)
        u[:j, j - 1] = v[:j] / v[j - 1]
    return u


def _torus_from_superdiagonal(u: np.ndarray) -> np.ndarray:
    """Diagonal h such that h u h⁻¹ has unit superdiagonal."""
    sup = np.diag(u, 1)
    if np.any(sup == 0):
        raise DegenerateQuadrupleError("vanishing superdiagonal entry")
    h = np.ones(u.shape[0])
    for i, s in enumerate(sup):
        h[i + 1] = h[i] * s
    return h


def _projective_normalize(g: np.ndarray) -> np.ndarray:
    return g / abs(np.linalg.det(g)) ** (1.0 / g.shape[0])


def normalize_triple(f1: Flag, f2: Flag, f3: Flag, tol: float = 1e-12,
                     positivity_tol: float = 0.0) -> Tuple[np.ndarray, Unipotent]:
    """(g, n) with g·(f1, f2, f3) = (σ₀, n·σ₀, σ_∞) and n normalized, totally positive."""
    _require_transverse([f1, f2, f3], tol)
    g1 = _opposite_frame(f1, f3)
    u = _unipotent_of(f2.act(g1))
    h = _torus_from_superdiagonal(u)
    n = Unipotent.clean((h[:, None] * u) / h[None, :])
    check = totally_positive(n, positivity_tol)
    if not check.ok:
        rows, cols = check.witness
        raise PositivityViolation(f"triple is not positive: minor {rows}x{cols} = {check.margin:.3e}",
                                  rows, cols, check.margin)
    return _projective_normalize(h[:, None] * g1), n


def flat_basepoint(d: int, kind: str = "identity") -> np.ndarray:
    """Diagonal basepoint o of the flat of (σ₀, σ_∞).

    "principal" is the point fixed by the principal SO(2), o_{i+1} = i(d−i)·o_i.
    """
    if kind == "identity":
        return np.eye(d)
    if kind == "principal":
        o = np.ones(d)
        for i in range(1, d):
            o[i] = o[i - 1] * i * (d - i)
        return np.diag(o / np.prod(o) ** (1.0 / d))
    raise DomainError(f"unknown basepoint kind '{kind}'")


def project_pd(f1: Flag, f2: Flag, f3: Flag, basepoint: str = "identity") -> SpdPoint:
    """p_d(f1, f2, f3) = g⁻¹·o."""
    g, _ = normalize_triple(f1, f2, f3)
    gi = np.linalg.inv(g)
    o = flat_basepoint(f1.d, basepoint)
    factor = gi * np.sqrt(np.diag(o))
    return SpdPoint.from_matrix(factor @ factor.T, factor)


def standard_position(f1: Flag, f2: Flag, f3: Flag, f4: Flag, tol: float = 1e-12) -> PositiveQuadruple:
    """Move (f1, f2, f3, f4) to (m·σ₀, σ₀, n·σ₀, σ_∞) with n normalized."""
    _require_transverse([f1, f2, f3, f4], tol)
    g1 = _opposite_frame(f2, f4)
    um = _unipotent_of(f1.act(g1))
    un = _unipotent_of(f3.act(g1))
    h = _torus_from_superdiagonal(un)
    m = Unipotent.clean((h[:, None] * um) / h[None, :])
    n = Unipotent.clean((h[:, None] * un) / h[None, :])
    return PositiveQuadruple(m, n, _projective_normalize(h[:, None] * g1))


def cross_ratio_i(q: PositiveQuadruple, i: int) -> float:
    """CR_i = m_{i,i+1} / n_{i,i+1} (1-based i)."""
    if not 1 <= i <= q.d - 1:
        raise DomainError(f"cross ratio index must lie in 1..{q.d - 1}, got {i}")
    den = q.n.n[i - 1, i]
    if den == 0:
        raise DegenerateQuadrupleError(f"n_{{{i},{i + 1}}} vanishes")
    return float(q.m.n[i - 1, i] / den)


def log_cross_ratio_i(q: PositiveQuadruple, i: int) -> float:
    """cr_i = log(−CR_i)."""
    cr = cross_ratio_i(q, i)
    if cr >= 0:
        raise DomainError(f"CR_{i} = {cr} is not negative")
    return float(np.log(-cr))


def quadruple_positive(flags: Sequence[Flag], tol: float = 0.0) -> Tuple[bool, Optional[dict]]:
    """Positivity of a dihedrally ordered quadruple: n and m⁻¹ totally positive.

    Returns the verdict and, on failure, a witness naming the failing factor.
    """
    if len(flags) != 4:
        raise DomainError("a quadruple needs four flags")
    q = standard_position(*flags)
    for name, mat in (("n", q.n), ("m_inv", q.m.inverse())):
        check = totally_positive(mat, tol)
        if not check.ok:
            rows, cols = check.witness
            return False, {"factor": name, "rows": list(rows), "cols": list(cols), "value": check.margin}
    return True, None


def positive_triple_busemann_sum(flags: Sequence[Flag], p: SpdPoint) -> float:
    """b_{ρ(σ₁)}(p) + b_{ρ(σ₂)}(p) + b_{ρ(σ₃)}(p)."""
    rho = rho_type(p.d)
    return float(sum(busemann(ideal_from_flag(f.basis, rho), p) for f in flags))


def _tangent_basis(d: int) -> List[np.ndarray]:
    """Orthonormal (Frobenius) basis of symmetric trace-free matrices."""
    basis = []
    for i in range(d):
        for j in range(i + 1, d):
            e = np.zeros((d, d))
            e[i, j] = e[j, i] = 1.0 / np.sqrt(2.0)
            basis.append(e)
    for k in range(1, d):
        e = np.zeros((d, d))
        e[:k, :k] = np.eye(k)
        e[k, k] = -k
        basis.append(e / np.linalg.norm(e))
    return basis


def busemann_sum_minimizer(flags: Sequence[Flag], start: Optional[SpdPoint] = None) -> SpdPoint:
    """Approximate minimizer of the Busemann sum of a positive triple."""
    start = start if start is not None else project_pd(*flags)
    basis = _tangent_basis(start.d)

    def point(x):
        s = sum(c * e for c, e in zip(x, basis))
        return exp_map(TangentSym(trace_free(sym(s)), start))

    res = optimize.minimize(lambda x: positive_triple_busemann_sum(flags, point(x)),
                            np.zeros(len(basis)), method='Nelder-Mead',
                            options={'xatol': 1e-8, 'fatol': 1e-12, 'maxiter': 20000})
    return point(res.x)


def properness_profile(flags: Sequence[Flag], radii: Iterable[float], directions: int,
                       rng: np.random.Generator, center: Optional[SpdPoint] = None) -> np.ndarray:
    """Busemann sum along geodesic rays from the minimizer.

    Returns an array (directions, len(radii)) of values.
    """
    center = center if center is not None else busemann_sum_minimizer(flags)
    radii = list(radii)
    basis = _tangent_basis(center.d)
    out = np.empty((directions, len(radii)))
    for a in range(directions):
        x = rng.normal(size=len(basis))
        s = sum(c * e for c, e in zip(x, basis))
        unit = TangentSym(trace_free(sym(s)), center)
        unit = unit.scaled(1.0 / unit.norm)
        for b, r in enumerate(radii):
            out[a, b] = positive_triple_busemann_sum(flags, exp_map(unit.scaled(r)))
    return out
