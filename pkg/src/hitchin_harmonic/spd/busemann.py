"""
Ideal points, Busemann functions and asymptotic slopes.

An ideal point is a chamber frame k (orthogonal) with a unit type vector w in
the closed positive chamber; its ray from o = I is γ(t) = k exp(t w) kᵀ.
Writing kᵀ p k = U D Uᵀ with U upper unitriangular,

    b_η(p) = −κ² ⟨w, log D⟩,

normalised by b_η(o) = 0.
"""

import math
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np
import scipy.linalg
from scipy.special import logsumexp
import mpmath

from ..shared.errors import DomainError
from .geometry import KAPPA, CartanVector, SpdPoint, sym

# Configure logging
logger = logging.getLogger(__name__)

ORTHOGONALITY_TOL = 1e-12
DEFAULT_HORIZON = 1e3


def _reversal(d: int) -> np.ndarray:
    return np.eye(d)[::-1]


def canonical_qr(basis: np.ndarray) -> np.ndarray:
    """Orthonormal Q of basis = QR with positive diagonal R."""
    q, r = np.linalg.qr(np.asarray(basis, dtype=float))
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


@dataclass(frozen=True, eq=False)
class IdealPoint:
    """Point of the visual boundary of Y_d."""

    frame: np.ndarray
    type_vec: CartanVector

    def __post_init__(self):
        k = np.asarray(self.frame, dtype=float)
        d = k.shape[0]
        if k.shape != (d, d) or np.max(np.abs(k.T @ k - np.eye(d))) > ORTHOGONALITY_TOL * 10 * d:
            raise DomainError("ideal point frame is not orthogonal")
        if self.type_vec.d != d:
            raise DomainError("type vector dimension does not match the frame")
        if abs(self.type_vec.norm - 1.0) > 1e-10:
            raise DomainError(f"type vector must have unit norm, got {self.type_vec.norm}")
        object.__setattr__(self, 'frame', k)

    @property
    def d(self) -> int:
        return self.frame.shape[0]

    @property
    def w(self) -> np.ndarray:
        return self.type_vec.v

    @classmethod
    def from_type(cls, frame: np.ndarray, v: Sequence[float]) -> 'IdealPoint':
        """Normalise v to unit length and wrap it with a frame."""
        c = CartanVector.from_unsorted(v)
        if c.norm == 0:
            raise DomainError("zero type vector")
        return cls(frame, CartanVector(c.v / c.norm))

    def ray_point(self, t: float) -> SpdPoint:
        """γ(t), at distance t from o."""
        k = self.frame
        return SpdPoint.from_matrix((k * np.exp(t * self.w)) @ k.T)


def rho_type(d: int) -> CartanVector:
    """Unit-norm half-sum of the positive roots."""
    rho = (d - 1 - 2.0 * np.arange(d)) / 2.0
    return CartanVector(rho / (KAPPA * np.linalg.norm(rho)))


def opposite(eta: IdealPoint) -> IdealPoint:
    """Endpoint of the ray opposite to eta's ray through o."""
    return IdealPoint(eta.frame @ _reversal(eta.d), eta.type_vec.opposite())


def ideal_from_flag(basis: np.ndarray, type_vec: Optional[CartanVector] = None) -> IdealPoint:
    """Ideal point of the given type in the chamber at infinity of a flag.

    The flag is given by an adapted basis (columns); its first k columns span
    the k-dimensional subspace. The default type is ρ.
    """
    basis = np.asarray(basis, dtype=float)
    return IdealPoint(canonical_qr(basis), type_vec if type_vec is not None else rho_type(basis.shape[0]))


def _iwasawa_log_d(eta: IdealPoint, p: SpdPoint) -> np.ndarray:
    """log D of kᵀ p k = U D Uᵀ."""
    if p.factor is not None:
        # RQ of kᵀA: kᵀA = R Q gives kᵀ p k = R Rᵀ
        r, _ = scipy.linalg.rq(eta.frame.T @ p.factor)
        return 2.0 * np.log(np.abs(np.diag(r)))
    return iwasawa_log_d_array(eta.frame, p.m)


def iwasawa_log_d_array(frame: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Batched log D through a Cholesky factor of the reversed matrix."""
    d = p.shape[-1]
    j = _reversal(d)
    pk = np.swapaxes(frame, -1, -2) @ p @ frame
    c = np.linalg.cholesky(sym(j @ pk @ j))
    return 2.0 * np.log(np.diagonal(c, axis1=-2, axis2=-1))[..., ::-1]


def iwasawa_log_d_factors(frame: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Batched log D from factors: kᵀA = R Q with R upper triangular."""
    m = np.swapaxes(frame, -1, -2) @ a
    j = _reversal(a.shape[-1])
    # (J M)ᵀ = Q₁R₁ gives M = (J R₁ᵀ J)(J Q₁ᵀ)
    r1 = np.linalg.qr(np.swapaxes(j @ m, -1, -2), mode='r')
    return 2.0 * np.log(np.abs(np.diagonal(r1, axis1=-2, axis2=-1)))[..., ::-1]


def busemann_factors(eta: IdealPoint, a: np.ndarray) -> np.ndarray:
    """b_η(A Aᵀ) for a stack of determinant ±1 factors."""
    return -KAPPA ** 2 * iwasawa_log_d_factors(eta.frame, a) @ eta.w


def transform_ideal(eta: IdealPoint, g: np.ndarray) -> IdealPoint:
    """g·η: the same type on the flag g·F(η)."""
    return IdealPoint(canonical_qr(np.asarray(g, dtype=float) @ eta.frame), eta.type_vec)


def busemann(eta: IdealPoint, p: SpdPoint) -> float:
    """b_η(p) = lim d(γ(t), p) − t."""
    if p.d != eta.d:
        raise DomainError("dimension mismatch between ideal point and point")
    return float(-KAPPA ** 2 * np.dot(eta.w, _iwasawa_log_d(eta, p)))


def busemann_array(eta: IdealPoint, p: np.ndarray) -> np.ndarray:
    return -KAPPA ** 2 * iwasawa_log_d_array(eta.frame, p) @ eta.w


def _truncated_gap(eta: IdealPoint, p: SpdPoint, t: float) -> mpmath.mpf:
    """d(γ(t), p) − t in extended precision."""
    w = eta.w
    spread = float(w[0] - w[-1])
    dps = int(t * spread / math.log(10.0)) + 40
    with mpmath.workdps(dps):
        pk = mpmath.matrix((eta.frame.T @ p.m @ eta.frame).tolist())
        e = [mpmath.exp(-t * mpmath.mpf(wi) / 2) for wi in w]
        d = p.d
        m = mpmath.matrix(d, d)
        for i in range(d):
            for j in range(d):
                m[i, j] = e[i] * pk[i, j] * e[j]
        evals = mpmath.eigsy(m, eigvals_only=True)
        logs = [mpmath.log(evals[i]) for i in range(d)]
        dist = mpmath.sqrt(sum(l * l for l in logs)) * mpmath.mpf(KAPPA)
        return dist - t


def busemann_truncated(eta: IdealPoint, p: SpdPoint, horizon: float = DEFAULT_HORIZON) -> float:
    """Truncated-limit value d(γ(T), p) − T with Richardson extrapolation.

    The truncation error has an expansion in 1/t; values at T/4, T/2 and T
    are combined to cancel its first two terms.
    """
    ts = [horizon / 4.0, horizon / 2.0, horizon]
    vals = [_truncated_gap(eta, p, t) for t in ts]
    # fit b + c1/t + c2/t² through the three samples
    a = np.array([[1.0, 1.0 / t, 1.0 / t ** 2] for t in ts])
    coeffs = np.linalg.solve(a, np.array([float(v) for v in vals]))
    return float(coeffs[0])


def _ray_busemann(eta: IdealPoint, xi: IdealPoint, t: float) -> float:
    """b_η along the ray toward ξ, from log-sum-exp Cauchy–Binet minors."""
    d = eta.d
    m = eta.frame.T @ xi.frame
    exponents = t * xi.w
    # log of trailing principal minors det(P'[i:, i:]) of P' = M e^{tw} Mᵀ
    log_minors = np.zeros(d + 1)
    for i in range(d):
        rows = list(range(i, d))
        terms = []
        for cols in combinations(range(d), len(rows)):
            minor = np.linalg.det(m[np.ix_(rows, cols)])
            if minor == 0:
                continue
            terms.append(2.0 * math.log(abs(minor)) + float(np.sum(exponents[list(cols)])))
        log_minors[i] = logsumexp(terms)
    log_d = log_minors[:d] - log_minors[1:]
    return float(-KAPPA ** 2 * np.dot(eta.w, log_d))


def _shared_flat_permutation(eta: IdealPoint, xi: IdealPoint, tol: float = 1e-9) -> Optional[np.ndarray]:
    """Signed permutation relating the two frames, if there is one."""
    m = eta.frame.T @ xi.frame
    a = np.abs(m)
    perm = np.argmax(a, axis=0)
    if sorted(perm.tolist()) != list(range(eta.d)):
        return None
    if np.max(np.abs(a[perm, np.arange(eta.d)] - 1.0)) > tol:
        return None
    return perm


def slope(eta: IdealPoint, xi: IdealPoint, horizon: float = DEFAULT_HORIZON) -> float:
    """Asymptotic slope of b_η along the ray from o toward ξ."""
    if eta.d != xi.d:
        raise DomainError("dimension mismatch between ideal points")
    perm = _shared_flat_permutation(eta, xi)
    if perm is not None:
        u2 = np.zeros(eta.d)
        u2[perm] = xi.w
        return float(-KAPPA ** 2 * np.dot(eta.w, u2))
    logger.debug("ideal points share no standard flat; using the ray limit")
    # the difference quotient cancels the bounded offset of b along the ray
    half = horizon / 2.0
    return (_ray_busemann(eta, xi, horizon) - _ray_busemann(eta, xi, half)) / half
