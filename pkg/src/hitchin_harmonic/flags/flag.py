"""
Full flags of ℝ^d and unipotent matrices.

A flag is stored through an adapted basis: its k-th subspace is spanned by
the first k columns. σ₀ has basis (e_d, e_{d−1}, …, e_1) and σ_∞ has basis
(e_1, …, e_d); upper unitriangular matrices fix σ_∞, and on ℝP¹ the point t
corresponds to n(t)·σ₀.
"""

import math
import logging
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np
from scipy.linalg import null_space

from ..shared.errors import DomainError
from ..spd.busemann import canonical_qr

# Configure logging
logger = logging.getLogger(__name__)

FLAG_DET_TOL = 1e-12


class Check(NamedTuple):
    """Outcome of a predicate together with its quantitative margin."""
    ok: bool
    margin: float
    witness: Optional[Tuple] = None


@dataclass(frozen=True, eq=False)
class Flag:
    """Full flag given by an invertible adapted basis."""

    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=float)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise DomainError(f"flag basis must be square, got shape {b.shape}")
        norms = np.linalg.norm(b, axis=0)
        if np.any(norms == 0) or abs(np.linalg.det(b / norms)) <= FLAG_DET_TOL:
            raise DomainError("flag basis is not invertible")
        object.__setattr__(self, 'basis', b)

    @property
    def d(self) -> int:
        return self.basis.shape[0]

    @property
    def canonical(self) -> np.ndarray:
        """Orthonormal adapted basis with positive pivots."""
        return canonical_qr(self.basis)

    def subspace(self, k: int) -> np.ndarray:
        """Orthonormal basis (columns) of the k-dimensional subspace."""
        return self.canonical[:, :k]

    def act(self, g: np.ndarray) -> 'Flag':
        return Flag(np.asarray(g, dtype=float) @ self.basis)

    def projector(self, k: int) -> np.ndarray:
        q = self.subspace(k)
        return q @ q.T


def sigma0(d: int) -> Flag:
    """Standard descending flag."""
    return Flag(np.eye(d)[:, ::-1])


def sigma_inf(d: int) -> Flag:
    """Standard ascending flag."""
    return Flag(np.eye(d))


def nilpotent_exp(nil: np.ndarray) -> np.ndarray:
    """exp of a nilpotent matrix as its finite power series."""
    d = nil.shape[-1]
    result = np.broadcast_to(np.eye(d), nil.shape).copy()
    term = result.copy()
    for j in range(1, d):
        term = term @ nil / j
        result = result + term
    return result


def superdiagonal_matrix(c: np.ndarray) -> np.ndarray:
    """Σ c_i E_{i,i+1} for a (..., d−1) array c."""
    c = np.asarray(c, dtype=float)
    d = c.shape[-1] + 1
    out = np.zeros(c.shape[:-1] + (d, d))
    idx = np.arange(d - 1)
    out[..., idx, idx + 1] = c
    return out


@dataclass(frozen=True, eq=False)
class Unipotent:
    """Upper unitriangular matrix."""

    n: np.ndarray

    def __post_init__(self):
        n = np.asarray(self.n, dtype=float)
        d = n.shape[0]
        if n.shape != (d, d):
            raise DomainError("unipotent matrix must be square")
        if np.any(np.diag(n) != 1.0) or np.any(np.tril(n, -1) != 0.0):
            raise DomainError("matrix is not upper unitriangular")
        object.__setattr__(self, 'n', n)

    @property
    def d(self) -> int:
        return self.n.shape[0]

    @classmethod
    def clean(cls, m: np.ndarray) -> 'Unipotent':
        """Force exact unit diagonal and zero lower part on a computed matrix."""
        m = np.triu(np.asarray(m, dtype=float), 1)
        return cls(m + np.eye(m.shape[0]))

    @classmethod
    def from_superdiagonal(cls, c) -> 'Unipotent':
        """exp(Σ c_i E_{i,i+1})."""
        return cls.clean(nilpotent_exp(superdiagonal_matrix(c)))

    def inverse(self) -> 'Unipotent':
        return Unipotent.clean(np.linalg.inv(self.n))

    def superdiagonal(self) -> np.ndarray:
        return np.diag(self.n, 1).copy()

    def flag(self) -> Flag:
        """n·σ₀."""
        return Flag(self.n[:, ::-1])


def transverse(f1: Flag, f2: Flag, tol: float = FLAG_DET_TOL) -> Check:
    """Transversality of two flags; margin is the least |det| of the pairings."""
    if f1.d != f2.d:
        raise DomainError("flags of different dimension")
    q1, q2 = f1.canonical, f2.canonical
    d = f1.d
    margin, worst = math.inf, None
    for k in range(1, d):
        value = abs(np.linalg.det(np.hstack([q1[:, :k], q2[:, :d - k]])))
        if value < margin:
            margin, worst = value, k
    return Check(margin > tol, float(margin), (worst,))


def flag_distance(f1: Flag, f2: Flag) -> float:
    """Largest spectral gap between the subspace projectors."""
    return max(float(np.linalg.norm(f1.projector(k) - f2.projector(k), 2)) for k in range(1, f1.d))


def intersection_line(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Spanning vector of span(a) ∩ span(b), assumed one-dimensional."""
    ns = null_space(np.hstack([a, -b]))
    if ns.shape[1] == 0:
        # fall back to the least singular direction
        _, _, vt = np.linalg.svd(np.hstack([a, -b]))
        ns = vt[-1:].T
    x = ns[: a.shape[1], -1]
    v = a @ x
    return v / np.linalg.norm(v)
