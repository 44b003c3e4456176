"""
Total positivity of unipotent matrices by exhaustive minor enumeration.
"""

from functools import lru_cache
from itertools import combinations
from typing import List, Tuple

import numpy as np

from ..shared.errors import UnsupportedSizeError
from .flag import Check, Unipotent

MAX_ENUMERATION_DIM = 6

Minor = Tuple[Tuple[int, ...], Tuple[int, ...]]


@lru_cache(maxsize=None)
def admissible_minors(d: int) -> List[Minor]:
    """Minors of a unitriangular matrix that are not forced to vanish.

    Rows i_1 < … < i_k and columns j_1 < … < j_k qualify when i_t ≤ j_t for
    every t. Indices are 0-based.
    """
    if d > MAX_ENUMERATION_DIM:
        raise UnsupportedSizeError(f"minor enumeration supports d ≤ {MAX_ENUMERATION_DIM}, got {d}")
    minors = []
    for k in range(1, d + 1):
        for rows in combinations(range(d), k):
            for cols in combinations(range(d), k):
                if all(i <= j for i, j in zip(rows, cols)) and rows != cols:
                    minors.append((rows, cols))
    return minors


def minor_values(n: np.ndarray) -> np.ndarray:
    """Admissible minors of a stack (..., d, d), in enumeration order."""
    n = np.asarray(n, dtype=float)
    d = n.shape[-1]
    minors = admissible_minors(d)
    out = np.empty(n.shape[:-2] + (len(minors),))
    for idx, (rows, cols) in enumerate(minors):
        out[..., idx] = np.linalg.det(n[..., list(rows), :][..., :, list(cols)])
    return out


def totally_positive(n: Unipotent, tol: float = 0.0) -> Check:
    """Every admissible minor is > tol; witness is (rows, cols) of the least one."""
    values = minor_values(n.n)
    idx = int(np.argmin(values))
    rows, cols = admissible_minors(n.d)[idx]
    return Check(bool(values[idx] > tol), float(values[idx]), (rows, cols))


def positivity_margin_array(n: np.ndarray) -> np.ndarray:
    """Least admissible minor of each matrix in a stack."""
    return np.min(minor_values(n), axis=-1)
