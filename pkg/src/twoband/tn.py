"""Total nonnegativity, oscillatory checks and Cauchy-Binet minors.

Everything here enumerates minors explicitly, so the cost grows like
``C(2d, d)`` in the dimension ``d``. A size guard (``max_dim``, default 8)
stops runaway enumerations. The properties being certified do not depend
on dimension, so small certificates are enough.

Index subsets are 0-based, strictly increasing tuples of row or column
positions. Enumeration is lexicographic, so the first failure found is
always the same one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .cyclic import CyclicDecomposition
from .errors import InvalidInput, TooLarge

MINOR_TOL = 1e-10
MAX_DIM = 8


@dataclass(frozen=True)
class OscillatoryReport:
    tn_ok: bool
    nonsingular_ok: bool
    det: float
    band_positive_ok: bool
    max_checked_minor_order: int

    @property
    def oscillatory(self) -> bool:
        return self.tn_ok and self.nonsingular_ok and self.band_positive_ok

    def to_dict(self) -> dict:
        return {
            "tn_ok": self.tn_ok,
            "nonsingular_ok": self.nonsingular_ok,
            "det": self.det,
            "band_positive_ok": self.band_positive_ok,
            "max_checked_minor_order": self.max_checked_minor_order,
            "oscillatory": self.oscillatory,
        }


def _guard(M: np.ndarray, max_dim: int) -> None:
    if max(M.shape, default=0) > max_dim:
        raise TooLarge(f"minor enumeration on shape {M.shape} exceeds max_dim={max_dim}")


def _subsets(size: int, r: int) -> list[tuple[int, ...]]:
    return list(combinations(range(size), r))


def _sub_stack(M: np.ndarray, rows, cols) -> np.ndarray:
    ri = np.asarray(rows, dtype=int).reshape(len(rows), 1, -1, 1)
    ci = np.asarray(cols, dtype=int).reshape(1, len(cols), 1, -1)
    return M[ri, ci]


def compound(M, r: int) -> tuple[list, list, np.ndarray]:
    """The ``r``-th compound matrix: all order-``r`` minors of ``M``.

    Returns ``(row_subsets, col_subsets, minors)`` with
    ``minors[a, b] = det(M[row_subsets[a], col_subsets[b]])``.
    """
    M = np.asarray(M)
    rows, cols = _subsets(M.shape[0], r), _subsets(M.shape[1], r)
    if r == 0:
        return rows, cols, np.ones((1, 1))
    if not rows or not cols:
        return rows, cols, np.zeros((len(rows), len(cols)))
    return rows, cols, np.linalg.det(_sub_stack(M, rows, cols))


def find_negative_minor(M, max_order: int | None = None, tol: float = MINOR_TOL,
                        max_dim: int = MAX_DIM):
    """First minor (lexicographic in order, rows, cols) below ``-tol * scale``.

    ``scale`` is the product of the row-wise largest magnitudes of the
    submatrix, a bound on the size of its terms. Returns
    ``(rows, cols, value)`` or ``None``.
    """
    M = np.asarray(M)
    if M.ndim != 2:
        raise InvalidInput("expected a 2-D matrix")
    _guard(M, max_dim)
    if np.iscomplexobj(M):
        if np.any(M.imag != 0):
            raise InvalidInput("total nonnegativity is defined for real matrices only")
        M = M.real
    top = min(M.shape) if max_order is None else min(max_order, *M.shape)
    for r in range(1, top + 1):
        rows, cols, minors = compound(M, r)
        scale = np.abs(_sub_stack(M, rows, cols)).max(axis=3).prod(axis=2)
        bad = np.argwhere(minors < -tol * scale)
        if len(bad):
            a, b = bad[0]
            return rows[a], cols[b], float(minors[a, b])
    return None


def all_minors_nonnegative(M, max_order: int | None = None, tol: float = MINOR_TOL,
                           max_dim: int = MAX_DIM) -> bool:
    return find_negative_minor(M, max_order, tol, max_dim) is None


def oscillatory_check(M, tol: float = MINOR_TOL, max_dim: int = MAX_DIM) -> OscillatoryReport:
    """Test the three oscillatory conditions: totally nonnegative,
    nonsingular, and positive first super- and subdiagonals."""
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InvalidInput(f"expected a square matrix, got shape {M.shape}")
    _guard(M, max_dim)
    n = M.shape[0]
    tn_ok = all_minors_nonnegative(M, tol=tol, max_dim=max_dim)
    if n:
        det = float(np.linalg.det(np.real(M)))
        scale = float(np.abs(M).max(axis=1).prod())
    else:
        det, scale = 1.0, 1.0
    nonsingular_ok = abs(det) > tol * scale
    sup, sub = np.diagonal(M, 1), np.diagonal(M, -1)
    band_ok = bool(np.all(np.isreal(sup)) and np.all(np.isreal(sub))
                   and np.all(np.real(sup) > 0) and np.all(np.real(sub) > 0))
    return OscillatoryReport(bool(tn_ok), bool(nonsingular_ok), det, band_ok, n)


def _factors(dec: CyclicDecomposition, j: int) -> list[np.ndarray]:
    return [dec.block(i).to_dense() for i in range(j, j + dec.p)]


def _check_subset(s, size: int, name: str) -> tuple[int, ...]:
    s = tuple(int(x) for x in s)
    if any(b <= a for a, b in zip(s, s[1:])) or any(x < 0 or x >= size for x in s):
        raise InvalidInput(f"{name}={s} is not an increasing subset of range({size})")
    return s


def cauchy_binet_compound(dec: CyclicDecomposition, j: int, r: int,
                          max_dim: int = MAX_DIM) -> tuple[list, np.ndarray]:
    """All order-``r`` minors of ``D_j`` by chaining the blocks' minors.

    Each entry is the sum, over every chain of intermediate index subsets,
    of the product of the blocks' minors along the chain. Summing one factor
    at a time is a matrix product of compound matrices.
    """
    factors = _factors(dec, j)
    for F in factors:
        _guard(F, max_dim)
    rows, _, acc = compound(factors[0], r)
    for F in factors[1:]:
        acc = acc @ compound(F, r)[2]
    return rows, acc


def cauchy_binet_minor(dec: CyclicDecomposition, j: int, alpha, beta,
                       max_dim: int = MAX_DIM) -> float:
    """``det(D_j[alpha, beta])`` via the chained block-minor expansion."""
    factors = _factors(dec, j)
    for F in factors:
        _guard(F, max_dim)
    size = factors[0].shape[0]
    alpha = _check_subset(alpha, size, "alpha")
    beta = _check_subset(beta, size, "beta")
    if len(alpha) != len(beta):
        raise InvalidInput("alpha and beta must have the same size")
    r = len(alpha)
    if r == 0:
        return 1.0
    # row vector over the subsets theta of the current factor's columns
    cols = _subsets(factors[0].shape[1], r)
    vec = np.array([np.linalg.det(factors[0][np.ix_(alpha, c)]) for c in cols],
                   dtype=factors[0].dtype).reshape(len(cols))
    for F in factors[1:]:
        _, cols, minors = compound(F, r)
        vec = vec @ minors
    value = vec[cols.index(beta)]
    return complex(value) if np.iscomplexobj(value) else float(value)


def leading_chain_term(dec: CyclicDecomposition, j: int) -> float:
    """Product of the leading principal minors of ``C_j, ..., C_{j+p-1}``:
    the chain that keeps every intermediate subset equal to the leading one."""
    factors = _factors(dec, j)
    r = factors[0].shape[0]
    term = 1.0
    for F in factors:
        if min(F.shape) < r:
            return 0.0
        if r:
            term = term * np.linalg.det(F[:r, :r])
    return complex(term) if np.iscomplexobj(term) else float(term)
