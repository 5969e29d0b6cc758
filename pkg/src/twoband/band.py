"""Two-band matrices: the input type, its period invariants and dense form.

A two-band matrix of order ``n`` has nonzeros only at ``(b + j, j)`` and
``(i, k + i)``. With 0-based array positions that is ``lower[t]`` at
``(b + t, t)`` and ``upper[t]`` at ``(t, k + t)``; no other index shifting
happens anywhere in the package.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadOffset, LengthMismatch, NotSquare, SignViolation


class Mode(str, enum.Enum):
    POSITIVE = "positive"
    NONNEGATIVE = "nonnegative"
    COMPLEX = "complex"


def _frozen(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class BandMatrix:
    """Validated two-band matrix. Band vectors are stored read-only."""

    n: int
    b: int
    k: int
    lower: np.ndarray
    upper: np.ndarray
    mode: Mode = Mode.POSITIVE
    _dtype: type = field(init=False, repr=False, default=float)

    def __post_init__(self):
        mode = Mode(self.mode)
        object.__setattr__(self, "mode", mode)
        for name in ("n", "b", "k"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v or v < 1:
                raise BadOffset(f"{name} must be a positive integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        dtype = complex if mode is Mode.COMPLEX else float
        object.__setattr__(self, "_dtype", dtype)
        for name, offset in (("lower", self.b), ("upper", self.k)):
            raw = np.asarray(getattr(self, name))
            want = max(0, self.n - offset)
            if raw.size != want:
                raise LengthMismatch(f"{name} band needs {want} entries, got {raw.size}")
            if not np.all(np.isfinite(raw)):
                raise SignViolation(f"{name} band has non-finite entries")
            if mode is not Mode.COMPLEX:
                if np.iscomplexobj(raw) and np.any(np.imag(raw) != 0):
                    raise SignViolation(f"{name} band must be real in {mode.value} mode")
                raw = np.real(raw)
                if mode is Mode.POSITIVE and np.any(raw <= 0):
                    raise SignViolation(f"{name} band must be strictly positive")
                if mode is Mode.NONNEGATIVE and np.any(raw < 0):
                    raise SignViolation(f"{name} band must be nonnegative")
            object.__setattr__(self, name, _frozen(raw, dtype))

    @property
    def dtype(self):
        return self._dtype

    def value(self, row: int, col: int):
        """Entry at 0-based ``(row, col)``; zero off the two bands."""
        d = row - col
        if d == self.b:
            return self.lower[col]
        if d == -self.k:
            return self.upper[row]
        return self._dtype(0)

    def band_entries(self) -> np.ndarray:
        return np.concatenate([self.lower, self.upper])

    def __eq__(self, other):
        if not isinstance(other, BandMatrix):
            return NotImplemented
        return (
            (self.n, self.b, self.k, self.mode) == (other.n, other.b, other.k, other.mode)
            and np.array_equal(self.lower, other.lower)
            and np.array_equal(self.upper, other.upper)
        )

    __hash__ = None


def new_band_matrix(n, b, k, lower, upper, mode=Mode.POSITIVE) -> BandMatrix:
    return BandMatrix(n, b, k, lower, upper, Mode(mode))


@dataclass(frozen=True)
class PeriodInfo:
    """Period data. For ``g > 1``, ``m`` and ``q`` describe the smallest
    coprime block, of order ``n // g``."""

    g: int
    p: int
    m: int
    q: int


def period_info(bm: BandMatrix) -> PeriodInfo:
    return period_of(bm.n, bm.b, bm.k)


def period_of(n: int, b: int, k: int) -> PeriodInfo:
    g = math.gcd(b, k)
    p = (b + k) // g
    m, q = divmod(n // g, p)
    return PeriodInfo(g, p, m, q)


def to_dense(bm: BandMatrix) -> np.ndarray:
    A = np.zeros((bm.n, bm.n), dtype=bm.dtype)
    t = np.arange(bm.lower.size)
    A[bm.b + t, t] = bm.lower
    t = np.arange(bm.upper.size)
    A[t, bm.k + t] = bm.upper
    return A


def zero_pattern_matches(M, offsets) -> bool:
    """True iff every nonzero of ``M`` sits on a diagonal ``i - j`` in ``offsets``."""
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {M.shape}")
    rows, cols = np.nonzero(M)
    return bool(np.isin(rows - cols, list(offsets)).all())
