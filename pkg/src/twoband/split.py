"""Reduction to coprime band offsets.

When ``g = gcd(b, k) > 1`` the rows and columns of a two-band matrix fall
into ``g`` residue classes mod ``g`` that never interact. Listing the
classes one after another gives a block-diagonal matrix. Each block is
again a two-band matrix, now with offsets ``b/g`` and ``k/g``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .band import BandMatrix
from .errors import DimensionMismatch, InvalidInput


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{1..n}`` stored as ``sigma = (sigma_1, ..., sigma_n)``.

    Conjugating ``M`` gives ``B[i, j] = M[sigma_i, sigma_j]``.
    """

    sigma: tuple[int, ...]

    def __post_init__(self):
        sigma = tuple(int(s) for s in self.sigma)
        if sorted(sigma) != list(range(1, len(sigma) + 1)):
            raise InvalidInput(f"not a permutation of 1..{len(sigma)}: {sigma}")
        object.__setattr__(self, "sigma", sigma)

    def __len__(self):
        return len(self.sigma)

    @property
    def index(self) -> np.ndarray:
        """0-based positions for array indexing."""
        return np.asarray(self.sigma, dtype=int) - 1

    def inverse(self) -> "Permutation":
        inv = np.empty(len(self), dtype=int)
        inv[self.index] = np.arange(1, len(self) + 1)
        return Permutation(tuple(inv))

    def matrix(self) -> np.ndarray:
        """Permutation matrix ``P`` with ``P[j, sigma_j] = 1``."""
        P = np.zeros((len(self), len(self)))
        P[np.arange(len(self)), self.index] = 1.0
        return P

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))


def conjugate(perm: Permutation, M) -> np.ndarray:
    """``P M P^T``, i.e. ``result[i, j] = M[sigma_i, sigma_j]``."""
    M = np.asarray(M)
    if M.ndim != 2 or M.shape != (len(perm), len(perm)):
        raise DimensionMismatch(f"permutation of size {len(perm)} cannot act on shape {M.shape}")
    idx = perm.index
    return M[np.ix_(idx, idx)]


@dataclass(frozen=True)
class DirectSumDecomposition:
    """Block-diagonal split of a two-band matrix.

    ``block_sizes`` has one entry per residue class (``g`` entries, trailing
    zeros when ``n < g``); ``blocks`` holds the nonempty ones in the same
    order.
    """

    perm: Permutation
    block_sizes: tuple[int, ...]
    blocks: tuple[BandMatrix, ...]

    @property
    def g(self) -> int:
        return len(self.block_sizes)

    def block_slices(self) -> list[slice]:
        ends = np.cumsum((0,) + self.block_sizes)
        return [slice(int(a), int(b)) for a, b in zip(ends[:-1], ends[1:])]


def gcd_block_sizes(n: int, g: int) -> tuple[int, ...]:
    return tuple((n - i) // g + 1 for i in range(1, g + 1))


def gcd_permutation(n: int, b: int, k: int) -> Permutation:
    g = math.gcd(b, k)
    sigma = []
    for i, size in enumerate(gcd_block_sizes(n, g), start=1):
        sigma.extend(i + (j - 1) * g for j in range(1, size + 1))
    return Permutation(tuple(sigma))


def split(bm: BandMatrix) -> DirectSumDecomposition:
    g = math.gcd(bm.b, bm.k)
    sizes = gcd_block_sizes(bm.n, g)
    perm = gcd_permutation(bm.n, bm.b, bm.k)
    if g == 1:
        return DirectSumDecomposition(perm, sizes, (bm,))
    nb, nk = bm.b // g, bm.k // g
    blocks = tuple(
        BandMatrix(size, nb, nk, bm.lower[i::g], bm.upper[i::g], bm.mode)
        for i, size in enumerate(sizes)
        if size > 0
    )
    return DirectSumDecomposition(perm, sizes, blocks)
