"""Superdiagonal block (cyclic) form of a coprime two-band matrix.

With ``gcd(b, k) = 1`` and ``p = b + k``, index ``s`` is placed in class
``i`` when ``s`` is congruent to ``gamma_i = (i*k mod p) + 1`` mod ``p``.
Consecutive class representatives differ by ``+k`` or ``-b``, so every
nonzero of ``A`` connects class ``i - 1`` to class ``i`` (mod ``p``).
Ordering rows and columns class by class therefore gives the block-cyclic
layout

    [ 0  C_1  0  ...  0      ]
    [ 0  0   C_2 ...  0      ]
    [             ...  C_p-1 ]
    [ C_p 0   0  ...  0      ]

and each ``C_i`` is bidiagonal. The blocks are read straight from the band
vectors. The test suite checks them against the conjugated dense matrix.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .band import BandMatrix, Mode
from .errors import EmptyBand, NotCoprime
from .split import Permutation


class Orientation(str, enum.Enum):
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class CyclicIndexData:
    n: int
    b: int
    k: int
    p: int
    gammas: tuple[int, ...]
    zs: tuple[int, ...]
    sizes: tuple[int, ...]
    partials: tuple[int, ...]  # N_i = n_0 + ... + n_i

    @property
    def m(self) -> int:
        return self.n // self.p

    def offset(self, i: int) -> int:
        """Position of class ``i`` in the permuted order (``N_{i-1}``)."""
        return self.partials[i - 1] if i > 0 else 0


@dataclass(frozen=True, eq=False)
class BidiagonalBlock:
    """Rectangular bidiagonal block.

    ``main[t]`` sits at ``(t, t)``; ``off[t]`` at ``(t + 1, t)`` for a lower
    block and ``(t, t + 1)`` for an upper one.
    """

    rows: int
    cols: int
    orientation: Orientation
    main: np.ndarray
    off: np.ndarray

    def to_dense(self) -> np.ndarray:
        dtype = np.result_type(self.main, self.off, float)
        X = np.zeros((self.rows, self.cols), dtype=dtype)
        t = np.arange(len(self.main))
        X[t, t] = self.main
        t = np.arange(len(self.off))
        if self.orientation is Orientation.LOWER:
            X[t + 1, t] = self.off
        else:
            X[t, t + 1] = self.off
        return X

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols


@dataclass(frozen=True)
class CyclicDecomposition:
    index_data: CyclicIndexData
    perm: Permutation
    blocks: tuple[BidiagonalBlock, ...]  # C_1 .. C_p
    mode: Mode = Mode.POSITIVE

    @property
    def p(self) -> int:
        return self.index_data.p

    def block(self, i: int) -> BidiagonalBlock:
        """``C_i`` with the label taken cyclically, so ``block(p + 1)`` is ``C_1``."""
        return self.blocks[(i - 1) % self.p]

    def to_dense(self) -> np.ndarray:
        """The full block-cyclic matrix (equal to ``P A P^T``)."""
        idx = self.index_data
        dtype = np.result_type(*(blk.main for blk in self.blocks), float)
        C = np.zeros((idx.n, idx.n), dtype=dtype)
        for i in range(1, self.p + 1):
            r0 = idx.offset(i - 1)
            c0 = idx.offset(i % self.p)
            blk = self.block(i)
            C[r0:r0 + blk.rows, c0:c0 + blk.cols] = blk.to_dense()
        return C


def cyclic_index_data(n: int, b: int, k: int) -> CyclicIndexData:
    if math.gcd(b, k) != 1:
        raise NotCoprime(f"offsets b={b}, k={k} share the factor {math.gcd(b, k)}")
    p = b + k
    gammas = tuple((i * k) % p + 1 for i in range(p))
    zs = []
    for i, gamma in enumerate(gammas):
        z, rem = divmod(gamma - (i * k + 1), p)
        assert rem == 0
        zs.append(z)
    sizes = tuple((n - gamma) // p + 1 for gamma in gammas)
    partials = tuple(int(x) for x in np.cumsum(sizes))
    return CyclicIndexData(n, b, k, p, gammas, tuple(zs), sizes, partials)


def cyclic_permutation(idx: CyclicIndexData) -> Permutation:
    sigma = []
    for gamma, size in zip(idx.gammas, idx.sizes):
        sigma.extend(gamma + (j - 1) * idx.p for j in range(1, size + 1))
    return Permutation(tuple(sigma))


def block_orientation(idx: CyclicIndexData, i: int) -> Orientation:
    """Orientation of ``C_i``, ``1 <= i <= p``."""
    if i == idx.p:
        return Orientation.UPPER
    return Orientation.UPPER if idx.zs[i - 1] - idx.zs[i] == 1 else Orientation.LOWER


def extract_cyclic(bm: BandMatrix) -> CyclicDecomposition:
    if bm.lower.size == 0 or bm.upper.size == 0:
        raise EmptyBand(f"n={bm.n} leaves a band empty for b={bm.b}, k={bm.k}")
    idx = cyclic_index_data(bm.n, bm.b, bm.k)
    p = idx.p
    blocks = []
    for i in range(1, p + 1):
        src, dst = i - 1, i % p
        rows, cols = idx.sizes[src], idx.sizes[dst]
        orient = block_orientation(idx, i)
        # 0-based original indices of the row and column classes
        r = idx.gammas[src] - 1 + p * np.arange(rows)
        c = idx.gammas[dst] - 1 + p * np.arange(cols)
        d = min(rows, cols)
        main = [bm.value(r[t], c[t]) for t in range(d)]
        if orient is Orientation.LOWER:
            off = [bm.value(r[t + 1], c[t]) for t in range(min(cols, rows - 1))]
        else:
            off = [bm.value(r[t], c[t + 1]) for t in range(min(rows, cols - 1))]
        blocks.append(
            BidiagonalBlock(
                rows,
                cols,
                orient,
                np.asarray(main, dtype=bm.dtype),
                np.asarray(off, dtype=bm.dtype),
            )
        )
    return CyclicDecomposition(idx, cyclic_permutation(idx), tuple(blocks), bm.mode)
