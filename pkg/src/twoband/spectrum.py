"""Structured eigenvalues of two-band matrices.

Each coprime block is brought to cyclic form. Its p-th power is block
diagonal with blocks ``D_j = C_j C_{j+1} ... C_{j+p-1}``, so the nonzero
eigenvalues of the block are the p-th roots of the nonzero eigenvalues of
any single ``D_j``, repeated on all ``p`` rays. Zeros make up the rest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .band import BandMatrix, Mode, period_info
from .cyclic import CyclicDecomposition, extract_cyclic
from .errors import InconsistentCounts, NegativeOmega, ShapeMismatch
from .oracle import (
    SNAP_TOL,
    ZERO_TOL,
    canonical_order,
    dense_eigenvalues,
    real_distinct_eigenvalues,
    zero_threshold,
)
from .split import split


@dataclass(frozen=True)
class Ray:
    j: int
    phase: float
    radii: tuple[float, ...]


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    """Spectrum of a two-band matrix.

    ``rays[j].radii`` lists the moduli of the eigenvalues on ray ``j``,
    largest first. Ray ``j`` is the half-line at angle ``2*pi*j/p``. For
    complex entries the eigenvalues sit off these half-lines, each rotated
    by the argument of its principal root, and ``radii`` still lists their
    moduli. ``eigenvalues`` is the flat list of all ``n`` values, zeros
    included.
    """

    p: int
    g: int
    zero_multiplicity: int
    rays: tuple[Ray, ...]
    eigenvalues: np.ndarray
    source: str = "structured"

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "g": self.g,
            "zero_multiplicity": self.zero_multiplicity,
            "rays": [{"j": r.j, "phase": r.phase, "radii": list(r.radii)} for r in self.rays],
            "eigenvalues": [[float(z.real), float(z.imag)] for z in self.eigenvalues],
            "source": self.source,
        }


@dataclass(frozen=True)
class CountPrediction:
    zero_multiplicity: int
    nonzero_per_ray: int
    per_t_counts: tuple[int, ...]  # number of s values for t = 1..g


def block_product(dec: CyclicDecomposition, j: int) -> np.ndarray:
    """``D_j``, the cyclic product of all ``p`` blocks starting at ``C_j``."""
    factors = [dec.block(i).to_dense() for i in range(j, j + dec.p)]
    for left, right in zip(factors, factors[1:] + factors[:1]):
        if left.shape[1] != right.shape[0]:
            raise ShapeMismatch(f"cannot chain blocks of shapes {left.shape} and {right.shape}")
    return reduce(np.matmul, factors)


def base_index(dec: CyclicDecomposition) -> int:
    """Smallest ``j`` whose ``D_j`` has the minimal order ``m``."""
    sizes = dec.index_data.sizes
    return sizes.index(min(sizes)) + 1


def predicted_counts(n: int, b: int, k: int) -> CountPrediction:
    g = math.gcd(b, k)
    p = (b + k) // g
    per_t = tuple(((n - t) // g + 1) // p for t in range(1, g + 1))
    fl = n // g
    zeros = g * (fl % p) + (n % g) * ((fl + 1) % p - fl % p)
    if p * sum(per_t) + zeros != n:
        raise InconsistentCounts(f"counts for n={n}, b={b}, k={k} do not add up")
    return CountPrediction(zeros, sum(per_t), per_t)


def _block_roots(block: BandMatrix, p: int, zero_tol: float) -> np.ndarray:
    """Principal p-th roots of the nonzero eigenvalues of one block's ``D_j``."""
    if block.n < p:
        return np.empty(0)
    dec = extract_cyclic(block)
    D = block_product(dec, base_index(dec))
    if block.mode is Mode.POSITIVE:
        try:
            omegas = real_distinct_eigenvalues(D)
        except NegativeOmega as exc:
            raise NegativeOmega(f"D_j of a positive block: {exc}") from exc
        return omegas ** (1.0 / p)
    w = dense_eigenvalues(D)
    w = w[np.abs(w) >= zero_threshold(w, zero_tol)]
    if block.mode is Mode.NONNEGATIVE:
        # totally nonnegative D_j: the spectrum is real and nonnegative
        real = np.abs(w.imag) <= SNAP_TOL * (1.0 + np.abs(w))
        w = np.where(real, np.abs(w.real), w)
    roots = np.power(w.astype(complex), 1.0 / p)
    return roots[np.argsort(-np.abs(roots), kind="stable")]


def structured_eigenvalues(bm: BandMatrix, zero_tol: float = ZERO_TOL) -> SpectrumReport:
    info = period_info(bm)
    p = info.p
    roots = [_block_roots(block, p, zero_tol) for block in split(bm).blocks]
    roots = np.concatenate(roots) if roots else np.empty(0)
    zero_mult = bm.n - p * roots.size
    if bm.mode is Mode.POSITIVE:
        pred = predicted_counts(bm.n, bm.b, bm.k)
        if pred.zero_multiplicity != zero_mult:
            raise InconsistentCounts(
                f"structured zero count {zero_mult} != predicted {pred.zero_multiplicity}"
            )
    radii = tuple(sorted((float(r) for r in np.abs(roots)), reverse=True))
    rays = tuple(Ray(j, 2 * math.pi * j / p, radii) for j in range(p))
    phases = np.exp(2j * np.pi * np.arange(p) / p)
    values = np.concatenate([np.outer(roots, phases).ravel(), np.zeros(zero_mult, dtype=complex)])
    return SpectrumReport(p, info.g, zero_mult, rays, canonical_order(values.astype(complex)))
