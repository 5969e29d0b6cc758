"""Dense eigenvalue oracle and spectrum comparison.

The solver is deliberately generic: it knows nothing about band structure
and is used to check the structured computations independently.

Pipeline for :func:`dense_eigenvalues`:

1. diagonal balancing (radix-2 Parlett-Reinsch),
2. rank-revealing deflation of the nilpotent part (Kublanovskaya staircase),
3. Householder reduction to upper Hessenberg form,
4. complex single-shift QR with Wilkinson shifts and exceptional shifts.

Step 2 matters for this problem class. Two-band matrices usually have a
defective zero eigenvalue, and plain QR can only resolve a Jordan block of
size ``s`` to roughly ``eps ** (1 / s)``. Peeling off null spaces with
unitary similarities returns those zeros exactly and keeps the procedure
backward stable. The perturbation is bounded by the rank tolerance
``n * eps * ||A||``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DistinctnessViolation,
    NegativeOmega,
    NoConvergence,
    NotSquare,
    RealityViolation,
    SizeMismatch,
    TooLarge,
)

EPS = np.finfo(float).eps
DEFAULT_MAX_DIM = 128
ZERO_TOL = 1e-5
SNAP_TOL = 1e-7
GAP_TOL = 1e-12
MAX_SWEEPS_PER_EIGENVALUE = 30


@dataclass(frozen=True)
class MatchReport:
    matched: bool
    pairing: tuple[int, ...]
    max_residual: float


def _square(M) -> np.ndarray:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {M.shape}")
    return M


def balance(A: np.ndarray, max_sweeps: int = 100, max_log2_scale: int = 40) -> np.ndarray:
    """Return a diagonally similar copy of ``A`` with balanced row/column norms.

    Scaling factors are powers of two, so the similarity is exact. Each
    cumulative factor stays within ``2**(+-max_log2_scale)``. Reducible
    matrices would otherwise drive the scaling off to infinity.
    """
    A = np.array(A, dtype=complex)
    n = A.shape[0]
    log_scale = np.zeros(n, dtype=int)
    for _ in range(max_sweeps):
        done = True
        for i in range(n):
            c = np.sum(np.abs(A[:, i])) - abs(A[i, i])
            r = np.sum(np.abs(A[i, :])) - abs(A[i, i])
            if c == 0.0 or r == 0.0:
                continue
            s = c + r
            e = 0
            while c < r / 2.0 and log_scale[i] + e < max_log2_scale:
                c, r, e = c * 2.0, r / 2.0, e + 1
            while c >= r * 2.0 and log_scale[i] + e > -max_log2_scale:
                c, r, e = c / 2.0, r * 2.0, e - 1
            if e and c + r < 0.95 * s:
                done = False
                log_scale[i] += e
                f = math.ldexp(1.0, e)
                A[:, i] *= f
                A[i, :] /= f
        if done:
            break
    return A


def deflate_nilpotent(A: np.ndarray, tol: float) -> tuple[int, np.ndarray]:
    """Split off the zero eigenvalues of ``A`` by repeated null-space deflation.

    Returns the number of zero eigenvalues found and a square matrix whose
    eigenvalues are the remaining ones. Singular values ``<= tol`` count as
    zero.
    """
    zeros = 0
    B = np.asarray(A, dtype=complex)
    while B.shape[0] > 0:
        _, s, vh = np.linalg.svd(B)
        null = int(np.count_nonzero(s <= tol))
        if null == 0:
            break
        zeros += null
        rank = B.shape[0] - null
        # range part of the right singular basis; B @ V_null ~ 0
        vr = vh[:rank].conj().T
        B = vr.conj().T @ B @ vr
    return zeros, B


def hessenberg(A: np.ndarray) -> np.ndarray:
    """Unitary reduction to upper Hessenberg form with Householder reflectors."""
    H = np.array(A, dtype=complex)
    n = H.shape[0]
    for k in range(n - 2):
        x = H[k + 1:, k]
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        H[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ H[k + 1:, k:])
        H[:, k + 1:] -= 2.0 * np.outer(H[:, k + 1:] @ v, v.conj())
        H[k + 2:, k] = 0.0
    return H


def _givens(a: complex, b: complex) -> tuple[float, complex]:
    # [[c, s], [-conj(s), c]] @ [a, b] = [r, 0]
    if b == 0:
        return 1.0, 0j
    if a == 0:
        return 0.0, 1 + 0j
    aa = abs(a)
    r = math.hypot(aa, abs(b))
    return aa / r, (a / aa) * b.conjugate() / r


def _wilkinson(a: complex, b: complex, c: complex, d: complex) -> complex:
    half = (a - d) / 2
    disc = np.sqrt(half * half + b * c)
    mu1 = (a + d) / 2 + disc
    mu2 = (a + d) / 2 - disc
    return mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2


def hessenberg_qr(H: np.ndarray, max_sweeps: int = MAX_SWEEPS_PER_EIGENVALUE) -> np.ndarray:
    """Eigenvalues of an upper Hessenberg matrix by shifted QR (``H`` is overwritten)."""
    n = H.shape[0]
    ev = np.empty(n, dtype=complex)
    if n == 0:
        return ev
    hnorm = np.abs(H).sum() or 1.0
    budget = max_sweeps * n
    sweeps = 0
    its = 0
    hi = n - 1
    while hi >= 0:
        lo = hi
        while lo > 0:
            s = abs(H[lo - 1, lo - 1]) + abs(H[lo, lo])
            if s == 0.0:
                s = hnorm
            if abs(H[lo, lo - 1]) <= EPS * s:
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            ev[hi] = H[hi, hi]
            hi -= 1
            its = 0
            continue
        sweeps += 1
        its += 1
        if sweeps > budget:
            raise NoConvergence(f"QR iteration did not converge after {budget} sweeps")
        if its % 10 == 0:
            # fixed pseudo-random direction keeps runs bit-identical
            mu = H[hi, hi] + 0.75 * abs(H[hi, hi - 1]) * complex(math.cos(its), math.sin(its))
        else:
            mu = _wilkinson(H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi])
        x, y = H[lo, lo] - mu, H[lo + 1, lo]
        for i in range(lo, hi):
            if i > lo:
                x, y = H[i, i - 1], H[i + 1, i - 1]
            c, s = _givens(complex(x), complex(y))
            j0 = max(lo, i - 1)
            r1 = H[i, j0:hi + 1].copy()
            r2 = H[i + 1, j0:hi + 1].copy()
            H[i, j0:hi + 1] = c * r1 + s * r2
            H[i + 1, j0:hi + 1] = -s.conjugate() * r1 + c * r2
            if i > lo:
                H[i + 1, i - 1] = 0.0
            k1 = min(i + 2, hi) + 1
            c1 = H[lo:k1, i].copy()
            c2 = H[lo:k1, i + 1].copy()
            H[lo:k1, i] = c * c1 + s.conjugate() * c2
            H[lo:k1, i + 1] = -s * c1 + c * c2
    return ev


def canonical_order(values: np.ndarray) -> np.ndarray:
    ang = np.mod(np.angle(values), 2 * np.pi)
    return values[np.lexsort((ang, -np.abs(values)))]


def dense_eigenvalues(M, max_dim: int = DEFAULT_MAX_DIM) -> np.ndarray:
    """All eigenvalues of a dense square matrix.

    Parameters
    ----------
    M : (n, n) array_like
        Real or complex matrix.
    max_dim : int
        Size guard; larger inputs raise :class:`TooLarge`.

    Returns
    -------
    (n,) complex ndarray
        Eigenvalues ordered by decreasing modulus, then by argument in
        ``[0, 2*pi)``. Zeros found by nilpotent deflation are exact.
    """
    M = _square(M)
    n = M.shape[0]
    if n > max_dim:
        raise TooLarge(f"dimension {n} exceeds oracle cap {max_dim}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    if n == 0:
        return np.empty(0, dtype=complex)
    A = balance(M)
    norm = np.linalg.norm(A, 2)
    if norm == 0.0:
        return np.zeros(n, dtype=complex)
    zeros, B = deflate_nilpotent(A, n * EPS * norm)
    ev = hessenberg_qr(hessenberg(B))
    return canonical_order(np.concatenate([ev, np.zeros(zeros, dtype=complex)]))


def zero_threshold(values: np.ndarray, zero_tol: float = ZERO_TOL) -> float:
    """Absolute cutoff below which a computed eigenvalue is classed as zero."""
    rho = float(np.max(np.abs(values))) if len(values) else 0.0
    return zero_tol * max(rho, 1.0)


def count_zeros(values: np.ndarray, zero_tol: float = ZERO_TOL) -> int:
    values = np.asarray(values)
    return int(np.count_nonzero(np.abs(values) < zero_threshold(values, zero_tol)))


def real_distinct_eigenvalues(
    M,
    snap_tol: float = SNAP_TOL,
    gap_tol: float = GAP_TOL,
    max_dim: int = DEFAULT_MAX_DIM,
) -> np.ndarray:
    """Eigenvalues of a matrix known to have distinct positive real spectrum.

    Imaginary parts up to ``snap_tol * (1 + |lambda|)`` are treated as
    rounding and dropped. Returns a strictly decreasing float array.
    """
    ev = dense_eigenvalues(M, max_dim=max_dim)
    bad = np.abs(ev.imag) > snap_tol * (1.0 + np.abs(ev))
    if np.any(bad):
        raise RealityViolation(f"eigenvalue {ev[bad][0]} is not real within tolerance")
    vals = np.sort(ev.real)[::-1]
    if len(vals) and vals[-1] <= 0.0:
        raise NegativeOmega(f"eigenvalue {vals[-1]} is not positive")
    if len(vals) > 1:
        gaps = -np.diff(vals)
        if np.any(gaps <= gap_tol * vals[0]):
            raise DistinctnessViolation("eigenvalues are not pairwise distinct")
    return vals


def spectra_match(S1, S2, tol: float) -> MatchReport:
    """Compare two eigenvalue multisets by greedy nearest-neighbour pairing.

    Both sets are sorted by (modulus, argument); each element of ``S1`` in
    that order takes the nearest unused element of ``S2``. ``pairing[i]`` is
    the index into ``S2`` paired with ``S1[i]``.
    """
    a = np.asarray(S1, dtype=complex).ravel()
    b = np.asarray(S2, dtype=complex).ravel()
    if a.shape != b.shape:
        raise SizeMismatch(f"multisets have sizes {a.size} and {b.size}")
    order = np.lexsort((np.mod(np.angle(a), 2 * np.pi), np.abs(a)))
    free = np.ones(b.size, dtype=bool)
    pairing = np.empty(a.size, dtype=int)
    residual = 0.0
    for i in order:
        dist = np.where(free, np.abs(b - a[i]), np.inf)
        j = int(np.argmin(dist))
        free[j] = False
        pairing[i] = j
        residual = max(residual, float(dist[j]))
    return MatchReport(residual <= tol, tuple(int(j) for j in pairing), residual)


def rotation_invariance(S, p: int, tol: float) -> bool:
    """True if the multiset ``S`` is unchanged by rotation through ``2*pi/p``."""
    S = np.asarray(S, dtype=complex)
    return spectra_match(S, S * np.exp(2j * np.pi / p), tol).matched
