import cmath

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twoband.errors import DistinctnessViolation, NegativeOmega, RealityViolation, SizeMismatch, TooLarge
from twoband.oracle import (
    balance,
    count_zeros,
    dense_eigenvalues,
    hessenberg,
    real_distinct_eigenvalues,
    rotation_invariance,
    spectra_match,
)


def test_diagonal():
    ev = dense_eigenvalues(np.diag([1.0, 2.0, 3.0]))
    assert np.allclose(ev, [3, 2, 1], atol=1e-14)


def test_empty_and_zero_matrix():
    assert dense_eigenvalues(np.zeros((0, 0))).size == 0
    assert not dense_eigenvalues(np.zeros((4, 4))).any()


def test_nilpotent_jordan_block_is_exact_zero():
    J = np.eye(10, k=1)
    assert count_zeros(dense_eigenvalues(J)) == 10


def test_size_guard():
    with pytest.raises(TooLarge):
        dense_eigenvalues(np.eye(5), max_dim=4)


def _companion(roots):
    coeffs = np.poly(roots)
    d = len(roots)
    C = np.zeros((d, d), dtype=complex)
    C[0, :] = -coeffs[1:]
    C[1:, :-1] += np.eye(d - 1)
    return C


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_companion_calibration(d, seed):
    rng = np.random.default_rng(seed)
    # well-separated roots keep the conditioning of the companion matrix moderate
    roots = rng.uniform(0.5, 2.0, d) * np.exp(2j * np.pi * (np.arange(d) + rng.uniform(0, 0.3, d)) / d)
    ev = dense_eigenvalues(_companion(roots))
    assert spectra_match(ev, roots, 1e-8).matched


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 16), st.integers(0, 2**32 - 1))
def test_against_lapack_and_invariants(n, seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    ev = dense_eigenvalues(A)
    scale = max(1.0, np.abs(ev).max())
    assert spectra_match(ev, np.linalg.eigvals(A), 1e-8 * scale).matched
    assert abs(ev.sum() - np.trace(A)) <= 1e-6 * scale * n
    assert abs(np.prod(ev) - np.linalg.det(A)) <= 1e-6 * max(1.0, abs(np.linalg.det(A)))
    S = rng.standard_normal((n, n)) + n * np.eye(n)
    ev2 = dense_eigenvalues(np.linalg.solve(S, A @ S))
    assert spectra_match(ev, ev2, 1e-6 * scale).matched


def test_ordering_is_canonical():
    ev = dense_eigenvalues(np.diag([1.0, -2.0, 2.0, 1j]))
    assert np.allclose(ev, [2, -2, 1, 1j])


def test_balance_is_diagonal_similarity():
    A = np.array([[1.0, 1e6, 0.0], [1e-6, 2.0, 1e4], [0.0, 1e-4, 3.0]])
    B = balance(A)
    assert np.allclose(np.diag(B), np.diag(A))
    assert np.allclose(np.sort(np.linalg.eigvals(B)), np.sort(np.linalg.eigvals(A)))


def test_hessenberg_shape_and_spectrum():
    A = np.random.default_rng(3).standard_normal((7, 7))
    H = hessenberg(A)
    assert np.allclose(np.tril(H, -2), 0)
    assert spectra_match(np.linalg.eigvals(H), np.linalg.eigvals(A), 1e-10).matched


def test_real_distinct():
    assert real_distinct_eigenvalues(np.array([[2.0]])).tolist() == [2.0]
    vals = real_distinct_eigenvalues(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert np.allclose(vals, [3.0, 1.0])
    with pytest.raises(DistinctnessViolation):
        real_distinct_eigenvalues(np.eye(2))
    with pytest.raises(RealityViolation):
        real_distinct_eigenvalues(np.array([[0.0, -1.0], [1.0, 0.0]]))
    with pytest.raises(NegativeOmega):
        real_distinct_eigenvalues(np.diag([1.0, -1.0]))


def test_spectra_match():
    rep = spectra_match([1, 2j], [2j, 1 + 1e-9], 1e-8)
    assert rep.matched and rep.pairing == (1, 0)
    assert not spectra_match([1, 2], [1, 3], 0.5).matched
    with pytest.raises(SizeMismatch):
        spectra_match([1], [1, 2], 1.0)


def test_rotation_invariance():
    w = cmath.exp(2j * cmath.pi / 3)
    assert rotation_invariance([0, 1, w, w * w], 3, 1e-12)
    assert not rotation_invariance([1, w], 3, 1e-6)
    assert rotation_invariance([1, -1], 2, 1e-12)
