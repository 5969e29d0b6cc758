import cmath
import math
from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from twoband.band import BandMatrix, Mode, period_info, to_dense
from twoband.cyclic import extract_cyclic
from twoband.oracle import (
    count_zeros,
    dense_eigenvalues,
    rotation_invariance,
    spectra_match,
)
from twoband.spectrum import (
    base_index,
    block_product,
    predicted_counts,
    structured_eigenvalues,
)
from twoband.split import conjugate, split

from conftest import all_ones, band_matrices

CUBE_ROOT_2 = 2 ** (1 / 3)


def test_block_product_n4():
    dec = extract_cyclic(all_ones(4, 1, 2))
    assert np.array_equal(block_product(dec, 2), [[2.0]])
    assert block_product(dec, 1).shape == (2, 2)


def test_block_product_scalars():
    dec = extract_cyclic(BandMatrix(3, 1, 2, [2.0, 3.0], [5.0]))
    for j in (1, 2, 3):
        assert block_product(dec, j)[0, 0] == pytest.approx(30.0, rel=1e-15)


@given(band_matrices(max_n=20))
def test_block_products_are_diagonal_blocks_of_power(bm):
    assume(math.gcd(bm.b, bm.k) == 1 and bm.n > max(bm.b, bm.k))
    dec = extract_cyclic(bm)
    idx = dec.index_data
    Cp = np.linalg.matrix_power(conjugate(dec.perm, to_dense(bm)), idx.p)
    for j in range(1, idx.p + 1):
        s = slice(idx.offset(j - 1), idx.offset(j - 1) + idx.sizes[j - 1])
        assert np.allclose(block_product(dec, j), Cp[s, s], rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("sizes, expected", [((2, 1, 1), 2), ((1, 1, 1), 1), ((3, 2, 2, 2, 2), 2)])
def test_base_index(sizes, expected):
    assert base_index(SimpleNamespace(index_data=SimpleNamespace(sizes=sizes))) == expected


def test_predicted_counts_examples():
    c = predicted_counts(4, 1, 2)
    assert (c.zero_multiplicity, c.nonzero_per_ray) == (1, 1)
    c = predicted_counts(7, 2, 4)
    assert (c.zero_multiplicity, c.per_t_counts) == (1, (1, 1))
    assert 3 * c.nonzero_per_ray == 6
    c = predicted_counts(6, 3, 3)
    assert (c.zero_multiplicity, c.nonzero_per_ray) == (0, 3)


def _counts_by_enumeration(n, b, k):
    """Per-class counting: class t holds indices congruent to t mod g; a
    coprime class of size s has s // p radii and s % p zeros."""
    g = math.gcd(b, k)
    p = (b + k) // g
    sizes = [sum(1 for s in range(1, n + 1) if (s - t) % g == 0) for t in range(1, g + 1)]
    return sum(s % p for s in sizes), tuple(s // p for s in sizes)


@given(st.integers(1, 80), st.integers(1, 12), st.integers(1, 12))
def test_predicted_counts_against_enumeration(n, b, k):
    c = predicted_counts(n, b, k)
    zeros, per_t = _counts_by_enumeration(n, b, k)
    assert c.zero_multiplicity == zeros
    assert c.per_t_counts == per_t
    assert period_info(BandMatrix(n, b, k, np.ones(max(0, n - b)), np.ones(max(0, n - k)))).p * \
        c.nonzero_per_ray + c.zero_multiplicity == n


def test_structured_n4_anchor():
    bm = all_ones(4, 1, 2)
    A = to_dense(bm)
    v = np.array([1.0, 0, 0, 1.0])
    assert np.array_equal(np.linalg.matrix_power(A, 3) @ v, 2 * v)
    rep = structured_eigenvalues(bm)
    assert rep.zero_multiplicity == 1 and rep.p == 3
    for ray in rep.rays:
        assert len(ray.radii) == 1
        assert abs(ray.radii[0] - CUBE_ROOT_2) <= 1e-15
    expected = [0] + [CUBE_ROOT_2 * cmath.exp(2j * math.pi * j / 3) for j in range(3)]
    assert spectra_match(rep.eigenvalues, expected, 1e-14).matched


def test_structured_two_by_two():
    u, v = 3.0, 5.0
    rep = structured_eigenvalues(BandMatrix(2, 1, 1, [u], [v]))
    assert rep.p == 2
    assert spectra_match(rep.eigenvalues, [math.sqrt(u * v), -math.sqrt(u * v)], 1e-14).matched


def test_structured_three_scalars():
    alpha, beta, delta = 2.0, 3.0, 5.0
    rep = structured_eigenvalues(BandMatrix(3, 1, 2, [alpha, beta], [delta]))
    assert rep.zero_multiplicity == 0
    assert rep.rays[0].radii == pytest.approx([(alpha * beta * delta) ** (1 / 3)], rel=1e-15)
    assert np.prod(rep.eigenvalues) == pytest.approx(np.linalg.det(to_dense(
        BandMatrix(3, 1, 2, [alpha, beta], [delta]))), rel=1e-12)


def test_structured_all_zero_when_bands_empty():
    rep = structured_eigenvalues(BandMatrix(2, 3, 3, [], []))
    assert rep.zero_multiplicity == 2
    assert not rep.eigenvalues.any()


def test_structured_m_zero_with_nonempty_bands():
    rep = structured_eigenvalues(all_ones(4, 2, 3))
    assert rep.zero_multiplicity == 4


@settings(max_examples=60, deadline=None)
@given(band_matrices(max_n=24))
def test_report_invariants_positive(bm):
    rep = structured_eigenvalues(bm)
    pred = predicted_counts(bm.n, bm.b, bm.k)
    radii = rep.rays[0].radii
    assert rep.zero_multiplicity + rep.p * len(radii) == bm.n
    assert rep.zero_multiplicity == pred.zero_multiplicity
    assert len(radii) == pred.nonzero_per_ray
    assert all(r > 0 for r in radii)
    assert list(radii) == sorted(radii, reverse=True)
    assert all(ray.radii == radii for ray in rep.rays)
    assert len(rep.eigenvalues) == bm.n
    if rep.g == 1 and len(radii) > 1:
        assert min(-np.diff(radii)) > 0


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(list(Mode)).flatmap(lambda m: band_matrices(max_n=24, mode=m)))
def test_structured_agrees_with_oracle(bm):
    rep = structured_eigenvalues(bm)
    oracle = dense_eigenvalues(to_dense(bm))
    # vanishing entries can leave defective zeros, which smear like sqrt(eps)
    rel = 1e-8 if bm.mode is Mode.POSITIVE else 1e-6
    tol = rel * max(1.0, np.abs(oracle).max())
    assert spectra_match(rep.eigenvalues, oracle, tol).matched
    assert rotation_invariance(rep.eigenvalues, rep.p, tol)
    assert count_zeros(oracle) == rep.zero_multiplicity


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(list(Mode)).flatmap(lambda m: band_matrices(max_n=24, mode=m)))
def test_nonzero_spectra_of_block_products_agree(bm):
    for blk in split(bm).blocks:
        if blk.n < blk.b + blk.k:
            continue
        dec = extract_cyclic(blk)
        spectra = []
        for j in range(1, dec.p + 1):
            w = dense_eigenvalues(block_product(dec, j))
            spectra.append(np.sort_complex(w[np.abs(w) > 1e-9 * max(1, np.abs(w).max())]))
        for w in spectra[1:]:
            assert len(w) == len(spectra[0])
            assert spectra_match(w, spectra[0], 1e-8 * max(1, np.abs(w).max(initial=0))).matched


def test_nonnegative_mode_with_zero_entries():
    bm = BandMatrix(7, 1, 2, [1.0, 0.0, 2.0, 1.0, 1.0, 3.0], [1.0, 1.0, 0.0, 2.0, 1.0], Mode.NONNEGATIVE)
    rep = structured_eigenvalues(bm)
    oracle = dense_eigenvalues(to_dense(bm))
    assert spectra_match(rep.eigenvalues, oracle, 1e-8).matched
    assert rep.zero_multiplicity >= predicted_counts(7, 1, 2).zero_multiplicity


def test_report_json_shape():
    doc = structured_eigenvalues(all_ones(4, 1, 2)).to_dict()
    assert set(doc) == {"p", "g", "zero_multiplicity", "rays", "eigenvalues", "source"}
    assert doc["source"] == "structured"
    assert [r["j"] for r in doc["rays"]] == [0, 1, 2]
    assert all(len(z) == 2 for z in doc["eigenvalues"])
