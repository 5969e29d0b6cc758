"""Spectral structure of two-band matrices.

A two-band matrix has nonzeros only on the diagonals ``(b + j, j)`` and
``(i, k + i)``. Its nonzero eigenvalues lie on the ``p`` rays through the
p-th roots of unity, ``p = (b + k) / gcd(b, k)``. This package computes
that spectrum from explicit permutation-similarity decompositions and
checks it against a generic dense eigensolver.
"""

__version__ = "0.1.0"

from .band import BandMatrix, Mode, PeriodInfo, new_band_matrix, period_info, to_dense, zero_pattern_matches
from .cyclic import CyclicDecomposition, CyclicIndexData, cyclic_index_data, cyclic_permutation, extract_cyclic
from .oracle import dense_eigenvalues, real_distinct_eigenvalues, rotation_invariance, spectra_match
from .spectrum import SpectrumReport, base_index, block_product, predicted_counts, structured_eigenvalues
from .split import DirectSumDecomposition, Permutation, conjugate, gcd_permutation, split
from .tn import all_minors_nonnegative, cauchy_binet_minor, oscillatory_check

__all__ = [
    "BandMatrix", "Mode", "PeriodInfo", "new_band_matrix", "period_info", "to_dense",
    "zero_pattern_matches", "CyclicDecomposition", "CyclicIndexData", "cyclic_index_data",
    "cyclic_permutation", "extract_cyclic", "dense_eigenvalues", "real_distinct_eigenvalues",
    "rotation_invariance", "spectra_match", "SpectrumReport", "base_index", "block_product",
    "predicted_counts", "structured_eigenvalues", "DirectSumDecomposition", "Permutation",
    "conjugate", "gcd_permutation", "split", "all_minors_nonnegative", "cauchy_binet_minor",
    "oscillatory_check",
]
