"""Cross-checks of the structured spectrum against the dense oracle."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .band import BandMatrix, Mode, period_info, to_dense
from .errors import TooLarge, TwoBandError
from .instances import DEFAULT_HIGH, DEFAULT_LOW, cell_seed, generate
from .oracle import (
    DEFAULT_MAX_DIM,
    ZERO_TOL,
    MatchReport,
    count_zeros,
    dense_eigenvalues,
    rotation_invariance,
    spectra_match,
    zero_threshold,
)
from .spectrum import predicted_counts, structured_eigenvalues

DEFAULT_TOL = 1e-6
PHASE_TOL = 1e-6


def ray_phase_error(values, p: int, zero_tol: float = ZERO_TOL) -> float:
    """Largest angular distance from a nonzero value to the nearest ray ``2*pi*j/p``."""
    values = np.asarray(values, dtype=complex)
    nz = values[np.abs(values) >= zero_threshold(values, zero_tol)]
    if nz.size == 0:
        return 0.0
    step = 2 * math.pi / p
    ang = np.angle(nz)
    return float(np.max(np.abs(ang - step * np.round(ang / step))))


@dataclass
class VerifyReport:
    """Outcome of :func:`verify_instance`. A check set to ``None`` does not
    apply in the instance's mode."""

    checks: dict
    match: MatchReport
    tol: float
    oracle_zeros: int
    structured_zeros: int
    predicted_zeros: int
    max_phase_error: float
    p: int
    g: int

    @property
    def passed(self) -> bool:
        return all(v for v in self.checks.values() if v is not None)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": self.checks,
            "p": self.p,
            "g": self.g,
            "tol": self.tol,
            "max_residual": self.match.max_residual,
            "oracle_zeros": self.oracle_zeros,
            "structured_zeros": self.structured_zeros,
            "predicted_zeros": self.predicted_zeros,
            "max_phase_error": self.max_phase_error,
        }


def verify_instance(bm: BandMatrix, tol: float = DEFAULT_TOL, zero_tol: float = ZERO_TOL,
                    phase_tol: float = PHASE_TOL, max_n: int = DEFAULT_MAX_DIM) -> VerifyReport:
    """Compare the structured spectrum with the oracle.

    ``tol`` is relative: eigenvalues must agree within
    ``tol * max(1, spectral radius)``.
    """
    if bm.n > max_n:
        raise TooLarge(f"n={bm.n} exceeds --max-n {max_n}")
    info = period_info(bm)
    oracle = dense_eigenvalues(to_dense(bm), max_dim=max_n)
    report = structured_eigenvalues(bm, zero_tol=zero_tol)
    rho = float(np.max(np.abs(oracle))) if oracle.size else 0.0
    abs_tol = tol * max(1.0, rho)
    match = spectra_match(report.eigenvalues, oracle, abs_tol)
    pred = predicted_counts(bm.n, bm.b, bm.k)
    oracle_zeros = count_zeros(oracle, zero_tol)
    phase_err = ray_phase_error(oracle, info.p, zero_tol)
    positive = bm.mode is Mode.POSITIVE
    checks = {
        "spectra_match": match.matched,
        "rotation_invariance": rotation_invariance(oracle, info.p, abs_tol),
        "ray_phases": None if bm.mode is Mode.COMPLEX else phase_err <= phase_tol,
        "zero_count": oracle_zeros == report.zero_multiplicity,
        "predicted_counts": (
            pred.zero_multiplicity == report.zero_multiplicity
            and all(len(r.radii) == pred.nonzero_per_ray for r in report.rays)
        ) if positive else None,
    }
    return VerifyReport(checks, match, abs_tol, oracle_zeros, report.zero_multiplicity,
                        pred.zero_multiplicity, phase_err, info.p, info.g)


@dataclass(frozen=True)
class SweepSpec:
    n_range: tuple[int, int] = (1, 20)
    b_range: tuple[int, int] = (1, 6)
    k_range: tuple[int, int] = (1, 6)
    mode: Mode = Mode.POSITIVE
    seed: int = 0
    low: float = DEFAULT_LOW
    high: float = DEFAULT_HIGH
    tol: float = DEFAULT_TOL
    zero_tol: float = ZERO_TOL
    max_n: int = DEFAULT_MAX_DIM

    def cells(self) -> list[tuple[int, int, int]]:
        return [
            (n, b, k)
            for n in range(self.n_range[0], self.n_range[1] + 1)
            for b in range(self.b_range[0], self.b_range[1] + 1)
            for k in range(self.k_range[0], self.k_range[1] + 1)
        ]


SWEEP_COLUMNS = ("n", "b", "k", "seed", "passed", "max_residual", "oracle_zeros",
                 "structured_zeros", "predicted_zeros", "max_phase_error", "error")


def run_cell(spec: SweepSpec, n: int, b: int, k: int) -> dict:
    seed = cell_seed(spec.seed, n, b, k)
    row = dict.fromkeys(SWEEP_COLUMNS)
    row.update(n=n, b=b, k=k, seed=seed, passed=False)
    try:
        bm = generate(n, b, k, spec.mode, seed, spec.low, spec.high)
        rep = verify_instance(bm, spec.tol, spec.zero_tol, max_n=spec.max_n)
    except TwoBandError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    row.update(
        passed=rep.passed,
        max_residual=rep.match.max_residual,
        oracle_zeros=rep.oracle_zeros,
        structured_zeros=rep.structured_zeros,
        predicted_zeros=rep.predicted_zeros,
        max_phase_error=rep.max_phase_error,
    )
    return row


def _run_cell_args(args):
    return run_cell(*args)


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list[dict]:
    """Verify one seeded instance per cell; rows come back in cell order."""
    tasks = [(spec, n, b, k) for n, b, k in spec.cells()]
    if jobs <= 1 or len(tasks) < 2:
        return [_run_cell_args(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_cell_args, tasks, chunksize=8))
