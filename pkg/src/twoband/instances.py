"""JSON instance format and reproducible random instances.

Instance documents come in two forms::

    {"n": 4, "b": 1, "k": 2, "mode": "positive",
     "lower": [1, 1, 1], "upper": [1, 1]}

    {"n": 4, "b": 1, "k": 2, "mode": "positive",
     "seed": 7, "low": 0.5, "high": 2.0}

Complex entries are written as ``[re, im]`` pairs. The second form is
expanded with :func:`generate`. Entries are drawn from numpy's PCG64
generator seeded with the given 64-bit integer.
"""

from __future__ import annotations

import numpy as np

from .band import BandMatrix, Mode
from .errors import InvalidInput

DEFAULT_LOW = 0.5
DEFAULT_HIGH = 2.0
_U64 = (1 << 64) - 1


def _scalar(x):
    if isinstance(x, bool):
        raise InvalidInput(f"not a number: {x!r}")
    if isinstance(x, (int, float)):
        return x
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in x
    ):
        return complex(x[0], x[1])
    raise InvalidInput(f"not a number or [re, im] pair: {x!r}")


def encode_scalar(z):
    z = complex(z) if np.iscomplexobj(z) else float(z)
    if isinstance(z, complex):
        return [z.real, z.imag]
    return z


def parse_matrix(rows) -> np.ndarray:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InvalidInput("matrix must be a list of rows")
    vals = [[_scalar(x) for x in r] for r in rows]
    if len({len(r) for r in vals}) > 1:
        raise InvalidInput("matrix rows have different lengths")
    dtype = complex if any(isinstance(x, complex) for r in vals for x in r) else float
    return np.array(vals, dtype=dtype).reshape(len(vals), -1)


def _int(doc: dict, key: str) -> int:
    if key not in doc:
        raise InvalidInput(f"missing field {key!r}")
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise InvalidInput(f"field {key!r} must be an integer, got {v!r}")
    return v


def _mode(doc: dict) -> Mode:
    try:
        return Mode(doc.get("mode", "positive"))
    except ValueError:
        raise InvalidInput(f"unknown mode {doc.get('mode')!r}") from None


def instance_from_dict(doc) -> BandMatrix:
    if not isinstance(doc, dict):
        raise InvalidInput("instance must be a JSON object")
    n, b, k = _int(doc, "n"), _int(doc, "b"), _int(doc, "k")
    mode = _mode(doc)
    if "lower" in doc or "upper" in doc:
        lower = [_scalar(x) for x in doc.get("lower", [])]
        upper = [_scalar(x) for x in doc.get("upper", [])]
        return BandMatrix(n, b, k, np.array(lower), np.array(upper), mode)
    if "seed" in doc:
        return generate(
            n, b, k, mode, _int(doc, "seed"),
            float(doc.get("low", DEFAULT_LOW)), float(doc.get("high", DEFAULT_HIGH)),
        )
    raise InvalidInput("instance needs either band vectors or a generator seed")


def instance_to_dict(bm: BandMatrix) -> dict:
    return {
        "n": bm.n,
        "b": bm.b,
        "k": bm.k,
        "mode": bm.mode.value,
        "lower": [encode_scalar(x) for x in bm.lower],
        "upper": [encode_scalar(x) for x in bm.upper],
    }


def cell_seed(master: int, n: int, b: int, k: int) -> int:
    """64-bit seed for one sweep cell, derived by hashing ``(master, n, b, k)``."""
    words = [int(master) & _U64, n, b, k]
    return int(np.random.SeedSequence(words).generate_state(1, np.uint64)[0])


def generate(n: int, b: int, k: int, mode=Mode.POSITIVE, seed: int = 0,
             low: float = DEFAULT_LOW, high: float = DEFAULT_HIGH) -> BandMatrix:
    """Random instance with entry magnitudes uniform in ``[low, high]``.

    Complex entries get a uniform phase on top of the random modulus.
    """
    mode = Mode(mode)
    if not low <= high:
        raise InvalidInput(f"need low <= high, got [{low}, {high}]")
    if mode is Mode.POSITIVE and not low > 0:
        raise InvalidInput("positive mode needs low > 0")
    if low < 0:
        raise InvalidInput("entry magnitudes need low >= 0")
    rng = np.random.Generator(np.random.PCG64(int(seed) & _U64))
    nl, nu = max(0, n - b), max(0, n - k)
    mags = rng.uniform(low, high, nl + nu)
    if mode is Mode.COMPLEX:
        mags = mags * np.exp(1j * rng.uniform(0.0, 2 * np.pi, nl + nu))
    return BandMatrix(n, b, k, mags[:nl], mags[nl:], mode)
