"""Small shared helpers: seeded RNG spawning, bit masks, rationals, formatting."""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def spawn_rng(seed: int, *path) -> np.random.Generator:
    """Deterministic splittable RNG: one 64-bit root seed plus a spawn path.

    Distinct paths under the same root give independent streams, so corpus
    generators can be re-run piecemeal without replaying the whole suite.
    """
    key = tuple(int(x) & 0xFFFFFFFF for x in path)
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=key))


def as_fraction(x) -> Fraction:
    """Coerce int / Fraction / 'p/q' string to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        # floats are exact binary rationals; accept them verbatim
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def indices_to_mask(indices, size: int) -> int:
    """Pack a set of indices in [0, size) into a Python-int bitset."""
    arr = np.zeros(size, dtype=bool)
    if len(indices):
        arr[np.asarray(indices, dtype=np.int64)] = True
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


def mask_to_indices(mask: int, size: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return [i for i in out if i < size]


def signed_residue(x, modulus: int):
    """Representative of x mod M in (-M/2, M/2]."""
    x = np.asarray(x) % modulus
    return np.where(x > modulus // 2, x - modulus, x) if x.ndim else (
        int(x) - modulus if int(x) > modulus // 2 else int(x)
    )


def fmt17(x: float) -> str:
    return f"{float(x):.17g}"
