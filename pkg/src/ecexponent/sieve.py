"""Segmented sieve of Eratosthenes.

Sweeps over [2, X) are partitioned into segments of SEGMENT_LENGTH values;
each segment is sieved independently with a shared base-prime list, so
distinct segments can be produced concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

SEGMENT_LENGTH = 1 << 20

_MAX_HI = 10**9


@dataclass(frozen=True)
class PrimeSegment:
    """All primes in the half-open interval [lo, hi), ascending."""

    lo: int
    hi: int
    primes: tuple[int, ...]


def _base_primes(limit: int) -> list[int]:
    """Simple odd-only sieve for the base primes up to limit (inclusive)."""
    if limit < 2:
        return []
    size = (limit - 1) // 2  # flags for 3, 5, 7, ...
    flags = np.ones(size + 1, dtype=bool)
    for i in range(1, (isqrt(limit) - 1) // 2 + 1):
        if flags[i]:
            p = 2 * i + 1
            start = (p * p - 3) // 2 + 1
            flags[start::p] = False
    return [2] + [2 * i + 1 for i in np.nonzero(flags[1:])[0] + 1]


def primes_in(lo: int, hi: int) -> PrimeSegment:
    """Exact set of primes in [lo, hi), with 2 <= lo < hi <= 10^9."""
    if hi <= lo:
        raise ValueError(f"empty range: [{lo}, {hi})")
    if lo < 2:
        raise ValueError(f"lo must be >= 2, got {lo}")
    if hi > _MAX_HI:
        raise ValueError(f"hi must be <= {_MAX_HI}, got {hi}")

    base = _base_primes(isqrt(hi - 1))
    out: list[int] = []
    if lo <= 2 < hi:
        out.append(2)
    # odd-only marking: flags[i] represents the odd number start + 2*i
    seg_lo = lo
    while seg_lo < hi:
        seg_hi = min(seg_lo + SEGMENT_LENGTH, hi)
        start = seg_lo | 1  # first odd >= seg_lo
        if start < 3:
            start = 3
        if start < seg_hi:
            n = (seg_hi - start + 1) // 2
            flags = np.ones(n, dtype=bool)
            for p in base:
                if p == 2:
                    continue
                if p * p >= seg_hi:
                    break
                first = max(p * p, (start + p - 1) // p * p)
                if first % 2 == 0:
                    first += p
                if first < seg_hi:
                    flags[(first - start) // 2::p] = False
            out.extend((start + 2 * np.nonzero(flags)[0]).tolist())
        seg_lo = seg_hi
    return PrimeSegment(lo, hi, tuple(out))


def iter_segments(lo: int, hi: int, n_parts: int = 1) -> list[tuple[int, int]]:
    """Split [lo, hi) into n_parts contiguous subranges for partitioned sweeps."""
    if n_parts < 1:
        raise ValueError(f"n_parts must be >= 1, got {n_parts}")
    if hi <= lo:
        raise ValueError(f"empty range: [{lo}, {hi})")
    width = (hi - lo + n_parts - 1) // n_parts
    parts = []
    a = lo
    while a < hi:
        b = min(a + width, hi)
        parts.append((a, b))
        a = b
    return parts
