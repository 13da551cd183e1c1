"""Slow reference implementations used as ground truth by tests and --oracle.

These deliberately avoid the clever paths: factoring is trial division,
root finding is an exhaustive residue scan, coprime counting walks terms
one by one.  They ship in the library so the CLI can cross-check itself.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import RangeError

NAIVE_COUNT_CAP = 10**6

_SCAN_CHUNK = 1 << 21

# cache of 4*z*z + 1 for z = 0, 1, 2, ... shared by repeated scans
_sq4: np.ndarray = np.empty(0, dtype=np.int64)


def naive_factor(v: int) -> list[tuple[int, int]]:
    """Factor an odd v >= 3 by trial division; exact, sorted by prime."""
    if v < 3 or v % 2 == 0:
        raise ValueError(f"naive_factor expects odd v >= 3, got {v}")
    out = []
    d = 3
    while d * d <= v:
        e = 0
        while v % d == 0:
            v //= d
            e += 1
        if e:
            out.append((d, e))
        d += 2
    if v > 1:
        out.append((v, 1))
    return out


def _squares_upto(n: int) -> np.ndarray:
    global _sq4
    if _sq4.size < n:
        z = np.arange(max(n, 2 * _sq4.size), dtype=np.int64)
        _sq4 = 4 * z * z + 1
    return _sq4


def naive_root_scan(m: int) -> list[int]:
    """All z in [1, m-1] with 4*z**2 + 1 = 0 (mod m), by exhaustive scan.

    Possibly empty; that emptiness is itself a tested assertion elsewhere,
    so no shortcut based on the factorization of m is taken.
    """
    if m < 3 or m % 2 == 0:
        raise ValueError(f"naive_root_scan expects odd m >= 3, got {m}")
    if 4 * m * m + 1 > 2**63 - 1:
        raise RangeError(f"scan values for m={m} would exceed int64")
    if m <= _SCAN_CHUNK:
        sq = _squares_upto(m)
        return (np.flatnonzero(sq[1:m] % m == 0) + 1).tolist()
    roots = []
    for start in range(1, m, _SCAN_CHUNK):
        z = np.arange(start, min(start + _SCAN_CHUNK, m), dtype=np.int64)
        hits = z[(4 * z * z + 1) % m == 0]
        roots.extend(hits.tolist())
    return roots


def naive_coprime_count(basis, horizon: int) -> int:
    """Count n <= horizon with gcd(4*n**2 + 1, product of basis primes) = 1.

    Term-by-term gcd scan, capped at a desk-scale horizon; larger horizons
    should use the sieve-backed exact count instead.
    """
    if horizon > NAIVE_COUNT_CAP:
        raise RangeError(
            f"naive_coprime_count is capped at horizon {NAIVE_COUNT_CAP}; "
            f"use exact_coprime_count for {horizon}"
        )
    primes = [getattr(b, "prime", b) for b in basis]
    n_prod = math.prod(primes)
    count = 0
    for n in range(1, horizon + 1):
        if math.gcd(4 * n * n + 1, n_prod) == 1:
            count += 1
    return count
