"""Complete root sets and least-root summaries for composite moduli.

A modulus m whose prime factors all lie in class 1 mod 4 has exactly
2**k roots of 4*z**2 + 1 = 0 (mod m), k the number of distinct primes:
two per prime power (lifted from the prime), glued by the CRT.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import oracle
from .errors import BadFactorizationError, NoRootsError
from .modarith import PrimePower, hensel_lift, crt_combine, sqrt_minus_one


@dataclass(frozen=True)
class RootSet:
    """All residues z mod m with 4*z**2 + 1 = 0 (mod m), sorted ascending."""

    m: int
    roots: tuple[int, ...]
    nu: int  # distinct prime factors of m

    def __post_init__(self) -> None:
        rs = self.roots
        if len(rs) != 2**self.nu:
            raise AssertionError(f"expected {2**self.nu} roots mod {self.m}, got {len(rs)}")
        for i, z in enumerate(rs):
            if not (1 <= z <= self.m - 1):
                raise AssertionError(f"root {z} outside [1, {self.m - 1}]")
            if i and rs[i - 1] >= z:
                raise AssertionError("roots must be strictly increasing")
            if (4 * z * z + 1) % self.m != 0:
                raise AssertionError(f"{z} is not a root mod {self.m}")
            # complements pair up in sorted order: z and m - z
            if z + rs[len(rs) - 1 - i] != self.m:
                raise AssertionError(f"roots mod {self.m} not closed under z -> m-z")

    @property
    def least(self) -> int:
        return self.roots[0]


@dataclass(frozen=True)
class RootSummary:
    """Least root of a modulus and the exact cofactor (4*r**2 + 1) / m."""

    m: int
    least_root: int
    cofactor: int

    def __post_init__(self) -> None:
        m, r, x = self.m, self.least_root, self.cofactor
        if m * x != 4 * r * r + 1:
            raise AssertionError(f"cofactor identity fails for m={m}: {m}*{x} != 4*{r}**2+1")
        # 4r^2+1 >= m is exactly r >= sqrt(m-1)/2; both bounds are forced
        # by r being the least root, so a violation means a root bug
        if 4 * r * r + 1 < m or 2 * r > m - 1 or x > m - 2:
            raise AssertionError(f"least-root bounds violated for m={m}, r={r}, x={x}")


def _normalize_factorization(m: int, factorization) -> list[PrimePower]:
    if m < 3 or m % 2 == 0:
        raise NoRootsError(f"modulus must be odd and >= 3, got {m}")
    if factorization is None:
        factorization = oracle.naive_factor(m)
    pps = []
    check = 1
    for item in factorization:
        if isinstance(item, PrimePower):
            pp = item
        else:
            p, e = item
            if p % 4 != 1:
                raise NoRootsError(
                    f"{m} has prime factor {p} in class {p % 4} mod 4; no roots exist"
                )
            pp = PrimePower(p, e)
        pps.append(pp)
        check *= pp.value
    if check != m:
        raise BadFactorizationError(f"factorization multiplies to {check}, not {m}")
    if len({pp.p for pp in pps}) != len(pps):
        raise BadFactorizationError(f"repeated prime in factorization of {m}")
    return pps


def _prime_power_roots(pp: PrimePower) -> list[int]:
    z = sqrt_minus_one(pp.p)
    for e in range(2, pp.e + 1):
        z = hensel_lift(z, PrimePower(pp.p, e))
    return sorted((z, pp.value - z))


def all_roots(m: int, factorization=None) -> RootSet:
    """Complete sorted root set of m; factorization defaults to trial division.

    PrimePower construction rejects any prime in class 3 mod 4, which is
    precisely the case with no roots at all.
    """
    pps = _normalize_factorization(m, factorization)
    acc_m, acc_roots = pps[0].value, _prime_power_roots(pps[0])
    for pp in pps[1:]:
        acc_roots = crt_combine(acc_m, acc_roots, pp.value, _prime_power_roots(pp))
        acc_m *= pp.value
    return RootSet(m=m, roots=tuple(acc_roots), nu=len(pps))


def root_summary(m: int, factorization=None) -> RootSummary:
    """Least root r of m and the cofactor x = (4*r**2 + 1) / m, exact."""
    rs = all_roots(m, factorization)
    r = rs.least
    value = 4 * r * r + 1
    x, rem = divmod(value, m)
    if rem != 0:
        raise AssertionError(f"{m} does not divide 4*{r}**2+1")
    return RootSummary(m=m, least_root=r, cofactor=x)


def least_root_lower_bound(m: int) -> int:
    """Smallest integer r with 4*r**2 >= m - 1, i.e. ceil(sqrt(m-1)/2)."""
    s = math.isqrt(m - 1)
    if s * s < m - 1:
        s += 1
    return (s + 1) // 2


def verify_first_degree(p: int) -> bool:
    """True when the least root of p is strictly below the least root of p**2."""
    r1 = root_summary(p, [(p, 1)]).least_root
    r2 = root_summary(p * p, [(p, 2)]).least_root
    return r1 < r2
