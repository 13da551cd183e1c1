"""Exact modular arithmetic and root construction for 4*z**2 + 1 = 0 (mod m).

Everything here works on plain Python integers, which are exact at any
size, so the only range policy needed is a refusal: inputs or results
beyond the supported 64-bit width raise RangeError rather than wrap.

All functions are pure; the module holds no mutable state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import BadFactorizationError, NoRootsError, RangeError

U64_MAX = 2**64 - 1

# Strong-pseudoprime witnesses making Miller-Rabin deterministic for all
# v < 3.3e24, which covers the full 64-bit range.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Above this, sqrt_minus_one switches from the primitive-root construction
# (which factors p-1 by trial division) to the non-residue power path.
_RECIPE_CAP = 10**7


def _check_modulus(m: int) -> None:
    if not isinstance(m, int):
        raise TypeError(f"modulus must be an int, got {type(m).__name__}")
    if m > U64_MAX:
        raise RangeError(f"modulus {m} exceeds the 64-bit range")
    if m < 3 or m % 2 == 0:
        raise NoRootsError(f"modulus must be odd and >= 3, got {m}")


def mul_mod(a: int, b: int, m: int) -> int:
    """(a * b) mod m, exactly; the product is widened, never truncated."""
    _check_modulus(m)
    return (a * b) % m


def pow_mod(base: int, exp: int, m: int) -> int:
    """base**exp mod m by binary exponentiation (the built-in 3-arg pow)."""
    _check_modulus(m)
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    return pow(base, exp, m)


def is_prime(v: int) -> bool:
    """Deterministic primality test for 2 <= v <= 2**64 - 1."""
    if v > U64_MAX:
        raise RangeError(f"{v} exceeds the 64-bit range")
    if v < 2:
        return False
    for w in _MR_WITNESSES:
        if v == w:
            return True
        if v % w == 0:
            return False
    d = v - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for w in _MR_WITNESSES:
        x = pow(w, d, v)
        if x == 1 or x == v - 1:
            continue
        for _ in range(s - 1):
            x = x * x % v
            if x == v - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimePower:
    """p**e for a prime p in the residue class 1 mod 4."""

    p: int
    e: int
    value: int = field(init=False)

    def __post_init__(self) -> None:
        if self.e < 1:
            raise ValueError(f"exponent must be >= 1, got {self.e}")
        if self.p % 4 != 1:
            raise NoRootsError(f"prime {self.p} is not congruent to 1 mod 4")
        if not is_prime(self.p):
            raise BadFactorizationError(f"{self.p} is not prime")
        value = self.p**self.e
        if value > U64_MAX:
            raise RangeError(f"{self.p}**{self.e} exceeds the 64-bit range")
        object.__setattr__(self, "value", value)


def _factor_all(v: int) -> list[tuple[int, int]]:
    # plain trial division, used only to factor p-1 for primitive roots
    out = []
    for d in (2, 3):
        e = 0
        while v % d == 0:
            v //= d
            e += 1
        if e:
            out.append((d, e))
    d = 5
    while d * d <= v:
        for cand in (d, d + 2):
            e = 0
            while v % cand == 0:
                v //= cand
                e += 1
            if e:
                out.append((cand, e))
        d += 6
    if v > 1:
        out.append((v, 1))
    return out


def primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group mod p.

    Verified by checking g**((p-1)/q) != 1 for every prime q dividing p-1.
    Accepts only primes in class 1 mod 4, the only ones this package needs.
    """
    if p % 4 != 1:
        raise NoRootsError(f"{p} is not congruent to 1 mod 4")
    if not is_prime(p):
        raise BadFactorizationError(f"{p} is not prime")
    if p > 10**12:
        raise RangeError(f"primitive_root supports p <= 10**12, got {p}")
    order_checks = [(p - 1) // q for q, _ in _factor_all(p - 1)]
    for g in range(2, p):
        if all(pow(g, e, p) != 1 for e in order_checks):
            return g
    raise AssertionError(f"no primitive root found for {p}")  # unreachable for prime p


def _normalize_half_root(s: int, p: int) -> int:
    # s*s = -1 (mod p); return the smaller z of the pair solving 4*z*z+1 = 0,
    # i.e. z = s/2 mod p folded into [1, (p-1)/2]
    r = s * ((p + 1) // 2) % p
    return min(r, p - r)


def sqrt_minus_one(p: int) -> int:
    """Least z with 4*z**2 + 1 = 0 (mod p), for prime p = 4k + 1.

    Construction: with g a primitive root, t = g**k has t**2 = -1, and
    z = t/2 if t is even else (p-t)/2.  Large p take the equivalent route
    through a quadratic non-residue instead of factoring p-1.
    """
    if p % 4 != 1:
        raise NoRootsError(f"{p} is not congruent to 1 mod 4; no root exists")
    if not is_prime(p):
        raise BadFactorizationError(f"{p} is not prime")
    if p <= _RECIPE_CAP:
        k = (p - 1) // 4
        t = pow(primitive_root(p), k, p)
        r = t // 2 if t % 2 == 0 else (p - t) // 2
    else:
        r = sqrt_minus_one_fast(p)
    if (4 * r * r + 1) % p != 0 or not (1 <= r <= (p - 1) // 2):
        raise AssertionError(f"root construction failed for p={p}")
    return r


def sqrt_minus_one_fast(p: int) -> int:
    """Same value as sqrt_minus_one via the smallest quadratic non-residue.

    c**((p-1)/2) = -1 for a non-residue c, so s = c**((p-1)/4) squares
    to -1; halving and folding gives the least root.  This is the bulk
    path used when many primes need roots.
    """
    if p % 4 != 1:
        raise NoRootsError(f"{p} is not congruent to 1 mod 4; no root exists")
    e = (p - 1) // 2
    c = 2
    while pow(c, e, p) != p - 1:
        c += 1
    s = pow(c, (p - 1) // 4, p)
    return _normalize_half_root(s, p)


def hensel_lift(root: int, pp: PrimePower) -> int:
    """Lift a root of 4*z**2 + 1 mod p**(e-1) to the unique root mod p**e.

    The derivative 8*z is invertible mod p (p odd, z not divisible by p),
    so one Newton step lands exactly on the lift and preserves the residue
    mod p**(e-1).
    """
    if pp.e < 2:
        raise ValueError("target exponent must be >= 2; nothing to lift")
    modulus = pp.value
    prev = modulus // pp.p
    if not (1 <= root < prev):
        raise ValueError(f"root {root} is not a residue mod {prev}")
    f = 4 * root * root + 1
    if f % prev != 0:
        raise ValueError(f"{root} does not solve 4*z**2+1 = 0 (mod {prev})")
    inv = pow(8 * root % modulus, -1, modulus)
    lifted = (root - f * inv) % modulus
    if (4 * lifted * lifted + 1) % modulus != 0 or lifted % prev != root:
        raise AssertionError(f"lift failed for root={root}, pp={pp}")
    return lifted


def crt_combine(m1: int, roots_a, m2: int, roots_b) -> list[int]:
    """All residues mod m1*m2 solving 4*z**2 + 1 = 0, from the two root sets.

    Requires coprime moduli and complete, nonempty root sets for each; the
    |roots_a| * |roots_b| combinations are verified by substitution and
    returned sorted ascending.
    """
    _check_modulus(m1)
    _check_modulus(m2)
    if math.gcd(m1, m2) != 1:
        raise ValueError(f"moduli {m1} and {m2} are not coprime")
    if not roots_a or not roots_b:
        raise NoRootsError("root sets must be nonempty; rootless moduli stop earlier")
    m = m1 * m2
    if m > U64_MAX:
        raise RangeError(f"combined modulus {m1}*{m2} exceeds the 64-bit range")
    inv = pow(m1, -1, m2)
    out = []
    for a in roots_a:
        for b in roots_b:
            z = a + m1 * ((b - a) * inv % m2)
            if (4 * z * z + 1) % m != 0:
                raise AssertionError(f"combination {a},{b} failed for {m1},{m2}")
            out.append(z)
    out.sort()
    return out
