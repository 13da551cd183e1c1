import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quadsieve import (
    BadFactorizationError,
    NoRootsError,
    PrimePower,
    RangeError,
    U64_MAX,
    crt_combine,
    hensel_lift,
    is_prime,
    mul_mod,
    naive_root_scan,
    pow_mod,
    primitive_root,
    sqrt_minus_one,
    sqrt_minus_one_fast,
)
from quadsieve.sieve import primes_1mod4


class TestMulMod:
    def test_zero_annihilates(self):
        assert mul_mod(0, 12345, 97) == 0

    def test_identity(self):
        assert mul_mod(1, 42, 97) == 42

    def test_wide_product_near_u64(self):
        # frozen from a big-integer reference computation
        assert mul_mod(2**32 - 1, 2**32 - 1, 2**64 - 59) == 18446744065119617025

    @given(
        a=st.integers(min_value=0, max_value=U64_MAX),
        b=st.integers(min_value=0, max_value=U64_MAX),
        m=st.integers(min_value=1, max_value=U64_MAX // 2).map(lambda v: 2 * v + 1),
    )
    @settings(max_examples=200, deadline=None)
    def test_matches_bigint_reference(self, a, b, m):
        assert mul_mod(a % m, b % m, m) == (a % m) * (b % m) % m

    def test_rejects_even_or_oversize_modulus(self):
        with pytest.raises(NoRootsError):
            mul_mod(1, 1, 10)
        with pytest.raises(RangeError):
            mul_mod(1, 1, 2**64 + 1)


class TestPowMod:
    def test_empty_product(self):
        assert pow_mod(7, 0, 13) == 1

    def test_small_power(self):
        assert pow_mod(2, 3, 13) == 8

    def test_generator_power(self):
        assert pow_mod(2, 1, 5) == 2

    @given(
        b=st.integers(min_value=0, max_value=10**9),
        e=st.integers(min_value=0, max_value=10**6),
        m=st.integers(min_value=1, max_value=10**9).map(lambda v: 2 * v + 1),
    )
    @settings(max_examples=100, deadline=None)
    def test_matches_builtin(self, b, e, m):
        assert pow_mod(b % m, e, m) == pow(b, e, m)


class TestIsPrime:
    def test_examples(self):
        assert is_prime(2)
        assert not is_prime(3601)  # 13 * 277
        assert is_prime(1601)

    def test_dense_range_against_sieve(self):
        limit = 200_000
        flags = np.ones(limit + 1, dtype=bool)
        flags[:2] = False
        for p in range(2, int(limit**0.5) + 1):
            if flags[p]:
                flags[p * p :: p] = False
        for v in range(2, limit + 1):
            assert is_prime(v) == bool(flags[v]), v

    def test_random_sample_against_sieve(self):
        limit = 10**7
        flags = np.ones(limit + 1, dtype=bool)
        flags[:2] = False
        for p in range(2, int(limit**0.5) + 1):
            if flags[p]:
                flags[p * p :: p] = False
        rng = np.random.default_rng(7)
        for v in rng.integers(2, limit, size=20_000).tolist():
            assert is_prime(v) == bool(flags[v]), v

    def test_strong_pseudoprimes_are_composite(self):
        # composites that defeat small witness subsets
        for v in (2047, 3215031751, 2152302898747, 3474749660383, 341550071728321):
            assert not is_prime(v), v

    def test_large_primes(self):
        assert is_prime(2**61 - 1)
        assert is_prime(2**64 - 59)  # largest prime below 2**64

    def test_range_guard(self):
        with pytest.raises(RangeError):
            is_prime(2**64)


class TestPrimitiveRoot:
    def test_known_smallest(self):
        assert primitive_root(5) == 2
        assert primitive_root(13) == 2
        assert primitive_root(17) == 3

    def test_order_property_to_1e4(self):
        for p in primes_1mod4(10_000).tolist():
            g = primitive_root(p)
            assert pow(g, p - 1, p) == 1
            # the order is exactly p-1: no proper divisor exponent gives 1
            q = p - 1
            divs = {1}
            d = 2
            while d * d <= q:
                if q % d == 0:
                    divs.add(d)
                    divs.add(q // d)
                d += 1
            for d in sorted(divs):
                assert pow(g, d, p) != 1, (p, g, d)

    def test_rejections(self):
        with pytest.raises(NoRootsError):
            primitive_root(7)  # class 3 mod 4
        with pytest.raises(BadFactorizationError):
            primitive_root(25)  # not prime


class TestSqrtMinusOne:
    def test_known_roots(self):
        assert sqrt_minus_one(5) == 1
        assert sqrt_minus_one(13) == 4
        assert sqrt_minus_one(17) == 2

    def test_postcondition_to_1e5(self):
        for p in primes_1mod4(100_000).tolist():
            r = sqrt_minus_one(p)
            assert (4 * r * r + 1) % p == 0
            assert 1 <= r <= (p - 1) // 2

    def test_fast_path_agrees_with_recipe(self):
        for p in primes_1mod4(20_000).tolist():
            assert sqrt_minus_one_fast(p) == sqrt_minus_one(p)

    def test_no_root_for_class_3_primes(self):
        with pytest.raises(NoRootsError):
            sqrt_minus_one(7)
        # exhaustive: class-3 primes admit no roots at all
        flags = np.ones(100_001, dtype=bool)
        flags[:2] = False
        for p in range(2, 317):
            if flags[p]:
                flags[p * p :: p] = False
        for p in np.flatnonzero(flags).tolist():
            if p % 4 == 3:
                assert naive_root_scan(p) == [], p


class TestHensel:
    def test_lift_pairings_mod_25(self):
        # the lift preserves the residue class mod p
        assert hensel_lift(4, PrimePower(5, 2)) == 9
        assert hensel_lift(1, PrimePower(5, 2)) == 16

    def test_lift_mod_289(self):
        assert hensel_lift(2, PrimePower(17, 2)) == 19  # 4*19*19+1 = 1445 = 5*289
        assert hensel_lift(15, PrimePower(17, 2)) == 270

    def test_chained_lifts_match_scan(self):
        for p in primes_1mod4(1000).tolist():
            z = sqrt_minus_one(p)
            e = 2
            while p**e <= 10**6:
                z = hensel_lift(z, PrimePower(p, e))
                pe = p**e
                assert sorted((z, pe - z)) == naive_root_scan(pe), (p, e)
                e += 1

    def test_precondition_rejected(self):
        with pytest.raises(ValueError):
            hensel_lift(2, PrimePower(5, 2))  # 2 is not a root mod 5
        with pytest.raises(ValueError):
            hensel_lift(1, PrimePower(5, 1))  # nothing to lift


class TestCrtCombine:
    def test_5_and_13(self):
        assert crt_combine(5, [1, 4], 13, [4, 9]) == [4, 9, 56, 61]

    def test_17_and_37(self):
        # scan-derived root sets; 4*z*z+1 = 0 (mod 629) has four solutions
        assert crt_combine(17, [2, 15], 37, [3, 34]) == [151, 219, 410, 478]
        assert crt_combine(17, [2, 15], 37, [3, 34]) == naive_root_scan(629)

    def test_squarefree_products_to_1e6(self):
        # every 2- and 3-prime squarefree product of class-1 primes <= 100
        # that stays below 1e6, against the exhaustive scan
        import itertools

        small = [5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97]
        pairs = {p: naive_root_scan(p) for p in small}
        for k in (2, 3):
            for combo in itertools.combinations(small, k):
                m = 1
                for p in combo:
                    m *= p
                if m > 10**6:
                    continue
                acc_m, acc = combo[0], pairs[combo[0]]
                for p in combo[1:]:
                    acc = crt_combine(acc_m, acc, p, pairs[p])
                    acc_m *= p
                assert acc == naive_root_scan(m), combo

    def test_rejects_shared_factor(self):
        with pytest.raises(ValueError):
            crt_combine(15, [1], 25, [7])

    def test_rejects_empty_root_set(self):
        with pytest.raises(NoRootsError):
            crt_combine(5, [1, 4], 21, [])


class TestPrimePower:
    def test_value(self):
        assert PrimePower(5, 2).value == 25

    def test_rejects_wrong_class(self):
        with pytest.raises(NoRootsError):
            PrimePower(7, 1)

    def test_rejects_composite(self):
        with pytest.raises(BadFactorizationError):
            PrimePower(65, 1)

    def test_rejects_overflow(self):
        with pytest.raises(RangeError):
            PrimePower(5, 30)
