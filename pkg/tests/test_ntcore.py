import math
import random

import pytest
from hypothesis import given, strategies as st

from eqseq import (
    DomainError,
    PrimePair,
    crt_lift,
    factorize,
    find_common_primitive_root,
    is_prime,
    multiplicative_order,
    pow_wide_mod,
)
from eqseq.ntcore import euler_phi

from golden import SWEEP_PAIRS


def _trial_division_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


class TestIsPrime:
    def test_small_examples(self):
        assert is_prime(7)
        assert not is_prime(1)
        assert not is_prime(91)  # 7 * 13

    def test_matches_trial_division(self):
        for n in range(1, 3000):
            assert is_prime(n) == _trial_division_prime(n), n

    def test_larger_values(self):
        assert is_prime(1093)
        assert is_prime(3511)
        assert not is_prime(1093 * 3511)


class TestFactorize:
    def test_examples(self):
        assert factorize(1) == []
        assert factorize(42) == [2, 3, 7]
        assert factorize(294) == [2, 3, 7, 7]

    def test_reconstructs_and_factors_prime(self):
        for n in range(1, 2000):
            factors = factorize(n)
            assert math.prod(factors) == n
            assert all(is_prime(f) for f in factors)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            factorize(0)


class TestPowWideMod:
    def test_examples(self):
        assert pow_wide_mod(2, 6, 49) == 15
        assert pow_wide_mod(5, 0, 441) == 1
        assert pow_wide_mod(2, 12, 169) == 40

    def test_rejects_bad_modulus(self):
        with pytest.raises(DomainError):
            pow_wide_mod(2, 3, 1)
        with pytest.raises(DomainError):
            pow_wide_mod(2, -1, 5)

    @given(st.integers(0, 10**6), st.integers(0, 64), st.integers(2, 10**6))
    def test_matches_repeated_multiplication(self, base, exp, mod):
        expected = 1
        for _ in range(exp):
            expected = expected * base % mod
        assert pow_wide_mod(base, exp, mod) == expected

    def test_euler_theorem(self):
        rng = random.Random(7)
        for n in (21, 49, 441):
            phi = euler_phi(n)
            for _ in range(25):
                a = rng.randrange(1, n)
                if math.gcd(a, n) == 1:
                    assert pow_wide_mod(a, phi, n) == 1


class TestMultiplicativeOrder:
    def test_examples(self):
        assert multiplicative_order(1, 49) == 1
        assert multiplicative_order(2, 49) == 21
        assert multiplicative_order(5, 49) == 42

    def test_matches_exhaustive_powers(self):
        for n in (9, 25, 49, 21, 39):
            for a in range(1, n):
                if math.gcd(a, n) != 1:
                    continue
                x, k = a % n, 1
                while x != 1:
                    x = x * a % n
                    k += 1
                assert multiplicative_order(a, n) == k

    def test_rejects_non_coprime(self):
        with pytest.raises(DomainError):
            multiplicative_order(7, 49)


class TestCommonPrimitiveRoot:
    def test_examples(self):
        assert find_common_primitive_root(PrimePair.create(3, 7)) == 5
        assert find_common_primitive_root(PrimePair.create(3, 13)) == 2
        assert find_common_primitive_root(PrimePair.create(5, 11)) == 2

    def test_orders_for_sweep_pairs(self):
        for p, q in SWEEP_PAIRS:
            pair = PrimePair.create(p, q)
            g = find_common_primitive_root(pair)
            assert multiplicative_order(g, p) == p - 1
            assert multiplicative_order(g, q * q) == q * (q - 1)


class TestCrtLift:
    def test_examples(self):
        assert crt_lift([(2, 3), (1, 49)]) == 50
        assert crt_lift([(0, 3), (0, 49)]) == 0
        assert crt_lift([(1, 3), (1, 49)]) == 1

    def test_rejects_non_coprime(self):
        with pytest.raises(DomainError):
            crt_lift([(0, 6), (1, 21)])

    @given(st.data())
    def test_roundtrip(self, data):
        pool = [3, 4, 5, 7, 11, 13, 17, 19, 23]
        moduli = data.draw(st.lists(st.sampled_from(pool), unique=True, min_size=1))
        residues = [(data.draw(st.integers(0, m - 1)), m) for m in moduli]
        x = crt_lift(residues)
        assert 0 <= x < math.prod(moduli)
        for r, m in residues:
            assert x % m == r


class TestPrimePair:
    def test_derived_constants(self, pair37):
        assert (pair37.d, pair37.e, pair37.phi_pq, pair37.period) == (2, 6, 12, 147)
        assert pair37.d * pair37.e == pair37.phi_pq
        assert pair37.divides

    def test_rejects_bad_pairs(self):
        with pytest.raises(DomainError):
            PrimePair.create(3, 9)
        with pytest.raises(DomainError):
            PrimePair.create(2, 7)
        with pytest.raises(DomainError):
            PrimePair.create(7, 7)

    def test_non_dividing_pair_is_flagged(self):
        pair = PrimePair.create(5, 7)
        assert not pair.divides
        with pytest.raises(DomainError):
            pair.require_divides()


class TestUnitGroupFactorization:
    def test_powers_of_g_and_h_cover_units(self):
        # every unit factors uniquely as g^i h^j; checked exhaustively
        from eqseq import derive_generators

        for p, q in SWEEP_PAIRS:
            pair = PrimePair.create(p, q)
            gens = derive_generators(pair)
            n = pair.period
            seen = set()
            x = 1
            for _ in range(pair.q * pair.e):
                y = x
                for _ in range(pair.d):
                    seen.add(y)
                    y = y * gens.h % n
                x = x * gens.g % n
            assert len(seen) == (p - 1) * (q - 1) * q
            units = {t for t in range(n) if math.gcd(t, n) == 1}
            assert seen == units
