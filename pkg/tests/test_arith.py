import random

import pytest

from dlogsidon.arith import (
    PrimeInterval,
    discrete_log,
    factorize,
    is_prime,
    is_primitive_root,
    lift_to_window,
    prime_count,
    primes_in_interval,
    primes_upto,
    smallest_primitive_root,
)
from dlogsidon.errors import DLogUndefined, InvalidModulus

from oracles import (
    factorize_trial,
    is_prime_trial,
    lift_naive,
    power_table,
    primes_upto_trial,
    primitive_root_naive,
)


def test_is_prime_matches_trial_division_up_to_2000():
    for n in range(-5, 2001):
        assert is_prime(n) == is_prime_trial(n), n


def test_is_prime_random_60bit_against_sympy(seed=411):
    sympy = pytest.importorskip("sympy")
    rng = random.Random(seed)
    for _ in range(200):
        n = rng.randrange(1 << 59, 1 << 60)
        assert is_prime(n) == sympy.isprime(n), n


def test_is_prime_known_carmichael_and_strong_pseudoprimes():
    # Carmichael numbers and 2-strong pseudoprimes must all be rejected.
    for n in (561, 1105, 1729, 2047, 3215031751, 3474749660383):
        assert not is_prime(n), n
    assert is_prime(2305843009213693951)  # 2^61 - 1


def test_primes_upto_matches_trial():
    assert primes_upto(1000) == primes_upto_trial(1000)
    assert primes_upto(1) == []
    assert primes_upto(2) == [2]


def test_interval_validation():
    with pytest.raises(ValueError):
        PrimeInterval(0, 5)
    with pytest.raises(ValueError):
        PrimeInterval(7, 7)
    iv = PrimeInterval(10, 20)
    assert 11 in iv and 20 in iv and 10 not in iv and 21 not in iv


def test_primes_in_interval_matches_sieve(seed=512):
    rng = random.Random(seed)
    for _ in range(25):
        lo = rng.randrange(1, 5000)
        hi = lo + rng.randrange(1, 3000)
        got = primes_in_interval(PrimeInterval(lo, hi))
        want = [p for p in primes_upto_trial(hi) if p > lo]
        assert got == want, (lo, hi)


def test_primes_in_interval_crosses_segment_boundary():
    lo = (1 << 22) - 50
    hi = (1 << 22) + 50
    got = primes_in_interval(PrimeInterval(lo, hi))
    assert got == [p for p in primes_upto(hi) if p > lo]


def test_prime_count_classics():
    assert prime_count(10) == 4
    assert prime_count(1000) == 168
    assert prime_count(10**6) == 78498
    assert prime_count(1) == 0


def test_prime_count_matches_primes_upto(seed=613):
    rng = random.Random(seed)
    for _ in range(10):
        n = rng.randrange(2, 200000)
        assert prime_count(n) == len(primes_upto(n)), n


def test_factorize_matches_trial(seed=714):
    rng = random.Random(seed)
    for _ in range(60):
        n = rng.randrange(1, 10**7)
        assert factorize(n) == factorize_trial(n), n
    assert factorize(1) == {}
    with pytest.raises(ValueError):
        factorize(0)


def test_primitive_roots_match_naive():
    for q in (3, 5, 7, 11, 13, 101, 379):
        g = smallest_primitive_root(q)
        assert g == primitive_root_naive(q), q
        assert is_primitive_root(g, q)
    assert smallest_primitive_root(2) == 1


def test_is_primitive_root_rejects_non_generators():
    # 3 generates mod 7; 2 has order 3.
    assert is_primitive_root(3, 7)
    assert not is_primitive_root(2, 7)
    assert not is_primitive_root(0, 7)
    with pytest.raises(InvalidModulus):
        is_primitive_root(2, 15)
    with pytest.raises(InvalidModulus):
        smallest_primitive_root(100)


def test_discrete_log_full_table_small_primes():
    for q in (3, 5, 11, 37, 131):
        g = smallest_primitive_root(q)
        table = power_table(q, g)
        for a, e in table.items():
            assert discrete_log(g, a, q) == e, (q, a)


def test_discrete_log_roundtrip_large(seed=815):
    rng = random.Random(seed)
    q = 2053
    g = smallest_primitive_root(q)
    for _ in range(50):
        e = rng.randrange(q - 1)
        assert discrete_log(g, pow(g, e, q), q) == e
    with pytest.raises(DLogUndefined):
        discrete_log(g, 0, q)


def test_lift_to_window_matches_scan(seed=916):
    rng = random.Random(seed)
    for q in (3, 5, 11, 37, 131):
        for h in (2, 3, 4):
            lo, hi = (h - 1) * q + 1, h * q - 1
            for _ in range(20):
                d = rng.randrange(q - 1)
                x = lift_to_window(d, q, h)
                assert x == lift_naive(d, lo, hi, q - 1), (q, h, d)
                assert lo <= x <= hi and x % (q - 1) == d % (q - 1)


def test_lift_to_window_rejects_bad_args():
    with pytest.raises(ValueError):
        lift_to_window(0, 11, h=1)
    with pytest.raises(ValueError):
        lift_to_window(10, 11)
    with pytest.raises(ValueError):
        lift_to_window(-1, 11)
