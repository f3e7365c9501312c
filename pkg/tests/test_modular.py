import random

import pytest
from hypothesis import given, settings, strategies as st

from pisano.errors import InvalidModulus, NoRoot, NotInvertible
from pisano.modular import (
    Factorization,
    PrimeModulus,
    factorize,
    is_prime,
    legendre_symbol,
    mod_inv,
    mod_pow,
    mult_order,
    primes_up_to,
    sqrt_mod,
)

SMALL_ODD_PRIMES = [p for p in primes_up_to(400) if p != 2]


# -- brute-force oracles ------------------------------------------------------

def brute_pow(x, e, m):
    r = 1 % m
    for _ in range(e):
        r = r * x % m
    return r


def brute_inv(a, m):
    return [b for b in range(m) if a * b % m == 1]


def brute_roots(a, p):
    return [r for r in range(p) if r * r % p == a % p]


def brute_order(a, p):
    t, x = 1, a % p
    while x != 1:
        x = x * a % p
        t += 1
    return t


def trial_factor(n):
    out, d = {}, 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# -- mod_pow ------------------------------------------------------------------

def test_mod_pow_examples():
    assert brute_pow(2, 36, 37) == 1
    assert mod_pow(2, 36, 37) == 1
    assert mod_pow(4, 3, 7) == 1
    assert mod_pow(0, 0, 5) == 1
    for m in (2, 3, 10, 97):
        assert mod_pow(m - 1, 0, m) == 1


@given(st.integers(0, 500), st.integers(0, 60), st.integers(2, 500))
def test_mod_pow_matches_loop(x, e, m):
    assert mod_pow(x % m, e, m) == brute_pow(x, e, m)


def test_fermat():
    for p in SMALL_ODD_PRIMES[:30]:
        for a in range(1, p):
            assert mod_pow(a, p - 1, p) == 1


# -- mod_inv ------------------------------------------------------------------

def test_mod_inv_examples():
    assert brute_inv(2, 11) == [6]
    assert mod_inv(2, 11) == 6
    assert mod_inv(1, 97) == 1
    with pytest.raises(NotInvertible):
        mod_inv(2, 4)


@given(st.integers(1, 1000), st.integers(2, 1000))
def test_mod_inv_property(a, m):
    candidates = brute_inv(a, m)
    if candidates:
        assert mod_inv(a, m) == candidates[0]
    else:
        with pytest.raises(NotInvertible):
            mod_inv(a, m)


# -- legendre / sqrt ----------------------------------------------------------

@pytest.mark.parametrize(
    "a, p, expected",
    [(5, 11, 1), (13, 19, -1), (17, 13, 1), (17, 7, -1), (0, 7, 0), (14, 7, 0)],
)
def test_legendre_examples(a, p, expected):
    assert legendre_symbol(a, p) == expected


@pytest.mark.parametrize("p", [2, 9, 1, 15])
def test_legendre_rejects_bad_modulus(p):
    with pytest.raises(InvalidModulus):
        legendre_symbol(3, p)


def test_five_is_square_iff_p_is_1_or_4_mod_5():
    for p in primes_up_to(10_000):
        if p in (2, 5):
            continue
        assert (legendre_symbol(5, p) == 1) == (p % 5 in (1, 4)), p


def test_sqrt_mod_examples():
    assert brute_roots(5, 11) == [4, 7]
    assert sqrt_mod(5, 11) == 4
    assert sqrt_mod(0, 13) == 0
    with pytest.raises(NoRoot):
        sqrt_mod(5, 7)


@pytest.mark.parametrize("p", SMALL_ODD_PRIMES[:40] + [1009, 40961, 65537])
def test_sqrt_mod_exhaustive(p):
    # 40961 and 65537 have p - 1 divisible by a high power of two, which is
    # the case the Tonelli-Shanks loop actually iterates on.
    residues = range(p) if p < 2000 else random.Random(p).sample(range(p), 300)
    for a in residues:
        ls = legendre_symbol(a, p)
        if ls == -1:
            with pytest.raises(NoRoot):
                sqrt_mod(a, p)
            continue
        r = sqrt_mod(a, p)
        assert r * r % p == a
        assert r <= p - r
        assert (r != 0) == (ls == 1)
        if p < 2000:
            assert r == min(brute_roots(a, p))


# -- factorize ----------------------------------------------------------------

def test_factorize_examples():
    assert trial_factor(1368) == {2: 3, 3: 2, 19: 1}
    assert factorize(36) == {2: 2, 3: 2}
    assert factorize(1) == {}
    assert factorize(1368) == {2: 3, 3: 2, 19: 1}
    assert factorize(1368).value == 1368


def test_factorize_hard_semiprimes():
    cases = [
        (2**31 - 1) * (2**32 - 5),
        4294967291 * 4294967279,
        1000003 * 1000003,
        999983**3,
        2**64 - 1,
        18446744073709551557,  # largest 64-bit prime
    ]
    for n in cases:
        f = factorize(n)
        assert f.value == n
        assert all(is_prime(q) for q in f)


@given(st.integers(1, 10**7))
def test_factorize_matches_trial_division(n):
    assert factorize(n) == trial_factor(n)


@pytest.mark.slow
def test_factorize_reconstructs_random_64_bit():
    rng = random.Random(64)
    for _ in range(100_000):
        n = rng.randrange(1, 2**64)
        f = factorize(n)
        assert f.value == n
        assert all(is_prime(q) for q in f)


def test_factorization_merge():
    assert factorize(36) * factorize(38) == factorize(36 * 38)
    assert (Factorization({2: 1}) * Factorization()).value == 2
    assert factorize(360).as_multiset() == [2, 2, 2, 3, 3, 5]


# -- primality ----------------------------------------------------------------

def test_is_prime_matches_sieve():
    sieve = set(primes_up_to(100_000))
    assert all(is_prime(n) == (n in sieve) for n in range(100_001))


def test_is_prime_strong_pseudoprimes():
    # strong pseudoprimes to several small bases
    for n in (3215031751, 2152302898747, 3474749660383, 341550071728321, 3825123056546413051):
        assert not is_prime(n)
    assert is_prime(2**61 - 1)


def test_prime_modulus():
    pm = PrimeModulus(37)
    assert pm.factored_group_order == {2: 2, 3: 2}
    assert pm.factored_group_order.value == 36
    assert pm.factored_square_group_order.value == 37 * 37 - 1
    with pytest.raises(InvalidModulus):
        PrimeModulus(91)


# -- mult_order ---------------------------------------------------------------

def test_mult_order_examples():
    assert brute_order(4, 37) == 18
    assert mult_order(4, 7) == 3
    assert mult_order(4, 37) == 18
    for p in (2, 3, 101):
        assert mult_order(1, p) == 1
    with pytest.raises(NotInvertible):
        mult_order(14, 7)


@pytest.mark.parametrize("p", SMALL_ODD_PRIMES[:25])
def test_mult_order_matches_scan(p):
    for a in range(1, p):
        t = mult_order(a, p)
        assert t == brute_order(a, p)
        assert (p - 1) % t == 0
        assert pow(a, t, p) == 1
        assert all(pow(a, t // q, p) != 1 for q in factorize(t))


@settings(max_examples=50)
@given(st.sampled_from(primes_up_to(10**6)[-2000:]), st.integers(1, 10**6))
def test_mult_order_minimal_large(p, a):
    a %= p
    if a == 0:
        return
    t = mult_order(a, p)
    assert pow(a, t, p) == 1
    assert all(pow(a, t // q, p) != 1 for q in factorize(t))
