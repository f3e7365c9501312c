"""Exact arithmetic in Z/mZ.

Powering, inversion, Legendre symbols, square roots modulo a prime,
64-bit factorization and multiplicative order.  Everything here is a pure
function of plain ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd, isqrt
from typing import Callable

from .errors import InvalidModulus, NoRoot, NotInvertible

__all__ = [
    "Factorization",
    "PrimeModulus",
    "factorize",
    "is_prime",
    "legendre_symbol",
    "mod_inv",
    "mod_pow",
    "mult_order",
    "order_from_multiple",
    "primes_up_to",
    "sqrt_mod",
]

# (bound, witnesses): Miller-Rabin with these bases is exact for n < bound.
# The last set covers n < 3.3 * 10**24, so every 64-bit input.
_MR_TIERS = (
    (1_373_653, (2, 3)),
    (3_215_031_751, (2, 3, 5, 7)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (3_825_123_056_546_413_051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (1 << 81, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
)
_TRIAL = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = tuple(q for q in range(2, 1000) if all(q % d for d in range(2, isqrt(q) + 1)))


def mod_pow(base: int, exp: int, m: int) -> int:
    """Return ``base**exp % m`` by square-and-multiply. ``0**0`` is 1."""
    if m < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {m}")
    if exp < 0:
        raise ValueError("exponent must be non-negative")
    return pow(base, exp, m)


def mod_inv(a: int, m: int) -> int:
    """Return b with ``a*b = 1 (mod m)``; raise NotInvertible if gcd(a, m) != 1."""
    if m < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {m}")
    try:
        return pow(a, -1, m)
    except ValueError:
        raise NotInvertible(f"{a} is not invertible mod {m}") from None


@lru_cache(maxsize=1 << 14)
def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all 64-bit integers."""
    if n < 2:
        return False
    for q in _TRIAL:
        if n % q == 0:
            return n == q
    if n < 37 * 37:
        return True
    witnesses = next((w for bound, w in _MR_TIERS if n < bound), None)
    if witnesses is None:
        raise ValueError(f"{n} exceeds the deterministic Miller-Rabin range")
    d, s = n - 1, 0
    while not d & 1:
        d >>= 1
        s += 1
    for a in witnesses:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    """All primes <= n (sieve of Eratosthenes)."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for q in range(2, isqrt(n) + 1):
        if sieve[q]:
            sieve[q * q :: q] = bytes(len(range(q * q, n + 1, q)))
    return [i for i, flag in enumerate(sieve) if flag]


def _require_odd_prime(p: int) -> None:
    if p == 2 or not is_prime(p):
        raise InvalidModulus(f"{p} is not an odd prime")


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a|p) via Euler's criterion: +1, -1, or 0 when p | a."""
    _require_odd_prime(p)
    ls = pow(a, (p - 1) // 2, p)
    return -1 if ls == p - 1 else ls


def sqrt_mod(a: int, p: int) -> int:
    """Square root of ``a`` modulo an odd prime ``p`` (Tonelli-Shanks).

    Of the two roots r and p - r, the smaller one is returned, so the
    result is canonical.  Raises NoRoot for nonresidues.
    """
    _require_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise NoRoot(f"{a} is a quadratic nonresidue mod {p}")

    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


class Factorization(dict):
    """Prime factorization as a ``{prime: exponent}`` mapping.

    Multiplying two factorizations merges exponents, which is how the
    factorization of p**2 - 1 is assembled from those of p - 1 and p + 1.
    """

    @property
    def value(self) -> int:
        n = 1
        for q, e in self.items():
            n *= q**e
        return n

    def __mul__(self, other: Factorization) -> Factorization:
        merged = Factorization(self)
        for q, e in other.items():
            merged[q] = merged.get(q, 0) + e
        return merged

    def primes(self) -> list[int]:
        return sorted(self)

    def as_multiset(self) -> list[int]:
        return [q for q in sorted(self) for _ in range(self[q])]


def _brent_rho(n: int) -> int:
    """Return a nontrivial factor of composite odd ``n``. Deterministic in n."""
    for c in range(1, 200):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise RuntimeError(f"rho failed to split {n}")  # pragma: no cover


def _split_into(n: int, out: Factorization) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = isqrt(n)
    if r * r == n:
        _split_into(r, out)
        _split_into(r, out)
        return
    d = _brent_rho(n)
    _split_into(d, out)
    _split_into(n // d, out)


def factorize(n: int) -> Factorization:
    """Complete prime factorization of ``1 <= n < 2**64``.

    Trial division by primes below 1000, then Brent's variant of Pollard rho
    on whatever composite cofactor remains.

    >>> factorize(1368)
    {2: 3, 3: 2, 19: 1}
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = Factorization()
    for q in _SMALL_PRIMES:
        if q * q > n:
            break
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            out[q] = e
    if n > 1:
        _split_into(n, out)
    return Factorization(sorted(out.items()))


def order_from_multiple(
    is_identity: Callable[[int], bool], n: int, factors: Factorization | None = None
) -> int:
    """Shrink a known annihilating exponent ``n`` to the exact order.

    ``is_identity(k)`` must report whether x**k is the identity, and must
    hold for ``k = n``.  Each prime q | n is divided out while the quotient
    still annihilates.
    """
    if factors is None:
        factors = factorize(n)
    order = n
    for q in factors.primes():
        while order % q == 0 and is_identity(order // q):
            order //= q
    return order


@dataclass(frozen=True)
class PrimeModulus:
    """A validated prime, with the factorization of p - 1 computed on demand."""

    p: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise InvalidModulus(f"{self.p} is not prime")

    @property
    def is_odd(self) -> bool:
        return self.p != 2

    @cached_property
    def factored_group_order(self) -> Factorization:
        return factorize(self.p - 1)

    @cached_property
    def factored_square_group_order(self) -> Factorization:
        # p**2 - 1 = (p - 1)(p + 1)
        return self.factored_group_order * factorize(self.p + 1)


def mult_order(a: int, p: int, factors: Factorization | None = None) -> int:
    """Multiplicative order of ``a`` modulo the prime ``p``.

    Starts from p - 1 and peels prime factors; ``factors`` may supply the
    factorization of p - 1 when it is already known.
    """
    if not is_prime(p):
        raise InvalidModulus(f"{p} is not prime")
    a %= p
    if a == 0:
        raise NotInvertible(f"{p} divides the argument; no multiplicative order")
    if factors is None:
        factors = factorize(p - 1)
    return order_from_multiple(lambda k: pow(a, k, p) == 1, p - 1, factors)

