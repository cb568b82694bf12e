"""Word-scale number theory: sieving, factoring, arithmetic functions, orders.

Everything here works on plain Python ints. The inputs are meant to be of the
size of an index ``m`` (or ``p - 1`` for a small prime ``p``), not of the
cyclotomic values themselves.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt
from typing import Optional

from .errors import DomainError, ResourceError

#: Default memory ceiling for :func:`sieve_primes`, in bytes.
SIEVE_MAX_BYTES = 1 << 28

_TRIAL_LIMIT = 1 << 16
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_seed = 0x5EED


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: tuple[int, ...]

    def __contains__(self, n):
        i = bisect_right(self.primes, n)
        return i > 0 and self.primes[i - 1] == n

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)


class FactorMultiset(dict):
    """Mapping prime -> exponent, iterated in increasing prime order."""

    def __init__(self, pairs=()):
        super().__init__(sorted(dict(pairs).items()))

    def value(self):
        n = 1
        for p, e in self.items():
            n *= p**e
        return n

    def largest(self):
        """Largest prime factor, with the convention P+(1) = 1."""
        return max(self, default=1)

    def __repr__(self):
        return "FactorMultiset(%s)" % dict(self)


def _sieve_flags(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return flags


def sieve_primes(limit: int, max_bytes: int = SIEVE_MAX_BYTES) -> PrimeTable:
    """All primes up to ``limit`` by the sieve of Eratosthenes."""
    if limit < 2:
        raise DomainError("sieve limit must be at least 2, got %d" % limit)
    if limit + 1 > max_bytes:
        raise ResourceError(
            "sieve up to %d needs %d bytes, ceiling is %d" % (limit, limit + 1, max_bytes)
        )
    flags = _sieve_flags(limit)
    return PrimeTable(limit, tuple(i for i, f in enumerate(flags) if f))


@lru_cache(maxsize=None)
def _small_primes():
    return sieve_primes(_TRIAL_LIMIT).primes


def is_prime_word(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24, used on factoring cofactors."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


def _brent(n, rng):
    # Brent's variant of Pollard rho; n is odd, composite, not a prime power of a small prime.
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
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
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def set_default_seed(seed: int):
    """Seed used by :func:`factorize` when none is passed. Results never depend on it."""
    global _seed
    _seed = seed


def factorize(n: int, seed: Optional[int] = None) -> FactorMultiset:
    """Complete factorization of ``n``.

    Trial division below 2**16, then Brent's rho with a deterministic seed.
    """
    if n < 1:
        raise DomainError("factorize expects n >= 1, got %d" % n)
    found = {}
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    if n == 1:
        return FactorMultiset(found)
    rng = random.Random(_seed if seed is None else seed)
    stack = [n]
    while stack:
        c = stack.pop()
        if c == 1:
            continue
        if is_prime_word(c):
            found[c] = found.get(c, 0) + 1
            continue
        r = isqrt(c)
        if r * r == c:
            stack += [r, r]
            continue
        d = _brent(c, rng)
        stack += [d, c // d]
    return FactorMultiset(found)


def largest_prime_factor(n: int) -> int:
    return factorize(n).largest()


def mobius(m: int) -> int:
    if m < 1:
        raise DomainError("mobius expects m >= 1")
    f = factorize(m)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def euler_phi(m: int) -> int:
    if m < 1:
        raise DomainError("euler_phi expects m >= 1")
    result = 1
    for p, e in factorize(m).items():
        result *= (p - 1) * p ** (e - 1)
    return result


def totient_table(limit: int) -> list[int]:
    """phi(n) for 0 <= n <= limit, by sieving (phi(0) is reported as 0)."""
    phi = list(range(limit + 1))
    for p in range(2, limit + 1):
        if phi[p] == p:
            for q in range(p, limit + 1, p):
                phi[q] -= phi[q] // p
    return phi


def divisors(m: int) -> list[int]:
    if m < 1:
        raise DomainError("divisors expects m >= 1")
    divs = [1]
    for p, e in factorize(m).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def radical(n: int) -> int:
    r = 1
    for p in factorize(n):
        r *= p
    return r


def modpow(base: int, exponent: int, modulus: int) -> int:
    """base**exponent mod modulus by left-to-right square-and-multiply."""
    if modulus < 2:
        raise DomainError("modulus must be at least 2, got %d" % modulus)
    if exponent < 0:
        raise DomainError("negative exponent")
    base %= modulus
    result = 1
    for bit in bin(exponent)[2:]:
        result = result * result % modulus
        if bit == "1":
            result = result * base % modulus
    return result


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 3."""
    if n < 3 or n % 2 == 0:
        raise DomainError("jacobi needs odd n >= 3, got %d" % n)
    a %= n
    sign = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


@lru_cache(maxsize=1 << 16)
def multiplicative_order(p: int) -> int:
    """Order of 2 in (Z/pZ)^*, for an odd prime p.

    Starts from p - 1 and strips each prime factor while 2 still has exponent 1.
    """
    if p < 3 or not is_prime_word(p):
        raise DomainError("multiplicative_order needs an odd prime, got %d" % p)
    order = p - 1
    for q, e in factorize(p - 1).items():
        for _ in range(e):
            if pow(2, order // q, p) != 1:
                break
            order //= q
    return order
