"""Layered primality classification for cyclotomic-sized integers.

The pipeline runs cheapest-first:

1. ``n == 1`` is a unit.
2. Trial division. With an index ``m`` every prime factor of phi_m (or of
   psi_m, or of an Aurifeuillian half) is either 1 mod m or divides m, so only
   those candidates are tried; without an index all small primes are.
3. Fermat test to base 3. Base 2 is useless here since psi_m is always either
   prime or a base-2 pseudoprime.
4. Perfect-square rejection, strong test to base 2 and strong Lucas test
   (together the Baillie-PSW test).
5. Below ``proven_threshold`` a deterministic Miller-Rabin base set settles
   primality; above it, extra strong bases are run and the verdict is
   ``ProbablePrime``.

Big-integer arithmetic goes through gmpy2.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import gmpy2
from gmpy2 import mpz

from .errors import DomainError
from .ntheory import _sieve_flags, factorize, jacobi

# Strong tests to these bases are a proof of primality below this bound (> 2**81).
DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
DETERMINISTIC_LIMIT = 3317044064679887385961981


class Tag(str, enum.Enum):
    UNIT = "Unit"
    PROVEN_PRIME = "ProvenPrime"
    PROBABLE_PRIME = "ProbablePrime"
    COMPOSITE = "Composite"

    @property
    def is_prime(self):
        return self in (Tag.PROVEN_PRIME, Tag.PROBABLE_PRIME)

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Classification:
    tag: Tag
    witness: Optional[int] = None
    method: str = ""

    @property
    def is_prime(self):
        return self.tag.is_prime


@dataclass(frozen=True)
class PipelineConfig:
    trial_bound: int = 1 << 20
    mr_extra_bases: tuple = (3, 5, 7)
    proven_threshold: int = 1 << 64

    def __post_init__(self):
        if self.trial_bound < 2:
            raise DomainError("trial_bound must be >= 2")
        if self.proven_threshold > DETERMINISTIC_LIMIT:
            raise DomainError("proven_threshold above the range the fixed bases prove")
        object.__setattr__(self, "mr_extra_bases", tuple(self.mr_extra_bases))


DEFAULT_CONFIG = PipelineConfig()


def fermat_test(n: int, base: int) -> bool:
    """True iff base**n == base (mod n)."""
    if n < 2:
        raise DomainError("fermat_test needs n >= 2")
    n = mpz(n)
    return gmpy2.powmod(base, n, n) == base % n


def _split_even(n):
    d, s = n, 0
    while not d & 1:
        d >>= 1
        s += 1
    return d, s


def strong_probable_prime(n: int, base: int) -> bool:
    """Miller-Rabin round: n - 1 = d * 2^s, base^d == 1 or base^(d 2^r) == -1."""
    if n < 3 or n % 2 == 0:
        raise DomainError("strong test needs odd n >= 3, got %d" % n)
    n = mpz(n)
    base %= n
    if base == 0:
        return True
    d, s = _split_even(n - 1)
    x = gmpy2.powmod(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def selfridge_parameters(n: int) -> Optional[tuple[int, int, int]]:
    """First D in 5, -7, 9, -11, ... with (D/n) = -1, as (D, P, Q).

    Returns None when some D exposes a common factor with n.
    """
    D = 5
    while True:
        j = jacobi(D, n)
        if j == -1:
            return D, 1, (1 - D) // 4
        if j == 0 and abs(D) != n:
            return None
        D = -D - 2 if D > 0 else -D + 2


def strong_lucas(n: int) -> bool:
    """Strong Lucas probable-prime test with Selfridge parameters (P = 1)."""
    if n < 3 or n % 2 == 0:
        raise DomainError("strong Lucas test needs odd n >= 3, got %d" % n)
    if gmpy2.is_square(n):
        raise DomainError("strong Lucas test is undefined for perfect squares")
    params = selfridge_parameters(n)
    if params is None:
        return False
    D, P, Q = params
    n = mpz(n)
    d, s = _split_even(n + 1)

    def half(x):
        return (x + n if x & 1 else x) >> 1

    U, V, Qk = mpz(1), mpz(P), mpz(Q) % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = half((P * U + V) % n), half((D * U + P * V) % n)
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_perfect_power(n: int) -> Optional[tuple[int, int]]:
    """(b, e) with n = b**e, e >= 2 and b minimal, or None."""
    if n < 1:
        raise DomainError("is_perfect_power needs n >= 1")
    if n < 4:
        return None
    for e in range(n.bit_length(), 1, -1):
        root, exact = gmpy2.iroot(mpz(n), e)
        if exact:
            return int(root), e
    return None


@lru_cache(maxsize=4)
def _prime_flags(bound):
    return _sieve_flags(bound)


def _primitive_search(n, m, bound):
    """Scan primes c = 1 + t*m up to min(bound, isqrt(n)).

    Returns (factor or None, exhausted) where exhausted means every candidate
    up to isqrt(n) was tried.
    """
    root = int(gmpy2.isqrt(n))
    top = min(bound, root)
    flags = _prime_flags(max(bound, 2))
    for c in range(1 + m, top + 1, m):
        if flags[c] and n % c == 0:
            return c, True
    return None, top == root


def trial_division_primitive(n: int, m: int, bound: int) -> Optional[int]:
    """First prime c = 1 (mod m), c <= bound, properly dividing n."""
    if m < 2:
        raise DomainError("primitive trial division needs m >= 2")
    factor, _ = _primitive_search(mpz(n), m, bound)
    return factor


def _trial_stage(n, m, bound):
    if n % 2 == 0:
        return (2 if n > 2 else None), True
    if m is not None and m >= 2:
        # the only non-primitive prime that can divide phi_m is the largest prime of m
        for p in factorize(m):
            if p < n and n % p == 0:
                return p, True
        return _primitive_search(n, m, bound)
    root = int(gmpy2.isqrt(n))
    top = min(bound, root)
    flags = _prime_flags(max(bound, 2))
    for p in range(3, top + 1, 2):
        if flags[p] and n % p == 0:
            return p, True
    return None, top == root


def classify(n: int, m_context: Optional[int] = None, config: PipelineConfig = DEFAULT_CONFIG) -> Classification:
    if n < 1:
        raise DomainError("classify needs n >= 1")
    if n == 1:
        return Classification(Tag.UNIT, method="unit")
    if n == 2:
        return Classification(Tag.PROVEN_PRIME, method="trial-division")
    n = mpz(n)
    factor, exhausted = _trial_stage(n, m_context, config.trial_bound)
    if factor is not None:
        return Classification(Tag.COMPOSITE, int(factor), "trial-division")
    if not fermat_test(n, 3):
        return Classification(Tag.COMPOSITE, method="fermat-3")
    if gmpy2.is_square(n):
        return Classification(Tag.COMPOSITE, int(gmpy2.isqrt(n)), "perfect-square")
    if not strong_probable_prime(n, 2):
        return Classification(Tag.COMPOSITE, method="strong-2")
    if not strong_lucas(n):
        return Classification(Tag.COMPOSITE, method="strong-lucas")
    if exhausted:
        return Classification(Tag.PROVEN_PRIME, method="trial-complete")
    if n < config.proven_threshold:
        for a in DETERMINISTIC_BASES:
            if not strong_probable_prime(n, a):
                return Classification(Tag.COMPOSITE, method="strong-%d" % a)
        return Classification(Tag.PROVEN_PRIME, method="deterministic-mr")
    for a in config.mr_extra_bases:
        if not strong_probable_prime(n, a):
            return Classification(Tag.COMPOSITE, method="strong-%d" % a)
    return Classification(Tag.PROBABLE_PRIME, method="bpsw")
