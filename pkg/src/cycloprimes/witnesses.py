"""Constructive compositeness of cyclotomic values.

Two mechanisms are implemented:

* the Sophie Germain divisor: for a prime p = 3 (mod 4), p > 3, with q = 2p + 1
  prime, q is a proper divisor of 2^p - 1;
* order buckets: a prime p with ord_p(2) = m divides psi_m, so p < psi_m makes
  psi_m composite. Grouping small primes by their order yields many
  composite psi_m with an explicit witness.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

from .cyclotomic import CyclotomicRecord, cyclotomic_record
from .errors import DomainError, InvariantViolation
from .ntheory import is_prime_word, jacobi, modpow, multiplicative_order, sieve_primes
from .primality import Tag, classify


@dataclass(frozen=True)
class SophieGermainCertificate:
    p: int
    q: int
    p_mod4: int
    q_mod8: int
    jacobi2q: int
    divides: bool
    proper: bool

    @property
    def valid(self):
        return (self.q == 2 * self.p + 1 and self.p_mod4 == 3 and self.q_mod8 == 7
                and self.jacobi2q == 1 and self.divides and self.proper)


def sophie_germain_composite(p: int) -> SophieGermainCertificate:
    if not is_prime_word(p):
        raise DomainError("p = %d is not prime" % p)
    if p % 4 != 3:
        raise DomainError("p = %d is not 3 mod 4" % p)
    if p <= 3:
        raise DomainError("p = %d: need p > 3 so that 2p + 1 < 2^p - 1" % p)
    q = 2 * p + 1
    if not is_prime_word(q):
        raise DomainError("2p + 1 = %d is not prime" % q)
    cert = SophieGermainCertificate(
        p=p,
        q=q,
        p_mod4=p % 4,
        q_mod8=q % 8,
        jacobi2q=jacobi(2, q),
        divides=modpow(2, p, q) == 1,
        proper=q < (1 << p) - 1,
    )
    if not cert.valid:
        raise InvariantViolation("certificate for p=%d failed: %r" % (p, cert))
    return cert


def enumerate_sophie_germain(limit: int) -> list[SophieGermainCertificate]:
    if limit < 2:
        return []
    table = sieve_primes(2 * limit + 1)
    return [
        sophie_germain_composite(p)
        for p in table.primes
        if 3 < p <= limit and p % 4 == 3 and (2 * p + 1) in table
    ]


@dataclass(frozen=True)
class OrderBucket:
    m: int
    witnesses: tuple[int, ...]


def order_map(x: int) -> dict[int, OrderBucket]:
    """Bucket every odd prime p <= x under m = ord_p(2)."""
    if x < 3:
        raise DomainError("order_map needs x >= 3")
    buckets: dict[int, list[int]] = {}
    for p in sieve_primes(x).primes[1:]:
        buckets.setdefault(multiplicative_order(p), []).append(p)
    return {m: OrderBucket(m, tuple(ps)) for m, ps in sorted(buckets.items())}


@dataclass(frozen=True)
class CensusConfig:
    theta: Fraction = Fraction(3, 5)
    threshold_factor: Fraction = Fraction(5)
    threshold_override: Optional[int] = None

    def __post_init__(self):
        if not Fraction(1, 2) < self.theta < 1:
            raise DomainError("theta must lie in (1/2, 1)")
        if self.threshold_factor < 0:
            raise DomainError("threshold_factor must be nonnegative")

    def threshold(self, x: int) -> float:
        """Lower bound an order must exceed; natural log in the default formula."""
        if self.threshold_override is not None:
            return self.threshold_override
        return float(self.threshold_factor) * math.sqrt(x) * math.log(x) ** 2


def enumerate_L_d(x: int, d: int, config: CensusConfig = CensusConfig()) -> list[int]:
    """Primes p in (x/2, x], p = 3 mod 4, ord_p(2) = (p-1)/d above the threshold."""
    if x < 16:
        raise DomainError("x must be >= 16")
    if d < 1:
        raise DomainError("d must be >= 1")
    bound = config.threshold(x)
    out = []
    for p in sieve_primes(x).primes:
        if 2 * p <= x or p % 4 != 3 or (p - 1) % d:
            continue
        order = multiplicative_order(p)
        if order == (p - 1) // d and order > bound:
            out.append(p)
    return out


@dataclass(frozen=True)
class CensusEntry:
    m: int
    witness: int
    family: str  # "C1" (m != 4 mod 8) or "C2" (m = 4 mod 8)
    detail: str


@dataclass
class CensusResult:
    x: int
    theta: Fraction
    threshold: float
    c1_composite_count: int
    c2_not_two_prime_count: int
    witnessed_m: list[CensusEntry] = field(default_factory=list)

    @property
    def x_theta(self):
        return self.x ** float(self.theta)

    def to_json_lines(self) -> str:
        lines = [json.dumps({
            "x": self.x,
            "theta": str(self.theta),
            "threshold": self.threshold,
            "x_theta": self.x_theta,
            "c1_composite_count": self.c1_composite_count,
            "c2_not_two_prime_count": self.c2_not_two_prime_count,
        }, separators=(",", ":"))]
        lines += [json.dumps(asdict(e), separators=(",", ":")) for e in self.witnessed_m]
        return "\n".join(lines) + "\n"


def _c1_entry(rec: CyclotomicRecord, bucket: OrderBucket) -> Optional[CensusEntry]:
    for p in bucket.witnesses:
        if rec.psi % p:
            raise InvariantViolation("ord_%d(2) = %d but %d does not divide psi" % (p, rec.m, p))
        if p < rec.psi:
            return CensusEntry(rec.m, p, "C1", "proper divisor of psi")
    return None


def _c2_entry(rec: CyclotomicRecord, bucket: OrderBucket) -> Optional[CensusEntry]:
    s = rec.split
    for p in bucket.witnesses:
        if s.psi_plus % p == 0:
            half, other, side = s.psi_plus, s.psi_minus, "+"
        elif s.psi_minus % p == 0:
            half, other, side = s.psi_minus, s.psi_plus, "-"
        else:
            raise InvariantViolation("ord_%d(2) = %d but %d divides neither psi half" % (p, rec.m, p))
        if p == half:
            continue
        # half = p * r with r > 1; need a third prime factor somewhere
        if other > 1:
            return CensusEntry(rec.m, p, "C2", "proper divisor of psi%s, other half > 1" % side)
        r = half // p
        if r % p == 0 or classify(r, rec.m).tag is Tag.COMPOSITE:
            return CensusEntry(rec.m, p, "C2", "psi%s = %d * composite" % (side, p))
    return None


def composite_census(x: int, config: CensusConfig = CensusConfig()) -> CensusResult:
    """Count m = ord_p(2), p <= x, whose psi_m is provably composite (C1) or
    provably not a product of two primes (C2), each with an explicit witness."""
    if x < 16:
        raise DomainError("x must be >= 16")
    bound = config.threshold(x)
    entries = []
    for m, bucket in order_map(x).items():
        if m <= bound:
            continue
        rec = cyclotomic_record(m)
        entry = _c2_entry(rec, bucket) if m % 8 == 4 else _c1_entry(rec, bucket)
        if entry is not None:
            entries.append(entry)
    c1 = sum(e.family == "C1" for e in entries)
    return CensusResult(x, config.theta, bound, c1, len(entries) - c1, entries)
