"""Cyclotomic values phi_m = Phi_m(2), primitive parts and Aurifeuillian halves.

Vocabulary used throughout the package:

``phi``
    the value of the m-th cyclotomic polynomial at 2.
``delta``
    the intrinsic prime of ``phi`` (the one prime factor whose order of 2 is
    smaller than m), or 1 when there is none.
``psi``
    the primitive part ``phi // delta``; every prime factor is 1 mod m.
``split``
    for m = 8k+4, the Aurifeuillian factorization ``phi = phi_plus * phi_minus``
    coming from ``4x^4 + 1 = (2x^2 + 2x + 1)(2x^2 - 2x + 1)`` at ``x = 2^k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, log2
from typing import Optional

from .errors import DomainError, InvariantViolation
from .ntheory import divisors, euler_phi, factorize, mobius, multiplicative_order


@dataclass(frozen=True)
class Split:
    phi_plus: int
    phi_minus: int
    psi_plus: int
    psi_minus: int


@dataclass(frozen=True)
class CyclotomicRecord:
    m: int
    phi: int
    delta: int
    psi: int
    split: Optional[Split] = None

    @property
    def degree(self):
        """Degree of the cyclotomic polynomial, i.e. Euler's phi(m)."""
        return euler_phi(self.m)


def phi_value(m: int) -> int:
    """Exact Phi_m(2) from the Moebius product over the divisors of m."""
    if m < 1:
        raise DomainError("m must be >= 1, got %d" % m)
    num = den = 1
    for d in divisors(m):
        mu = mobius(m // d)
        if mu == 1:
            num *= (1 << d) - 1
        elif mu == -1:
            den *= (1 << d) - 1
    q, r = divmod(num, den)
    if r:
        raise InvariantViolation("inexact division computing Phi_%d(2)" % m)
    return q


def intrinsic_factor(m: int) -> int:
    """delta_m: the largest prime p of m when m = p^j * ord_p(2), else 1."""
    if m < 1:
        raise DomainError("m must be >= 1, got %d" % m)
    f = factorize(m)
    p = f.largest()
    if p < 3:
        # m = 1 or a power of two; 2 is never intrinsic
        return 1
    return p if m // p ** f[p] == multiplicative_order(p) else 1


def aurifeuillian_split(m: int, phi: int) -> tuple[int, int]:
    """(phi_plus, phi_minus) for m = 8k+4, via gcds with 2^(2k+1) +- 2^(k+1) + 1."""
    if m % 8 != 4:
        raise DomainError("Aurifeuillian split needs m = 4 (mod 8), got %d" % m)
    k = (m - 4) // 8
    high, mid = 1 << (2 * k + 1), 1 << (k + 1)
    plus = gcd(phi, high + mid + 1)
    minus = gcd(phi, high - mid + 1)
    if plus * minus != phi:
        raise InvariantViolation("Aurifeuillian halves of m=%d do not multiply back" % m)
    return plus, minus


def psi_split(record: CyclotomicRecord) -> tuple[int, int]:
    if record.split is None:
        raise DomainError("record for m=%d has no Aurifeuillian split" % record.m)
    s = record.split
    return s.phi_plus // gcd(s.phi_plus, record.delta), s.phi_minus // gcd(s.phi_minus, record.delta)


def cyclotomic_record(m: int) -> CyclotomicRecord:
    phi = phi_value(m)
    delta = intrinsic_factor(m)
    psi, r = divmod(phi, delta)
    if r:
        raise InvariantViolation("delta_%d = %d does not divide phi" % (m, delta))
    split = None
    if m % 8 == 4:
        plus, minus = aurifeuillian_split(m, phi)
        # delta divides phi exactly once, so exactly one half absorbs it
        psi_plus, psi_minus = plus // gcd(plus, delta), minus // gcd(minus, delta)
        if psi_plus * psi_minus != psi:
            raise InvariantViolation("psi halves of m=%d do not multiply to psi" % m)
        split = Split(plus, minus, psi_plus, psi_minus)
    return CyclotomicRecord(m, phi, delta, psi, split)


def within_size_bounds(m: int, phi: int) -> bool:
    """2^(phi(m)-1) <= phi_m < 2^(phi(m)+1), for m >= 2."""
    deg = euler_phi(m)
    return (1 << (deg - 1)) <= phi < (1 << (deg + 1))


def split_log_deviation(m: int, record: Optional[CyclotomicRecord] = None) -> float:
    """max |log2(phi_pm) - phi(m)/2| over the two Aurifeuillian halves."""
    record = record or cyclotomic_record(m)
    if record.split is None:
        raise DomainError("m=%d has no Aurifeuillian split" % m)
    half = record.degree / 2
    return max(abs(_log2_big(h) - half) for h in (record.split.phi_plus, record.split.phi_minus))


def _log2_big(n):
    shift = max(n.bit_length() - 60, 0)
    return log2(n >> shift) + shift
