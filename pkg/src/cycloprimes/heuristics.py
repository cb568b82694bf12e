"""Density model for cyclotomic primes and totient-ratio sums.

Modelling psi_m as a random integer near 2^phi(m) with no prime factor below m
gives a "probability" of primality of ``e^gamma log m / (phi(m) log 2)``.
Summed over m <= 2^k (m != 4 mod 8) this grows like c k^2 with

    c = 5/12 e^gamma zeta(2) zeta(3) / zeta(6) log 2.

The remaining functions check two elementary inequalities about n/phi(n)
exactly, using integer or rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .ntheory import divisors, euler_phi, factorize, mobius, totient_table

EULER_GAMMA = 0.57721566490153286060651209008240243
LOG2 = math.log(2)
DENSITY_K_MAX = 20


@dataclass(frozen=True)
class DensityReport:
    k: int
    sum: float
    index_set: str
    predicted_c_ratio: float

    def as_dict(self):
        return {"k": self.k, "sum": self.sum, "index_set": self.index_set,
                "predicted_c_ratio": self.predicted_c_ratio}


def density(m: int) -> float:
    if m < 2:
        raise DomainError("density needs m >= 2")
    return math.exp(EULER_GAMMA) * math.log(m) / (euler_phi(m) * LOG2)


def density_sum(k: int, exclude_4_mod_8: bool = True) -> DensityReport:
    if not 1 <= k <= DENSITY_K_MAX:
        raise DomainError("k must lie in [1, %d]" % DENSITY_K_MAX)
    top = 1 << k
    phi = totient_table(top)
    scale = math.exp(EULER_GAMMA) / LOG2
    terms = (math.log(m) / phi[m] for m in range(2, top + 1)
             if not (exclude_4_mod_8 and m % 8 == 4))
    total = scale * math.fsum(terms)
    label = "m != 4 (mod 8)" if exclude_4_mod_8 else "all m"
    return DensityReport(k, total, label, total / k**2)


@dataclass(frozen=True)
class ConstantReport:
    value: float
    lower: float
    upper: float
    zeta3_lower: float
    zeta3_upper: float

    @property
    def width(self):
        return self.upper - self.lower


def zeta3_bracket(terms: int = 10_000) -> tuple[float, float]:
    """Partial sum of 1/n^3 plus integral bounds on the tail.

    sum_{n>N} 1/n^3 lies between 1/(2(N+1)^2) and 1/(2N^2).
    """
    partial = math.fsum(1.0 / n**3 for n in range(1, terms + 1))
    return partial + 0.5 / (terms + 1) ** 2, partial + 0.5 / terms**2


def _c_from_zeta3(z3):
    zeta2 = math.pi**2 / 6
    zeta6 = math.pi**6 / 945
    return 5 / 12 * math.exp(EULER_GAMMA) * zeta2 * z3 / zeta6 * LOG2


def constant_c(terms: int = 10_000) -> ConstantReport:
    lo, hi = zeta3_bracket(terms)
    return ConstantReport(_c_from_zeta3((lo + hi) / 2), _c_from_zeta3(lo), _c_from_zeta3(hi), lo, hi)


def phi_ratio_sum(z: int) -> float:
    """sum_{n <= z} (n / phi(n))^2, as a float (see :func:`phi_ratio_sum_below`)."""
    if z < 1:
        raise DomainError("z must be >= 1")
    phi = totient_table(z)
    return math.fsum((n / phi[n]) ** 2 for n in range(1, z + 1))


def phi_ratio_sum_below(z: int, bound: Fraction) -> bool:
    """Exact decision of sum_{n <= z} (n/phi(n))^2 < bound.

    Each term is rounded up on a 2^64 fixed-point grid, so the integer total is
    an upper bound; if it is below bound the inequality is proved.  Otherwise
    the rounded-down total decides, and ties fall back to exact rationals.
    """
    phi = totient_table(z)
    shift = 64
    hi = lo = 0
    for n in range(1, z + 1):
        q, r = divmod((n * n) << shift, phi[n] * phi[n])
        lo += q
        hi += q + (r > 0)
    bound = Fraction(bound)
    scaled = bound * (1 << shift)
    if hi < scaled:
        return True
    if lo >= scaled:
        return False
    exact = sum(Fraction(n * n, phi[n] * phi[n]) for n in range(1, z + 1))
    return exact < bound


def _h(d: int) -> Fraction:
    """Multiplicative h supported on squarefree d, h(p) = (2p - 1)/(p - 1)^2."""
    out = Fraction(1)
    for p, e in factorize(d).items():
        if e > 1:
            return Fraction(0)
        out *= Fraction(2 * p - 1, (p - 1) ** 2)
    return out


def h_identity_check(j: int) -> bool:
    """(j / phi(j))^2 == sum over squarefree d | j of h(d), exactly."""
    if j < 1:
        raise DomainError("j must be >= 1")
    lhs = Fraction(j, euler_phi(j)) ** 2
    rhs = sum(_h(d) for d in divisors(j) if mobius(d) != 0)
    return lhs == rhs


def small_totient_count(z: int, delta) -> int:
    """#{n <= z : phi(n)/n <= delta}, compared exactly."""
    if z < 1:
        raise DomainError("z must be >= 1")
    # floats are read by their decimal repr so 0.3 means 3/10
    delta = Fraction(str(delta)) if isinstance(delta, float) else Fraction(delta)
    if not 0 < delta <= 1:
        raise DomainError("delta must lie in (0, 1]")
    phi = totient_table(z)
    a, b = delta.numerator, delta.denominator
    return sum(1 for n in range(1, z + 1) if phi[n] * b <= a * n)
