"""Invariant suites over ranges of m, shared by the CLI ``check`` command and tests."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Optional

import gmpy2

from .cyclotomic import cyclotomic_record, phi_value, split_log_deviation, within_size_bounds
from .errors import DomainError
from .heuristics import h_identity_check, phi_ratio_sum_below, small_totient_count
from .ntheory import divisors
from .primality import (DEFAULT_CONFIG, PipelineConfig, Tag, classify, fermat_test,
                        strong_lucas, strong_probable_prime)
from .survey import ResultRecord
from .witnesses import enumerate_sophie_germain

# measured maximum for m <= 5000 is 2.413 (m = 660)
SPLIT_DEVIATION_BOUND = 3.0


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self):
        return "%s %s%s" % ("PASS" if self.ok else "FAIL", self.name, ": " + self.detail if self.detail else "")


def _first_failures(bad, limit=5):
    shown = ", ".join(map(str, bad[:limit]))
    return "failures at " + shown + (" ..." if len(bad) > limit else "")


def _phi_values(limit):
    return {m: phi_value(m) for m in range(1, limit + 1)}


def check_identities(limit: int = 5000) -> list[CheckResult]:
    phis = _phi_values(limit)
    bad = []
    for m in range(1, limit + 1):
        prod = 1
        for d in divisors(m):
            prod *= phis[d]
        if prod != (1 << m) - 1:
            bad.append(m)
    return [CheckResult("product over divisors equals 2^m - 1, m <= %d" % limit, not bad,
                        _first_failures(bad) if bad else "")]


def check_bounds(limit: int = 5000) -> list[CheckResult]:
    bad = [m for m in range(2, limit + 1) if not within_size_bounds(m, phi_value(m))]
    return [CheckResult("2^(phi(m)-1) <= phi_m < 2^(phi(m)+1), 2 <= m <= %d" % limit, not bad,
                        _first_failures(bad) if bad else "")]


def check_aurifeuille(limit: int = 5000, deviation: float = SPLIT_DEVIATION_BOUND) -> list[CheckResult]:
    algebra = [k for k in range(51)
               if ((1 << 2 * k + 1) + (1 << k + 1) + 1) * ((1 << 2 * k + 1) - (1 << k + 1) + 1)
               != (1 << 4 * k + 2) + 1]
    product, trivial, magnitude = [], [], []
    worst = 0.0
    for m in range(4, limit + 1, 8):
        rec = cyclotomic_record(m)
        s = rec.split
        if s.phi_plus * s.phi_minus != rec.phi or s.psi_plus * s.psi_minus != rec.psi:
            product.append(m)
        k = (m - 4) // 8
        if k >= 3:
            if min(s.phi_plus, s.phi_minus) <= 1:
                trivial.append(m)
            dev = split_log_deviation(m, rec)
            worst = max(worst, dev)
            if dev > deviation:
                magnitude.append(m)
    return [
        CheckResult("(2^(2k+1)+2^(k+1)+1)(2^(2k+1)-2^(k+1)+1) = 2^(4k+2)+1, k <= 50", not algebra,
                    _first_failures(algebra) if algebra else ""),
        CheckResult("split halves multiply back, m = 4 mod 8, m <= %d" % limit, not product,
                    _first_failures(product) if product else ""),
        CheckResult("both halves nontrivial for k >= 3, m <= %d" % limit, not trivial,
                    _first_failures(trivial) if trivial else ""),
        CheckResult("|log2 half - phi(m)/2| <= %g for k >= 3" % deviation, not magnitude,
                    "max deviation %.4f" % worst if not magnitude else _first_failures(magnitude)),
    ]


def check_coprime(limit: int = 300) -> list[CheckResult]:
    psis = [cyclotomic_record(m).psi for m in range(1, limit + 1)]
    bad = [(i + 1, j + 1) for i in range(limit) for j in range(i + 1, limit) if gcd(psis[i], psis[j]) != 1]
    return [CheckResult("psi_m pairwise coprime, m <= %d" % limit, not bad, _first_failures(bad) if bad else "")]


def check_bang(limit: int = 5000) -> list[CheckResult]:
    bad = [m for m in range(1, limit + 1) if m not in (1, 6) and cyclotomic_record(m).psi <= 1]
    units = [m for m in (1, 6) if m <= limit and cyclotomic_record(m).psi != 1]
    return [CheckResult("psi_m > 1 for m <= %d except m = 1, 6" % limit, not bad and not units,
                        _first_failures(bad + units) if bad or units else "")]


def check_pseudoprime(limit: int = 4096, config: PipelineConfig = DEFAULT_CONFIG,
                      records: Optional[Iterable[ResultRecord]] = None) -> list[CheckResult]:
    """Composite psi_m pass base 2 but are rejected by base 3 or the strong tests.

    Also: everything classified prime passes the base-3 Fermat test.
    """
    tags = {r.m: r.class_psi for r in records} if records is not None else {}
    not_base2, not_rejected, prime_fails_3 = [], [], []
    composites = 0
    for m in range(2, limit + 1):
        rec = cyclotomic_record(m)
        tag = tags.get(m) or classify(rec.psi, m, config).tag
        n = rec.psi
        if tag is Tag.COMPOSITE:
            composites += 1
            if not fermat_test(n, 2):
                not_base2.append(m)
            rejected = (not fermat_test(n, 3) or gmpy2.is_square(n)
                        or not strong_probable_prime(n, 2) or not strong_lucas(n))
            if not rejected:
                not_rejected.append(m)
        elif tag.is_prime and not fermat_test(n, 3):
            prime_fails_3.append(m)
    return [
        CheckResult("composite psi_m are base-2 pseudoprimes (%d composites, m <= %d)" % (composites, limit),
                    not not_base2, _first_failures(not_base2) if not_base2 else ""),
        CheckResult("composite psi_m rejected by base 3 or strong tests", not not_rejected,
                    _first_failures(not_rejected) if not_rejected else ""),
        CheckResult("prime-classified psi_m pass base 3", not prime_fails_3,
                    _first_failures(prime_fails_3) if prime_fails_3 else ""),
    ]


def check_phi_ratio(zs: Iterable[int] = (10**3, 10**4, 10**5, 10**6)) -> list[CheckResult]:
    return [CheckResult("sum (n/phi(n))^2 < 4.5 z, z = %d" % z, phi_ratio_sum_below(z, Fraction(9, 2) * z))
            for z in zs]


def check_totient(zs: Iterable[int] = (10**3, 10**4, 10**5),
                  deltas: Iterable = (Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(1, 8))) -> list[CheckResult]:
    out = []
    deltas = list(deltas)
    for z in zs:
        for d in deltas:
            count = small_totient_count(z, d)
            bound = Fraction(9, 2) * d * d * z
            out.append(CheckResult("#{n <= %d: phi(n)/n <= %s} < 4.5 delta^2 z" % (z, d), count < bound,
                                   "%d < %s" % (count, float(bound))))
    return out


def check_h_identity(limit: int = 10**4) -> list[CheckResult]:
    bad = [j for j in range(1, limit + 1) if not h_identity_check(j)]
    return [CheckResult("(j/phi(j))^2 = sum_{d|j} h(d), j <= %d" % limit, not bad,
                        _first_failures(bad) if bad else "")]


def check_sophie(limit: int = 10**5) -> list[CheckResult]:
    certs = enumerate_sophie_germain(limit)
    bad = [c.p for c in certs if not c.valid]
    return [CheckResult("Sophie Germain divisors of 2^p - 1, p <= %d (%d certificates)" % (limit, len(certs)),
                        not bad and bool(certs), _first_failures(bad) if bad else "first p: %s" %
                        ", ".join(str(c.p) for c in certs[:5]))]


SUITES: dict[str, Callable[..., list[CheckResult]]] = {
    "identities": check_identities,
    "bounds": check_bounds,
    "aurifeuille": check_aurifeuille,
    "coprime": check_coprime,
    "bang": check_bang,
    "pseudoprime": check_pseudoprime,
    "phi-ratio": check_phi_ratio,
    "totient": check_totient,
    "h-identity": check_h_identity,
    "sophie": check_sophie,
}


def run_suite(name: str, limit: Optional[int] = None, z: Optional[int] = None) -> list[CheckResult]:
    """Run one named suite; ``limit`` bounds m (or j, p), ``z`` the totient sums."""
    if name == "all":
        return [r for s in SUITES for r in run_suite(s, limit, z)]
    if name not in SUITES:
        raise DomainError("unknown suite %r" % name)
    fn = SUITES[name]
    if name in ("phi-ratio", "totient"):
        return fn((z,)) if z is not None else fn()
    return fn(limit) if limit is not None else fn()
