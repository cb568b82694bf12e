import math

import pytest

from cycloprimes.cyclotomic import (aurifeuillian_split, cyclotomic_record, intrinsic_factor, phi_value,
                                    psi_split, split_log_deviation, within_size_bounds)
from cycloprimes.errors import DomainError
from cycloprimes.ntheory import factorize, multiplicative_order


def cyclotomic_at_2_by_roots(m):
    """Independent oracle: prod over primitive m-th roots of unity of (2 - z)."""
    z = 1 + 0j
    for k in range(1, m + 1):
        if math.gcd(k, m) == 1:
            z *= 2 - complex(math.cos(2 * math.pi * k / m), math.sin(2 * math.pi * k / m))
    return round(z.real)


def cyclotomic_at_2_by_division(m):
    """Independent oracle: Phi_m(2) = (2^m - 1) / prod_{d | m, d < m} Phi_d(2)."""
    vals = {}
    for n in range(1, m + 1):
        v = 2**n - 1
        for d in range(1, n):
            if n % d == 0:
                v //= vals[d]
        vals[n] = v
    return vals[m]


@pytest.mark.parametrize("m, expected", [
    (11, 2047),
    (32, 65537),
    (21, (2**21 - 1) * (2 - 1) // ((2**7 - 1) * (2**3 - 1))),
    (1, 1),
    (2, 3),
    (6, 3),
])
def test_phi_value_examples(m, expected):
    assert phi_value(m) == expected


def test_phi_value_21_is_2359():
    assert phi_value(21) == 2359


def test_phi_value_matches_root_product():
    for m in range(1, 41):
        assert phi_value(m) == cyclotomic_at_2_by_roots(m)


def test_phi_value_matches_recursive_division():
    for m in range(1, 200):
        assert phi_value(m) == cyclotomic_at_2_by_division(m)


def test_special_families():
    for p in (3, 5, 7, 13, 31):
        assert phi_value(p) == 2**p - 1
        assert phi_value(2 * p) == (2**p + 1) // 3
    for k in range(6):
        assert phi_value(2 ** (k + 1)) == 2 ** (2**k) + 1


@pytest.mark.parametrize("m, expected", [(18, 3), (12, 1), (6, 3), (1, 1), (64, 1), (20, 5), (21, 7), (889, 127)])
def test_intrinsic_factor(m, expected):
    assert intrinsic_factor(m) == expected


def test_intrinsic_factor_brute_force():
    # a prime p is intrinsic for m iff p | phi_m and ord_p(2) < m
    for m in range(2, 400):
        phi = phi_value(m)
        intrinsic = [p for p in factorize(m) if p > 2 and phi % p == 0 and multiplicative_order(p) < m]
        assert intrinsic_factor(m) == (intrinsic[0] if intrinsic else 1)
        if intrinsic:
            p = intrinsic[0]
            assert p == max(factorize(m))
            assert phi % (p * p) != 0


def test_record_examples():
    r = cyclotomic_record(20)
    assert (r.phi, r.delta, r.psi) == (205, 5, 41)
    assert (r.split.phi_plus, r.split.phi_minus) == (41, 5)
    assert (r.split.psi_plus, r.split.psi_minus) == (41, 1)
    r = cyclotomic_record(6)
    assert (r.phi, r.delta, r.psi, r.split) == (3, 3, 1, None)
    r = cyclotomic_record(7)
    assert (r.phi, r.delta, r.psi, r.split) == (127, 1, 127, None)


def test_aurifeuillian_split_examples():
    assert aurifeuillian_split(20, 205) == (41, 5)
    assert aurifeuillian_split(28, 3277) == (29, 113)
    assert aurifeuillian_split(4, 5) == (5, 1)
    assert 29 * 113 == 3277 == phi_value(28)
    with pytest.raises(DomainError):
        aurifeuillian_split(12 + 1, phi_value(13))


def test_psi_split_examples():
    assert psi_split(cyclotomic_record(20)) == (41, 1)
    assert psi_split(cyclotomic_record(28)) == (29, 113)
    assert psi_split(cyclotomic_record(12)) == (13, 1)
    with pytest.raises(DomainError):
        psi_split(cyclotomic_record(7))


def test_record_invariants():
    for m in range(1, 700):
        r = cyclotomic_record(m)
        assert r.phi == r.delta * r.psi
        if m >= 2:
            assert within_size_bounds(m, r.phi)
        if r.delta > 1:
            f = factorize(m)
            p = r.delta
            assert p == max(f)
            assert m // p ** f[p] == multiplicative_order(p)
            assert r.phi % p == 0 and r.phi % (p * p) != 0
        if m % 8 == 4:
            s = r.split
            assert s.phi_plus * s.phi_minus == r.phi
            assert s.psi_plus * s.psi_minus == r.psi
        else:
            assert r.split is None


def test_psi_prime_factors_are_one_mod_m():
    for m in range(2, 120):
        psi = cyclotomic_record(m).psi
        if psi < 10**18:
            for p in factorize(psi):
                assert p % m == 1


def test_split_magnitudes_small():
    # both halves are within a few bits of 2^(phi(m)/2)
    for m in range(28, 1200, 8):
        assert split_log_deviation(m) < 3
