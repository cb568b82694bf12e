from fractions import Fraction

import pytest

from cycloprimes.cyclotomic import cyclotomic_record
from cycloprimes.errors import DomainError
from cycloprimes.witnesses import (CensusConfig, composite_census, enumerate_L_d, enumerate_sophie_germain,
                                   order_map, sophie_germain_composite)


def is_prime(n):
    return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))


def brute_order(p):
    k, x = 1, 2
    while x != 1:
        x = x * 2 % p
        k += 1
    return k


OPEN = CensusConfig(threshold_override=0)


def test_certificate_p11():
    c = sophie_germain_composite(11)
    assert c.q == 23 and c.divides and c.proper and c.valid
    assert (2**11 - 1) % 23 == 0


def test_certificate_p23():
    c = sophie_germain_composite(23)
    assert c.q == 47 and pow(2, 23, 47) == 1 and c.valid
    assert c.q_mod8 == 7 and c.jacobi2q == 1


def test_certificate_rejections():
    with pytest.raises(DomainError, match="p > 3"):
        sophie_germain_composite(3)
    with pytest.raises(DomainError):
        sophie_germain_composite(13)  # 1 mod 4
    with pytest.raises(DomainError):
        sophie_germain_composite(7)  # 15 is not prime


def brute_sophie(limit):
    return [p for p in range(5, limit + 1) if is_prime(p) and p % 4 == 3 and is_prime(2 * p + 1)]


@pytest.mark.parametrize("limit", [10, 30, 100, 2000])
def test_enumerate_matches_scan(limit):
    assert [c.p for c in enumerate_sophie_germain(limit)] == brute_sophie(limit)


def test_enumerate_examples():
    assert [c.p for c in enumerate_sophie_germain(30)] == [11, 23]
    assert enumerate_sophie_germain(10) == []
    assert any(c.p == 83 and c.q == 167 for c in enumerate_sophie_germain(100))


def test_order_map_examples():
    assert 23 in order_map(25)[11].witnesses
    assert order_map(10)[2].witnesses == (3,)
    assert 59 in order_map(100)[58].witnesses


def test_order_map_properties():
    buckets = order_map(3000)
    seen = []
    for m, b in buckets.items():
        for p in b.witnesses:
            assert p % m == 1 and brute_order(p) == m
            seen.append(p)
    assert sorted(seen) == [p for p in range(3, 3001) if is_prime(p)]


def test_order_map_small_x():
    with pytest.raises(DomainError):
        order_map(2)


def test_L_d_examples():
    got = enumerate_L_d(100, 1, OPEN)
    assert got == [p for p in (59, 67, 83) if brute_order(p) == p - 1]
    assert 59 in got and 67 in got
    assert enumerate_L_d(100, 1) == []


def test_L_d_d2_property():
    got = enumerate_L_d(10**4, 2, OPEN)
    assert got
    for p in got:
        assert pow(2, (p - 1) // 2, p) == 1
        assert brute_order(p) == (p - 1) // 2


def test_L_d_is_subset_of_candidates():
    x = 5000
    cand = {p for p in range(x // 2 + 1, x + 1) if is_prime(p) and p % 4 == 3}
    for d in (1, 2, 3, 6):
        got = enumerate_L_d(x, d, OPEN)
        assert set(got) <= cand
        assert got == sorted(p for p in cand if (p - 1) % d == 0 and brute_order(p) == (p - 1) // d)


def test_threshold_reading():
    cfg = CensusConfig()
    assert cfg.threshold(100) == pytest.approx(5 * 10 * 4.605170185988092**2)
    assert CensusConfig(threshold_override=7).threshold(100) == 7
    with pytest.raises(DomainError):
        CensusConfig(theta=Fraction(1, 2))


def test_census_x25_has_m11():
    res = composite_census(25, OPEN)
    entry = {e.m: e for e in res.witnessed_m}[11]
    assert entry.witness == 23 and entry.family == "C1"


def test_census_excludes_prime_psi():
    res = composite_census(16, OPEN)
    assert 2 not in {e.m for e in res.witnessed_m}  # psi_2 = 3 is prime


def test_census_default_threshold_is_empty_at_desk_scale():
    res = composite_census(1000)
    assert res.threshold > 1000 and res.witnessed_m == []


def test_census_witnesses_reverify():
    res = composite_census(1000, OPEN)
    assert res.c1_composite_count >= 31
    assert res.c1_composite_count + res.c2_not_two_prime_count == len(res.witnessed_m)
    for e in res.witnessed_m:
        rec = cyclotomic_record(e.m)
        assert e.family == ("C2" if e.m % 8 == 4 else "C1")
        assert rec.psi % e.witness == 0 and 1 < e.witness < rec.psi
        assert brute_order(e.witness) == e.m
        if e.family == "C2":
            s = rec.split
            half = s.psi_plus if s.psi_plus % e.witness == 0 else s.psi_minus
            assert half > e.witness


def test_census_json_lines():
    res = composite_census(100, OPEN)
    lines = res.to_json_lines().splitlines()
    assert len(lines) == 1 + len(res.witnessed_m)
    assert '"c1_composite_count":%d' % res.c1_composite_count in lines[0]
