import gmpy2
import pytest

from cycloprimes.cyclotomic import cyclotomic_record
from cycloprimes.errors import DomainError
from cycloprimes.ntheory import jacobi, sieve_primes
from cycloprimes.primality import (PipelineConfig, Tag, classify, fermat_test, is_perfect_power,
                                   selfridge_parameters, strong_lucas, strong_probable_prime,
                                   trial_division_primitive)

# Strong Lucas pseudoprimes with Selfridge parameters below 10^5 (OEIS A217255).
STRONG_LUCAS_PSP = [5459, 5777, 10877, 16109, 18971, 22499, 24569, 25199, 40309, 58519, 75077, 97439]


def naive_strong_lucas(n):
    """Oracle: run the Lucas recurrences term by term up to n + 1."""
    D, P, Q = selfridge_parameters(n)
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    U = [0, 1]
    V = [2, P]
    for k in range(2, n + 2):
        U.append((P * U[-1] - Q * U[-2]) % n)
        V.append((P * V[-1] - Q * V[-2]) % n)
    return U[d] % n == 0 or any(V[d << r] % n == 0 for r in range(s))


@pytest.fixture(scope="module")
def prime_flags():
    table = sieve_primes(10**5)
    flags = bytearray(10**5 + 1)
    for p in table.primes:
        flags[p] = 1
    return flags


def test_fermat_examples():
    assert fermat_test(2047, 2)
    assert not fermat_test(2047, 3)
    assert fermat_test(13, 3)


def test_strong_probable_prime_examples():
    assert strong_probable_prime(2047, 2)
    assert not strong_probable_prime(2047, 3)
    assert strong_probable_prime(65537, 2)
    assert strong_probable_prime(7, 14)  # base multiple of n
    with pytest.raises(DomainError):
        strong_probable_prime(10, 3)


def test_strong_probable_prime_never_rejects_primes(prime_flags):
    for n in range(3, 10**5, 2):
        if prime_flags[n]:
            for a in (2, 3, 5, 7, 10, 12345):
                assert strong_probable_prime(n, a)


def test_strong_lucas_examples():
    assert not strong_lucas(2047)
    assert strong_lucas(127)
    # 5777 = 53 * 109 is composite but a strong Lucas pseudoprime; BPSW
    # still catches it through the base-2 strong test.
    assert 5777 == 53 * 109
    assert strong_lucas(5777)
    assert not strong_probable_prime(5777, 2)
    assert classify(5777).tag is Tag.COMPOSITE
    with pytest.raises(DomainError):
        strong_lucas(49)


def test_selfridge_parameters():
    assert selfridge_parameters(2047)[0] in (5, -7, 9, -11, 13)
    D, P, Q = selfridge_parameters(5777)
    assert jacobi(D, 5777) == -1 and P == 1 and Q == (1 - D) // 4


def test_strong_lucas_matches_naive_recurrence():
    for n in list(range(3, 1500, 2)) + STRONG_LUCAS_PSP[:3]:
        if gmpy2.is_square(n) or selfridge_parameters(n) is None:
            continue
        assert strong_lucas(n) == naive_strong_lucas(n), n


def test_strong_lucas_pseudoprimes_below_1e5(prime_flags):
    found = [n for n in range(3, 10**5, 2)
             if not gmpy2.is_square(n) and strong_lucas(n) and not prime_flags[n]]
    assert found == STRONG_LUCAS_PSP


@pytest.mark.parametrize("n, expected", [(8, (2, 3)), (9, (3, 2)), (2047, None), (1, None), (64, (2, 6)),
                                         (3**40, (3, 40)), (6**5, (6, 5)), (2**89 - 1, None)])
def test_is_perfect_power(n, expected):
    assert is_perfect_power(n) == expected


def test_trial_division_primitive():
    assert trial_division_primitive(2047, 11, 10**4) == 23
    assert trial_division_primitive(127, 7, 10**4) is None
    assert cyclotomic_record(36).psi == 4033 == 37 * 109
    assert trial_division_primitive(4033, 36, 10**4) == 37


def test_classify_examples():
    c = classify(2047, 11)
    assert c.tag is Tag.COMPOSITE and c.witness == 23
    assert classify(1, 6).tag is Tag.UNIT
    assert classify(131071, 17).tag is Tag.PROVEN_PRIME


def test_classify_phi_with_intrinsic_factor():
    r = cyclotomic_record(21)
    c = classify(r.phi, 21)
    assert c.tag is Tag.COMPOSITE and c.witness == 7
    assert classify(r.psi, 21).is_prime


def test_classify_large_probable_prime():
    c = classify(2**521 - 1, 521)
    assert c.tag is Tag.PROBABLE_PRIME
    # M523 has no prime factor below 10^60, so no witness is available
    c = classify(2**523 - 1, 523)
    assert c.tag is Tag.COMPOSITE and c.witness is None and c.method == "fermat-3"
    c = classify(2**29 - 1, 29)
    assert c.witness == 233


def test_classify_small_inputs():
    assert classify(2).tag is Tag.PROVEN_PRIME
    assert classify(3).tag is Tag.PROVEN_PRIME
    assert classify(4).witness == 2
    assert classify(9).tag is Tag.COMPOSITE
    with pytest.raises(DomainError):
        classify(0)


def test_classify_without_trial_division_relies_on_bpsw(prime_flags):
    cfg = PipelineConfig(trial_bound=2)
    for n in range(3, 3 * 10**4):
        c = classify(n, config=cfg)
        assert c.is_prime == bool(prime_flags[n]), n
        if c.witness is not None:
            assert 1 < c.witness < n and n % c.witness == 0


def test_pipeline_short_circuits_on_trial_division():
    for m in range(2, 300):
        r = cyclotomic_record(m)
        c = classify(r.psi, m)
        if c.method == "trial-division":
            assert 1 < c.witness < r.psi and r.psi % c.witness == 0
            assert c.witness % m == 1


def test_config_validation():
    with pytest.raises(DomainError):
        PipelineConfig(trial_bound=1)
    with pytest.raises(DomainError):
        PipelineConfig(proven_threshold=2**100)
