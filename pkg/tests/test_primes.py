import sympy
from hypothesis import given
from hypothesis import strategies as st

from reduction_engine.primes import factorint, is_probable_prime, next_prime, prime_divisors, primes_in_range


def test_primes_in_range_matches_sympy():
    assert [int(p) for p in primes_in_range(2, 10**4)] == list(sympy.primerange(2, 10**4 + 1))
    lo = 10**7 - 1000
    assert [int(p) for p in primes_in_range(lo, 10**7 + 1000)] == list(sympy.primerange(lo, 10**7 + 1001))


@given(st.integers(-10, 10**12))
def test_primality(n):
    assert is_probable_prime(n) == sympy.isprime(n)


@given(st.integers(1, 10**15))
def test_factorint(n):
    assert factorint(n) == sympy.factorint(n)
    assert prime_divisors(n) == set(sympy.factorint(n))


def test_next_prime():
    assert next_prime(10**12) == sympy.nextprime(10**12 - 1)
