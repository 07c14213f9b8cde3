"""Primality, prime enumeration and integer factorization.

Primality is probabilistic: Miller-Rabin with 64 rounds whose bases are
drawn from a generator seeded by the candidate itself, so answers are
reproducible.
"""

from __future__ import annotations

import math
import random
from collections.abc import Iterator

import numpy as np

MR_ROUNDS = 64

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)

# numpy sieve is used below this bound; segmented sieving above it
_SIEVE_LIMIT = 10**7
_SEGMENT = 1 << 20


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin test with `MR_ROUNDS` deterministic-seeded random bases."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    rng = random.Random(n)
    for _ in range(MR_ROUNDS):
        a = rng.randrange(2, n - 1)
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


def sieve(limit: int) -> np.ndarray:
    """Return all primes <= limit as an int64 array."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for q in range(3, math.isqrt(limit) + 1, 2):
        if flags[q]:
            flags[q * q :: 2 * q] = False
    return np.flatnonzero(flags).astype(np.int64)


def primes_in_range(lo: int, hi: int) -> Iterator[int]:
    """Yield primes p with lo <= p <= hi in ascending order."""
    lo = max(lo, 2)
    if hi < lo:
        return
    if hi <= _SIEVE_LIMIT:
        for p in sieve(hi):
            if p >= lo:
                yield int(p)
        return
    root = math.isqrt(hi)
    if root > _SIEVE_LIMIT:
        # too large to sieve; fall back to testing candidates one at a time
        n = lo
        while n <= hi:
            if is_probable_prime(n):
                yield n
            n += 1
        return
    base = sieve(root)
    start = lo
    while start <= hi:
        stop = min(start + _SEGMENT - 1, hi)
        flags = np.ones(stop - start + 1, dtype=bool)
        for q in base:
            q = int(q)
            if q * q > stop:
                break
            first = max(q * q, -(-start // q) * q)
            flags[first - start :: q] = False
        for off in np.flatnonzero(flags):
            n = start + int(off)
            if n >= 2:
                yield n
        start = stop + 1


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    n = max(n + 1, 2)
    while not is_probable_prime(n):
        n += 1
    return n


def _pollard_brent(n: int, seed: int) -> int:
    rng = random.Random(seed)
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    x = ys = 0
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
            g = math.gcd(q, n)
            k += m
        r *= 2
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g


def factorint(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}; empty for 0 and +-1."""
    n = abs(n)
    out: dict[int, int] = {}
    if n < 2:
        return out
    for q in _SMALL_PRIMES:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    stack = [n] if n > 1 else []
    seed = 0
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = m
        while d in (1, m):
            seed += 1
            d = _pollard_brent(m, seed)
        stack += [d, m // d]
    return dict(sorted(out.items()))


def prime_divisors(n: int) -> frozenset[int]:
    return frozenset(factorint(n))
