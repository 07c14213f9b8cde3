"""Polynomials over Z/p: Frobenius powers, roots and factorization patterns.

Coefficient lists are low-to-high residues in [0, p) with a non-zero
leading entry.  Randomized equal-degree splitting draws from a generator
seeded by (coefficients, p, attempt), so every output is reproducible.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import upoly

EXHAUSTIVE_ROOT_LIMIT = 1 << 16

RAMIFIED = "ramified"


@dataclass(frozen=True)
class ModPoly:
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim([c % self.p for c in self.coeffs]))

    @classmethod
    def from_ints(cls, coeffs: Sequence[int], p: int) -> "ModPoly":
        return cls(p, tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        return _eval(self.coeffs, x, self.p)


def _trim(c: list[int]) -> tuple[int, ...]:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _eval(f: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _reduce(f: Sequence[int], p: int) -> tuple[int, ...]:
    return _trim([c % p for c in f])


def _sub(f, g, p):
    n = max(len(f), len(g))
    return _trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def _mul(f, g, p):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _trim([c % p for c in out])


def _monic(f, p):
    inv = pow(f[-1], -1, p)
    return tuple(c * inv % p for c in f)


def _divmod(f, g, p):
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    q = [0] * max(len(f) - dg, 0)
    for k in range(len(f) - 1 - dg, -1, -1):
        t = r[dg + k] * inv % p
        q[k] = t
        if t:
            for j, c in enumerate(g):
                r[j + k] = (r[j + k] - t * c) % p
        r.pop()
    return _trim(q), _trim(r)


def _rem(f, g, p):
    if len(f) < len(g):
        return tuple(f)
    return _divmod(f, g, p)[1]


def _gcd(f, g, p):
    f, g = tuple(f), tuple(g)
    while g:
        f, g = g, _rem(f, g, p)
    return _monic(f, p) if f else ()


def _derivative(f, p):
    return _trim([i * c % p for i, c in enumerate(f) if i])


def _powmod(base, e, m, p):
    result: tuple = (1,)
    base = _rem(base, m, p)
    while e:
        if e & 1:
            result = _rem(_mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = _rem(_mul(base, base, p), m, p)
    return _rem(result, m, p) if len(m) > 1 else ()


def powmod_x(p: int, g: ModPoly) -> ModPoly:
    """z**p reduced modulo g, by repeated squaring of z."""
    if g.degree < 1:
        raise ValueError("modulus must have positive degree")
    return ModPoly(p, _powmod((0, 1), p, g.coeffs, p))


def _frobenius(f, p):
    return _powmod((0, 1), p, f, p)


def _seeded_rng(f, p, attempt):
    key = repr((tuple(f), p, attempt)).encode()
    return random.Random(int.from_bytes(hashlib.sha256(key).digest()[:8], "big"))


def _split_linear(f, p):
    """Roots of a monic f that is a product of distinct linear factors (p odd)."""
    if len(f) == 1:
        return []
    if len(f) == 2:
        return [(-f[0]) % p]
    attempt = 0
    while True:
        rng = _seeded_rng(f, p, attempt)
        attempt += 1
        shift = rng.randrange(p)
        h = _powmod((shift, 1), (p - 1) // 2, f, p)
        d = _gcd(f, _sub(h, (1,), p), p)
        if 0 < len(d) - 1 < len(f) - 1:
            other = _divmod(f, d, p)[0]
            return _split_linear(d, p) + _split_linear(_monic(other, p), p)


def roots_mod_p(g: ModPoly) -> frozenset[int]:
    """All residues a in [0, p) with g(a) = 0 mod p."""
    p, f = g.p, g.coeffs
    if not f:
        raise ValueError("polynomial vanishes identically mod p")
    if len(f) == 1:
        return frozenset()
    if p < EXHAUSTIVE_ROOT_LIMIT:
        xs = np.arange(p, dtype=np.int64)
        acc = np.zeros(p, dtype=np.int64)
        for c in reversed(f):
            acc = (acc * xs + c) % p
        return frozenset(int(a) for a in np.flatnonzero(acc == 0))
    f = _monic(f, p)
    lin = _gcd(f, _sub(_frobenius(f, p), (0, 1), p), p)
    roots = set()
    if lin and lin[0] == 0:
        roots.add(0)
        lin = lin[1:]
    roots.update(_split_linear(lin, p))
    return frozenset(roots)


def is_fully_split(g: Sequence[int], p: int) -> bool:
    """True iff g mod p is a product of deg(g) distinct linear factors."""
    g = tuple(g)
    if not g:
        raise ValueError("zero polynomial")
    if g[-1] % p == 0:
        return False
    f = _reduce(g, p)
    if len(f) <= 2:
        return True
    if len(_gcd(f, _derivative(f, p), p)) != 1:
        return False
    return _frobenius(f, p) == (0, 1)


def decomposition_type(g: Sequence[int], p: int) -> tuple[int, ...] | str:
    """Sorted degrees of the irreducible factors of g mod p, or RAMIFIED.

    Distinct-degree factorization: the product of the degree-d factors is
    gcd(g, z**(p**d) - z) once smaller degrees are removed.
    """
    g = tuple(g)
    if not g:
        raise ValueError("zero polynomial")
    if not upoly.is_squarefree(g):
        raise ValueError("polynomial is not squarefree over Q")
    return factor_pattern(g, p)


def factor_pattern(g: Sequence[int], p: int) -> tuple[int, ...] | str:
    """`decomposition_type` without the squarefree-over-Q precondition check."""
    if g[-1] % p == 0:
        return RAMIFIED
    f = _monic(_reduce(g, p), p)
    if len(f) > 1 and len(_gcd(f, _derivative(f, p), p)) != 1:
        return RAMIFIED
    degs: list[int] = []
    h: tuple = (0, 1)
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _powmod(h, p, f, p)
        part = _gcd(f, _sub(h, (0, 1), p), p)
        k = len(part) - 1
        if k:
            degs += [d] * (k // d)
            f = _divmod(f, part, p)[0]
            h = _rem(h, f, p)
    if len(f) > 1:
        degs.append(len(f) - 1)
    return tuple(sorted(degs))
