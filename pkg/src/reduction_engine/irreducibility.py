"""Sufficient tests for irreducibility over Q, short of full factorization.

In order: degree one; rational-root test up to degree 3; factorization
patterns modulo small primes (a single factor, or incompatible factor
degrees across primes); and, for monic polynomials of moderate degree,
certified root subsets: a monic factor of degree d is the product of d of
the roots, so it exists only if some d-subset has all-integer elementary
symmetric functions.  Disk enclosures exclude subsets or expose the factor,
which is then confirmed by exact division.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import upoly
from .isolation import MAX_BITS, Disk, precisions, root_disks
from .modpoly import RAMIFIED, factor_pattern
from .primes import factorint, primes_in_range

CERTIFIED = "certified"
REDUCIBLE = "reducible"
ATTESTED = "attested"

PRIME_BOUND = 1000
MAX_SUBSETS = 20000


@dataclass(frozen=True)
class Irreducibility:
    status: str
    method: str
    factor: tuple | None = None


def _divisors(n: int) -> list[int]:
    divs = [1]
    for q, e in factorint(n).items():
        divs = [d * q**k for d in divs for k in range(e + 1)]
    return divs


def rational_roots(f: Sequence[int]) -> list[Fraction]:
    f = upoly.trim(f)
    roots = []
    if f and f[0] == 0:
        roots.append(Fraction(0))
        while f and f[0] == 0:
            f = f[1:]
    if len(f) < 2:
        return roots
    for a in _divisors(abs(f[0])):
        for b in _divisors(abs(f[-1])):
            for s in (1, -1):
                r = Fraction(s * a, b)
                if r not in roots and upoly.evaluate(f, r) == 0:
                    roots.append(r)
    return sorted(roots)


def _subset_sums(pattern: Sequence[int]) -> set[int]:
    sums = {0}
    for d in pattern:
        sums |= {s + d for s in sums}
    return sums


def _subset_factor(f: tuple, roots: Sequence[Disk]):
    """'excluded', 'ambiguous' or the integer factor whose roots these are."""
    trace = Disk.exact(0)
    for r in roots:
        trace = trace + r
    cands = trace.integer_candidates()
    if not cands:
        return "excluded"
    poly = [Disk.exact(1)]
    for r in roots:
        shifted = [Disk.exact(0)] + poly
        for k, c in enumerate(poly):
            shifted[k] = shifted[k] - c * r
        poly = shifted
    coeffs = []
    for c in poly[:-1]:
        cands = c.integer_candidates()
        if not cands:
            return "excluded"
        if len(cands) > 1:
            return "ambiguous"
        coeffs.append(cands[0])
    h = tuple(coeffs) + (1,)
    try:
        upoly.exact_div(f, h)
    except ArithmeticError:
        return "excluded"
    return h


def certify(f: Sequence[int], prime_bound: int = PRIME_BOUND, max_subsets: int = MAX_SUBSETS,
            max_bits: int = 1024) -> Irreducibility:
    f = upoly.trim(f)
    n = upoly.degree(f)
    if n < 1:
        raise ValueError("irreducibility is only defined for non-constant polynomials")
    if n == 1:
        return Irreducibility(CERTIFIED, "degree one")
    g = upoly.gcd_z(f, upoly.derivative(f))
    if upoly.degree(g) > 0:
        return Irreducibility(REDUCIBLE, "repeated factor", g)
    if n <= 3:
        roots = rational_roots(f)
        if roots:
            r = roots[0]
            return Irreducibility(REDUCIBLE, "rational root", (-r.numerator, r.denominator))
        return Irreducibility(CERTIFIED, "rational-root test")
    allowed = set(range(1, n))
    for p in primes_in_range(2, prime_bound):
        pat = factor_pattern(f, p)
        if pat == RAMIFIED:
            continue
        if pat == (n,):
            return Irreducibility(CERTIFIED, f"irreducible mod {p}")
        allowed &= _subset_sums(pat)
        if not allowed:
            return Irreducibility(CERTIFIED, "factor degrees incompatible across primes")
    if f[-1] != 1:
        return Irreducibility(ATTESTED, "no certificate found")
    sizes = sorted(d for d in allowed if d <= n // 2)
    if sum(math.comb(n, d) for d in sizes) > max_subsets:
        return Irreducibility(ATTESTED, "too many root subsets to examine")
    for bits in precisions(64, min(max_bits, MAX_BITS)):
        disks = root_disks(f, bits)
        if disks is None:
            continue
        ambiguous = False
        for d in sizes:
            for subset in itertools.combinations(disks, d):
                res = _subset_factor(f, subset)
                if res == "ambiguous":
                    ambiguous = True
                elif res != "excluded":
                    return Irreducibility(REDUCIBLE, "integer root subset", res)
        if not ambiguous:
            return Irreducibility(CERTIFIED, "root subsets")
    return Irreducibility(ATTESTED, "root subsets undecided at maximum precision")
