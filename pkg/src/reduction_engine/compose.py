"""Primitive elements: collapse several algebraic generators into one.

For generators alpha (root of f_a) and beta (root of f_b), theta = alpha + c*beta
has the monic polynomial R(z) = Res_y(f_a(y), c**n f_b((z - y)/c)), whose
roots are all the sums alpha_i + c*beta_j.  We take the first c in
1, -1, 2, -2, ... for which R is squarefree, i.e. the sums are pairwise
distinct.  Then for each root theta the polynomials f_a(y) and
c**n f_b((theta - y)/c) share exactly one root, so their first subresultant
s1(z)*y + s0(z) is linear with s1(theta) != 0, giving alpha = -s0/s1 in
Q[z]/R.  This holds root by root, so it needs no irreducibility of R.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import upoly
from .irreducibility import CERTIFIED, REDUCIBLE, certify
from .isolation import (
    MAX_BITS,
    START_BITS,
    Disk,
    PrecisionError,
    Rect,
    disk_eval,
    find_root,
    isolating_box,
    precisions,
    root_disk,
    root_disks,
    same_root,
)
from .multipoly import MultiPoly
from .primes import prime_divisors
from .upoly import RatPoly

THETA = "theta"
UNVERIFIED = "unverified"
MAX_MIXING = 64


@dataclass(frozen=True)
class CompositionResult:
    f_theta: tuple
    status: str
    mixing: Mapping[str, int]
    rewrites: Mapping[str, RatPoly]
    denominators: frozenset
    rect: Rect | None
    notes: tuple = field(default=())

    @property
    def degree(self) -> int:
        return len(self.f_theta) - 1

    def to_json(self) -> dict:
        return {
            "f_theta": list(self.f_theta),
            "irreducibility": self.status,
            "mixing": dict(self.mixing),
            "rewrites": {k: {"numerator": list(r.num), "denominator": r.den} for k, r in self.rewrites.items()},
            "excluded_primes": sorted(self.denominators),
            "isolate": self.rect.as_strings() if self.rect else None,
        }


def _mixings():
    k = 1
    while k <= MAX_MIXING:
        yield k
        yield -k
        k += 1


def _shifted(f_b: Sequence[int], c: int) -> list[MultiPoly]:
    """Coefficients in y of c**n f_b((z - y)/c), each a polynomial in z."""
    n = len(f_b) - 1
    zv = ("z",)
    out = [MultiPoly(zv) for _ in range(n + 1)]
    for k, b in enumerate(f_b):
        if not b:
            continue
        w = b * c ** (n - k)
        # (z - y)**k = sum_j C(k, j) z**(k-j) (-y)**j
        for j in range(k + 1):
            coeff = w * math.comb(k, j) * (-1) ** j
            out[j] = out[j] + MultiPoly(zv, {(k - j,): coeff})
    return out


def _as_int_poly(m: MultiPoly) -> tuple:
    top = m.degree("z")
    return upoly.trim(m.terms.get((k,), 0) for k in range(top + 1))


def _reduce(r: RatPoly, f: Sequence[int]) -> RatPoly:
    return r.rem(f) if r.degree >= len(f) - 1 else r


def compose_mod(r: RatPoly, s: RatPoly, f: Sequence[int]) -> RatPoly:
    """r(s(z)) reduced modulo f, over Q."""
    acc: tuple = ()
    s_c = s.coeffs
    for c in reversed(r.coeffs):
        acc = upoly.rem_q(upoly.add(upoly.mul(acc, s_c), (c,) if c else ()), f)
    return RatPoly.from_coeffs(acc)


def relation_holds(f_alpha: Sequence[int], rewrite: RatPoly, f_theta: Sequence[int]) -> bool:
    """Exact check that f_alpha(rewrite(theta)) = 0 in Q[z]/f_theta."""
    return compose_mod(RatPoly(tuple(f_alpha)), rewrite, f_theta).is_zero()


@dataclass(frozen=True)
class PairResult:
    f_theta: tuple
    mixing: tuple[int, int]
    rewrite_a: RatPoly
    rewrite_b: RatPoly
    rect: Rect


def _theta_rect(f_theta, f_a, rect_a, f_b, rect_b, ca, cb, max_bits=MAX_BITS) -> Rect:
    """Isolating rectangle for the root ca*alpha + cb*beta of f_theta."""
    for bits in precisions(START_BITS, max_bits):
        disks = root_disks(tuple(f_theta), bits)
        if disks is None:
            continue
        _, da = root_disk(f_a, rect_a, bits)
        _, db = root_disk(f_b, rect_b, bits)
        target = da.scale(ca) + db.scale(cb)
        hits = [k for k, d in enumerate(disks) if d.meets(target)]
        if len(hits) == 1:
            box = isolating_box(disks, hits[0], bits)
            if box is not None:
                return box
    raise PrecisionError("could not locate the primitive element among the roots")


def compose_pair(f_a: Sequence[int], f_b: Sequence[int], rect_a: Rect, rect_b: Rect) -> PairResult:
    """Primitive element for Q(alpha, beta), alpha and beta named by rectangles."""
    f_a, f_b = tuple(f_a), tuple(f_b)
    for f in (f_a, f_b):
        if upoly.degree(f) < 1 or f[-1] != 1 or not upoly.is_squarefree(f):
            raise ValueError("compose_pair needs monic squarefree polynomials of positive degree")
    theta = RatPoly((0, 1))
    if upoly.degree(f_b) == 1:
        return PairResult(f_a, (1, 0), theta, RatPoly((-f_b[0],)), rect_a)
    if upoly.degree(f_a) == 1:
        return PairResult(f_b, (0, 1), RatPoly((-f_a[0],)), theta, rect_b)
    if f_a == f_b and same_root(f_a, rect_a, rect_b):
        return PairResult(f_a, (1, 0), theta, theta, rect_a)

    fa_y = [MultiPoly.const(("z",), c) for c in f_a]
    for c in _mixings():
        g = _shifted(f_b, c)
        big_r = _as_int_poly(upoly.resultant(fa_y, g))
        if not upoly.is_squarefree(big_r):
            continue
        s1 = upoly.subresultant(fa_y, g, 1)
        if len(s1) != 2:
            # cannot happen when the sums are distinct; try the next c
            continue
        s0p, s1p = _as_int_poly(s1[0]), _as_int_poly(s1[1])
        inv = upoly.invmod_q(s1p, big_r)
        alpha = RatPoly.from_coeffs(upoly.rem_q(upoly.mul(upoly.neg(s0p), inv), big_r))
        beta_num = upoly.sub((0, 1), alpha.coeffs)
        beta = RatPoly.from_coeffs(upoly.scale(beta_num, Fraction(1, c)))
        rect = _theta_rect(big_r, f_a, rect_a, f_b, rect_b, 1, c)
        return PairResult(big_r, (1, c), alpha, beta, rect)
    raise ArithmeticError("no mixing coefficient separated the conjugate sums")


def _split_off_theta(f: tuple, rect: Rect, max_bits=MAX_BITS) -> tuple[tuple, str, list[str]]:
    """Replace f by the irreducible factor vanishing at the root in rect, when found."""
    notes = []
    while True:
        verdict = certify(f)
        if verdict.status == CERTIFIED:
            return f, CERTIFIED, notes
        if verdict.status != REDUCIBLE:
            notes.append(f"irreducibility of {upoly.format_poly(f)} not certified ({verdict.method})")
            return f, UNVERIFIED, notes
        h = verdict.factor
        cof = upoly.exact_div(f, h)
        chosen = None
        for bits in precisions(START_BITS, max_bits):
            try:
                _, d = root_disk(f, rect, bits)
            except PrecisionError:
                break
            if not disk_eval(h, d).contains_zero():
                chosen = cof
            elif not disk_eval(cof, d).contains_zero():
                chosen = h
            if chosen is not None:
                break
        if chosen is None:
            notes.append(f"could not decide which factor of {upoly.format_poly(f)} vanishes at theta")
            return f, UNVERIFIED, notes
        notes.append(f"replaced {upoly.format_poly(f)} by its factor {upoly.format_poly(chosen)}")
        f = upoly.primitive(chosen)


def compose_all(algebraics: Sequence) -> CompositionResult:
    """Fold compose_pair over generators given as (name, minpoly, rect) triples.

    With no generators the result is the trivial theta = 0, f_theta = z.
    """
    if not algebraics:
        return CompositionResult((0, 1), CERTIFIED, {}, {}, frozenset(), Rect.from_values([0, 0, 0, 0]))
    name0, f0, rect0 = algebraics[0]
    f, rect = tuple(f0), rect0
    if rect is None:
        rect = find_root(f)[1]
    rewrites = {name0: RatPoly((0, 1))}
    mixing = {name0: 1}
    minpolys = {name0: f}
    notes: list[str] = []
    f, status, more = _split_off_theta(f, rect)
    notes += more
    for name, fb, rect_b in algebraics[1:]:
        fb = tuple(fb)
        if rect_b is None:
            rect_b = find_root(fb)[1]
        pair = compose_pair(f, fb, rect, rect_b)
        ca, cb = pair.mixing
        new_f = pair.f_theta
        new_rect = pair.rect
        new_f, status, more = _split_off_theta(new_f, new_rect)
        notes += more
        rw_a = _reduce(pair.rewrite_a, new_f)
        rewrites = {k: compose_mod(r, rw_a, new_f) for k, r in rewrites.items()}
        rewrites[name] = _reduce(pair.rewrite_b, new_f)
        mixing = {k: ca * m for k, m in mixing.items()}
        mixing[name] = cb
        minpolys[name] = fb
        f, rect = new_f, new_rect
    for k, r in rewrites.items():
        if not relation_holds(minpolys[k], r, f):
            raise ArithmeticError(f"rewrite of {k} fails its defining relation")
    dens = frozenset().union(*(prime_divisors(r.den) for r in rewrites.values()))
    return CompositionResult(f, status, mixing, rewrites, dens, rect, tuple(notes))


def rewrite_element(e: MultiPoly, comp: CompositionResult, transcendentals: Sequence[str] = ()) -> MultiPoly:
    """Image of e in Q[transcendentals][theta]/f_theta, lowest-degree representative."""
    out_vars = tuple(transcendentals) + (THETA,)
    alg_idx = [i for i, v in enumerate(e.vars) if v in comp.rewrites]
    tr_idx = [e.vars.index(v) if v in e.vars else None for v in transcendentals]
    f = comp.f_theta
    pow_cache: dict = {}
    mono_cache: dict = {}

    def rw_pow(i, k):
        key = (i, k)
        if key not in pow_cache:
            r = comp.rewrites[e.vars[i]]
            if k == 0:
                pow_cache[key] = (Fraction(1),)
            elif k == 1:
                pow_cache[key] = upoly.rem_q(r.coeffs, f)
            else:
                pow_cache[key] = upoly.mulmod_q(rw_pow(i, k - 1), rw_pow(i, 1), f)
        return pow_cache[key]

    terms: dict = {}
    for exps, c in e.terms.items():
        akey = tuple(exps[i] for i in alg_idx)
        if akey not in mono_cache:
            acc: tuple = (Fraction(1),)
            for i in alg_idx:
                if exps[i]:
                    acc = upoly.mulmod_q(acc, rw_pow(i, exps[i]), f)
            mono_cache[akey] = acc
        base = tuple(exps[j] if j is not None else 0 for j in tr_idx)
        for k, a in enumerate(mono_cache[akey]):
            if a:
                key = base + (k,)
                terms[key] = terms.get(key, 0) + c * a
    for i, v in enumerate(e.vars):
        if v not in comp.rewrites and v not in transcendentals and any(t[i] for t in e.terms):
            raise ValueError(f"generator {v} is not covered by the composition")
    return MultiPoly(out_vars, terms)
