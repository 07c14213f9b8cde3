"""Certified isolation of the complex roots of integer polynomials.

Approximate roots z_1..z_n come from mpmath and are rounded to dyadic
rationals.  Certification is exact: with the Weierstrass corrections
W_k = f(z_k) / (lc * prod_{j != k} (z_k - z_j)), every root of f lies in
the union of the disks |z - z_k| <= n |W_k|, and a connected component made
of m disks holds exactly m roots (Gerschgorin applied to a matrix whose
characteristic polynomial is f).  When the disks are pairwise disjoint each
one isolates a single root.  Precision doubles from 64 fractional bits
until that happens.

Rectangles (re_lo, re_hi, im_lo, im_hi) name a root independently of the
precision in use.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from . import upoly

START_BITS = 64
MAX_BITS = 4096


class PrecisionError(ArithmeticError):
    """Root separation could not be certified within the precision budget."""


def _sqrt_up(q: Fraction, bits: int) -> Fraction:
    """A dyadic upper bound for sqrt(q), q >= 0, accurate to about 2**-bits."""
    if q <= 0:
        return Fraction(0)
    scale = 1 << (2 * bits)
    n = -(-q.numerator * scale // q.denominator)
    r = math.isqrt(n)
    if r * r < n:
        r += 1
    return Fraction(r, 1 << bits)


@dataclass(frozen=True)
class Rect:
    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction

    @classmethod
    def from_values(cls, values: Sequence) -> "Rect":
        if len(values) != 4:
            raise ValueError("a rectangle needs four endpoints")
        lo_r, hi_r, lo_i, hi_i = (Fraction(str(v)) if isinstance(v, float) else Fraction(v) for v in values)
        if lo_r > hi_r or lo_i > hi_i:
            raise ValueError("rectangle endpoints out of order")
        return cls(lo_r, hi_r, lo_i, hi_i)

    def as_strings(self) -> list[str]:
        return [str(self.re_lo), str(self.re_hi), str(self.im_lo), str(self.im_hi)]

    def meets(self, d: "Disk") -> bool:
        dx = max(self.re_lo - d.re, Fraction(0), d.re - self.re_hi)
        dy = max(self.im_lo - d.im, Fraction(0), d.im - self.im_hi)
        return dx * dx + dy * dy <= d.rad * d.rad

    def contains(self, d: "Disk") -> bool:
        return (
            self.re_lo <= d.re - d.rad
            and d.re + d.rad <= self.re_hi
            and self.im_lo <= d.im - d.rad
            and d.im + d.rad <= self.im_hi
        )


@dataclass(frozen=True)
class Disk:
    """Closed disk with Gaussian-rational centre and rational radius."""

    re: Fraction
    im: Fraction
    rad: Fraction

    @classmethod
    def exact(cls, re, im=0) -> "Disk":
        return cls(Fraction(re), Fraction(im), Fraction(0))

    def abs_up(self, bits: int = 64) -> Fraction:
        """Upper bound on |w| for every w in the disk."""
        return _sqrt_up(self.re * self.re + self.im * self.im, bits) + self.rad

    def __add__(self, other: "Disk") -> "Disk":
        return Disk(self.re + other.re, self.im + other.im, self.rad + other.rad)

    def __neg__(self) -> "Disk":
        return Disk(-self.re, -self.im, self.rad)

    def __sub__(self, other: "Disk") -> "Disk":
        return self + (-other)

    def scale(self, k) -> "Disk":
        k = Fraction(k)
        return Disk(self.re * k, self.im * k, self.rad * abs(k))

    def __mul__(self, other: "Disk") -> "Disk":
        re = self.re * other.re - self.im * other.im
        im = self.re * other.im + self.im * other.re
        if not self.rad and not other.rad:
            return Disk(re, im, Fraction(0))
        rad = self.abs_up() * other.rad + other.abs_up() * self.rad + self.rad * other.rad
        return Disk(re, im, rad)

    def meets(self, other: "Disk") -> bool:
        dx, dy = self.re - other.re, self.im - other.im
        r = self.rad + other.rad
        return dx * dx + dy * dy <= r * r

    def contains_zero(self) -> bool:
        return self.re * self.re + self.im * self.im <= self.rad * self.rad

    def box(self) -> Rect:
        return Rect(self.re - self.rad, self.re + self.rad, self.im - self.rad, self.im + self.rad)

    def integer_candidates(self) -> list[int]:
        """Integers lying in the disk."""
        if abs(self.im) > self.rad:
            return []
        slack = _sqrt_up(self.rad * self.rad - self.im * self.im, 32)
        lo, hi = math.ceil(self.re - slack), math.floor(self.re + slack)
        return list(range(lo, hi + 1)) if hi - lo < 4 else [lo, hi]


def disk_eval(coeffs: Sequence, x: Disk) -> Disk:
    """Enclosure of sum c_k x**k for rational coefficients."""
    acc = Disk.exact(0)
    for c in reversed(coeffs):
        acc = acc * x + Disk.exact(c)
    return acc


def _gauss_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _approximate(f: Sequence[int], bits: int) -> list[tuple[int, int]] | None:
    n = len(f) - 1
    with mpmath.workprec(bits + 32):
        try:
            roots = mpmath.polyroots(list(reversed(f)), maxsteps=100 + 10 * n, extraprec=bits + 2 * n * 8)
        except mpmath.libmp.libhyper.NoConvergence:
            return None
        out = []
        for r in roots:
            c = mpmath.mpc(r)
            out.append((int(mpmath.nint(mpmath.ldexp(c.real, bits))), int(mpmath.nint(mpmath.ldexp(c.imag, bits)))))
    return out


@functools.lru_cache(maxsize=512)
def root_disks(f: tuple, bits: int) -> tuple[Disk, ...] | None:
    """Pairwise disjoint disks, one per root of f, or None if not certified."""
    n = len(f) - 1
    if n < 1:
        return ()
    if n == 1:
        return (Disk.exact(Fraction(-f[0], f[1])),)
    approx = _approximate(f, bits)
    if approx is None or len(set(approx)) < n:
        return None
    S = 1 << bits
    lead = f[-1]
    radii = []
    for k, zk in enumerate(approx):
        # S**n * f(z_k) as a Gaussian integer: Horner in S*z_k, with the
        # coefficient added at step t scaled by S**t
        val = (0, 0)
        spow = 1
        for c in reversed(f):
            val = _gauss_mul(val, zk)
            val = (val[0] + c * spow, val[1])
            spow *= S
        prod = (1, 0)
        for j, zj in enumerate(approx):
            if j != k:
                prod = _gauss_mul(prod, (zk[0] - zj[0], zk[1] - zj[1]))
        num2 = val[0] ** 2 + val[1] ** 2
        den2 = (prod[0] ** 2 + prod[1] ** 2) * lead * lead * S * S
        if den2 == 0:
            return None
        radii.append(_sqrt_up(Fraction(n * n * num2, den2), bits + 8))
    disks = tuple(Disk(Fraction(a, S), Fraction(b, S), r) for (a, b), r in zip(approx, radii))
    for i, j in itertools.combinations(range(n), 2):
        if disks[i].meets(disks[j]):
            return None
    return disks


def isolate(f: Sequence[int], bits: int = START_BITS, max_bits: int = MAX_BITS) -> tuple[int, tuple[Disk, ...]]:
    """Certified isolating disks at the smallest precision >= bits that works."""
    f = tuple(f)
    if not upoly.is_squarefree(f):
        raise ValueError("root isolation needs a squarefree polynomial")
    while bits <= max_bits:
        disks = root_disks(f, bits)
        if disks is not None:
            return bits, disks
        bits *= 2
    raise PrecisionError(f"could not separate the roots of {upoly.format_poly(f)} with {max_bits} bits")


def precisions(bits: int = START_BITS, max_bits: int = MAX_BITS):
    while bits <= max_bits:
        yield bits
        bits *= 2


def locate(disks: Sequence[Disk], rect: Rect) -> int | None:
    """Index of the only disk meeting rect, or None if that is not (yet) clear."""
    hits = [k for k, d in enumerate(disks) if rect.meets(d)]
    return hits[0] if len(hits) == 1 else None


def count_inside(disks: Sequence[Disk], rect: Rect) -> int | None:
    """Number of roots in rect, or None if some disk straddles the boundary."""
    inside = 0
    for d in disks:
        if rect.contains(d):
            inside += 1
        elif rect.meets(d):
            return None
    return inside


def isolating_box(disks: Sequence[Disk], k: int, bits: int) -> Rect | None:
    d = disks[k]
    box = Disk(d.re, d.im, d.rad + Fraction(1, 1 << bits)).box()
    if any(box.meets(d) for j, d in enumerate(disks) if j != k):
        return None
    return box


def find_root(f: Sequence[int], rect: Rect | None = None, *, max_bits: int = MAX_BITS) -> tuple[int, Rect]:
    """Pick a root of f and return (precision, isolating rectangle).

    Without a rectangle the root that is smallest by (real, imaginary) part is
    chosen; with one, the rectangle must contain exactly one root.
    """
    f = tuple(f)
    bits, _ = isolate(f, max_bits=max_bits)
    for b in precisions(bits, max_bits):
        disks = root_disks(f, b)
        if disks is None:
            continue
        if rect is not None:
            n_in = count_inside(disks, rect)
            if n_in is None:
                continue
            if n_in != 1:
                raise ValueError(f"rectangle contains {n_in} roots of {upoly.format_poly(f)}, expected 1")
            return b, rect
        k = smallest_root(disks, b)
        box = isolating_box(disks, k, b)
        if box is not None:
            return b, box
    raise PrecisionError(f"could not isolate a root of {upoly.format_poly(f)} within {max_bits} bits")


def smallest_root(disks: Sequence[Disk], bits: int) -> int:
    # conjugate roots share their real part; compare on a coarser grid
    grid = 1 << (bits // 2)
    return min(range(len(disks)), key=lambda k: (round(disks[k].re * grid), round(disks[k].im * grid)))


def root_disk(f: Sequence[int], rect: Rect, bits: int = START_BITS, max_bits: int = MAX_BITS) -> tuple[int, Disk]:
    """Certified disk, at precision >= bits, for the root of f isolated by rect."""
    f = tuple(f)
    for b in precisions(bits, max_bits):
        disks = root_disks(f, b)
        if disks is None:
            continue
        k = locate(disks, rect)
        if k is not None:
            return b, disks[k]
    raise PrecisionError(f"rectangle does not pin down a root of {upoly.format_poly(f)}")


def same_root(f: Sequence[int], r1: Rect, r2: Rect, max_bits: int = MAX_BITS) -> bool:
    f = tuple(f)
    for b in precisions(START_BITS, max_bits):
        disks = root_disks(f, b)
        if disks is None:
            continue
        k1, k2 = locate(disks, r1), locate(disks, r2)
        if k1 is not None and k2 is not None:
            return k1 == k2
    raise PrecisionError("could not decide whether two rectangles isolate the same root")
