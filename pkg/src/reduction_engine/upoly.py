"""Dense univariate polynomials over Z and Q.

An integer polynomial is a tuple of ints, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.  So z**2 - 2 is ``(-2, 0, 1)``.
Most helpers are written against the coefficient protocol (+, -, *, truth
value) and therefore also work for tuples of Fractions or of `MultiPoly`
coefficients, which is how bivariate resultants are taken.

Everything here is exact; no floating point is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Any, Sequence

IntPoly = tuple  # tuple[int, ...], low-to-high


def trim(coeffs: Sequence) -> tuple:
    c = list(coeffs)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def degree(f: Sequence) -> int:
    """Degree, with -1 for the zero polynomial."""
    return len(f) - 1


def lc(f: Sequence):
    return f[-1]


def add(f: Sequence, g: Sequence) -> tuple:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = out[i] + c
    return trim(out)


def neg(f: Sequence) -> tuple:
    return tuple(-c for c in f)


def sub(f: Sequence, g: Sequence) -> tuple:
    return add(f, neg(g))


def scale(f: Sequence, k) -> tuple:
    if not k:
        return ()
    return trim(c * k for c in f)


def mul(f: Sequence, g: Sequence) -> tuple:
    if not f or not g:
        return ()
    out: list[Any] = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def power(f: Sequence, e: int) -> tuple:
    result: tuple = (1,)
    base = tuple(f)
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def derivative(f: Sequence) -> tuple:
    return trim(i * c for i, c in enumerate(f) if i)


def evaluate(f: Sequence, x):
    acc: Any = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def compose(f: Sequence, g: Sequence) -> tuple:
    """f(g(z))."""
    acc: tuple = ()
    for c in reversed(f):
        acc = add(mul(acc, g), (c,) if c else ())
    return acc


def content(f: IntPoly) -> int:
    return reduce(math.gcd, f, 0)


def primitive(f: IntPoly) -> IntPoly:
    """Primitive part with positive leading coefficient."""
    if not f:
        return ()
    c = content(f)
    if f[-1] < 0:
        c = -c
    return tuple(x // c for x in f)


def pseudo_divmod(f: Sequence, g: Sequence) -> tuple[tuple, tuple]:
    """Return (q, r) with lc(g)**(deg f - deg g + 1) * f = q*g + r.

    Uses only ring operations, so it is valid over any integral domain.
    """
    if not g:
        raise ZeroDivisionError("pseudo-division by the zero polynomial")
    df, dg = degree(f), degree(g)
    if df < dg:
        return (), tuple(f)
    b = g[-1]
    r = list(f)
    q: list[Any] = [0] * (df - dg + 1)
    for k in range(df - dg, -1, -1):
        top = r[dg + k] if dg + k < len(r) else 0
        q = [c * b for c in q]
        q[k] = q[k] + top
        r = [c * b for c in r]
        for j, c in enumerate(g):
            r[j + k] = r[j + k] - top * c
        r = r[: dg + k]
    return trim(q), trim(r)


def prem(f: Sequence, g: Sequence) -> tuple:
    return pseudo_divmod(f, g)[1]


def _exquo(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{a} is not divisible by {b}")
        return q
    if isinstance(a, Rational) and isinstance(b, Rational):
        return Fraction(a) / b
    if isinstance(a, Rational):
        a = type(b).const(b.vars, a)
    return a.exquo(b)


def exquo_coeffs(f: Sequence, d) -> tuple:
    return trim(_exquo(c, d) for c in f)


def divmod_q(f: Sequence, g: Sequence) -> tuple[tuple, tuple]:
    """Euclidean division over Q; returns tuples of Fractions/ints."""
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    r = [Fraction(c) for c in f]
    dg = degree(g)
    inv = Fraction(1) / Fraction(g[-1])
    q = [Fraction(0)] * max(len(f) - dg, 0)
    for k in range(len(f) - 1 - dg, -1, -1):
        t = r[dg + k] * inv
        q[k] = t
        if t:
            for j, c in enumerate(g):
                r[j + k] -= t * c
        r.pop()
    return _norm_q(q), _norm_q(r)


def _norm_q(coeffs) -> tuple:
    return trim(int(c) if isinstance(c, Fraction) and c.denominator == 1 else c for c in coeffs)


def rem_q(f: Sequence, g: Sequence) -> tuple:
    if len(g) == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    if len(f) < len(g):
        return tuple(f)
    return divmod_q(f, g)[1]


def exact_div(f: IntPoly, g: IntPoly) -> IntPoly:
    """Quotient f/g in Z[z]; raises ArithmeticError if g does not divide f."""
    q, r = divmod_q(f, g)
    if r or any(isinstance(c, Fraction) for c in q):
        raise ArithmeticError("inexact polynomial division")
    return tuple(q)


def gcd_z(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd in Z[z] via the subresultant pseudo-remainder sequence."""
    if not f and not g:
        raise ValueError("gcd of two zero polynomials is undefined")
    if not g:
        return primitive(f)
    if not f:
        return primitive(g)
    if degree(f) < degree(g):
        f, g = g, f
    a, b = primitive(f), primitive(g)
    gg = h = 1
    while True:
        delta = degree(a) - degree(b)
        r = prem(a, b)
        if not r:
            break
        if degree(r) == 0:
            b = (1,)
            break
        a = b
        b = exquo_coeffs(r, gg * h**delta)
        gg = a[-1]
        h = gg if delta == 1 else (h if delta == 0 else gg**delta // h ** (delta - 1))
    return primitive(b)


def resultant(f: Sequence, g: Sequence):
    """Resultant of two non-zero polynomials over an integral domain.

    Subresultant algorithm; coefficients may be ints or `MultiPoly`.
    """
    if not f or not g:
        raise ValueError("resultant requires non-zero polynomials")
    s = 1
    a, b = tuple(f), tuple(g)
    if degree(a) < degree(b):
        a, b = b, a
        if degree(a) % 2 and degree(b) % 2:
            s = -s
    gg: Any = 1
    h: Any = 1
    while True:
        da, db = degree(a), degree(b)
        if db == 0:
            if da == 0:
                return s * h
            top = b[-1] ** da
            return s * (top if da == 1 else _exquo(top, h ** (da - 1)))
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = prem(a, b)
        if not r:
            return 0 * b[-1]
        a = b
        b = exquo_coeffs(r, gg * h**delta)
        gg = a[-1]
        if delta == 1:
            h = gg
        elif delta > 1:
            h = _exquo(gg**delta, h ** (delta - 1))


def bareiss_det(rows: list[list]):
    """Fraction-free determinant over an integral domain with exact division."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev: Any = 1
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0 * m[0][0]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = _exquo(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def subresultant(f: Sequence, g: Sequence, k: int) -> tuple:
    """The k-th subresultant of f and g, with coefficients in the same ring.

    Built from the determinantal definition, so it is exact even when the
    remainder sequence is defective.
    """
    m, n = degree(f), degree(g)
    if not 0 <= k < min(m, n):
        raise ValueError("subresultant index out of range")
    width = m + n - k
    zero = 0 * f[-1]
    rows = []
    for shift in range(n - k - 1, -1, -1):
        rows.append(_sylvester_row(f, shift, width, zero))
    for shift in range(m - k - 1, -1, -1):
        rows.append(_sylvester_row(g, shift, width, zero))
    lead = width - k - 1  # columns for powers above z**k except one slot
    coeffs = []
    for j in range(k + 1):
        sub_rows = [r[:lead] + [r[width - 1 - j]] for r in rows]
        coeffs.append(bareiss_det(sub_rows))
    return trim(coeffs)


def _sylvester_row(f: Sequence, shift: int, width: int, zero) -> list:
    # row for z**shift * f, columns ordered from z**(width-1) down to z**0
    row = [zero] * width
    for i, c in enumerate(f):
        row[width - 1 - (i + shift)] = c
    return row


def squarefree_part(g: IntPoly) -> IntPoly:
    """Primitive polynomial with the roots of g, each once: g / gcd(g, g')."""
    if not g:
        raise ValueError("squarefree part of the zero polynomial")
    g = tuple(g)
    if degree(g) == 0:
        return (1,)
    return primitive(exact_div(primitive(g), gcd_z(g, derivative(g))))


def is_squarefree(g: IntPoly) -> bool:
    return degree(gcd_z(g, derivative(g))) == 0


@dataclass(frozen=True)
class RatPoly:
    """Polynomial with rational coefficients stored as numerator/denominator.

    ``den`` is positive and coprime to the content of ``num``.
    """

    num: IntPoly
    den: int = 1

    def __post_init__(self):
        num = trim(self.num)
        den = self.den
        if den == 0:
            raise ZeroDivisionError("RatPoly with zero denominator")
        if den < 0:
            num, den = neg(num), -den
        g = math.gcd(content(num), den) if num else den
        object.__setattr__(self, "num", tuple(c // g for c in num))
        object.__setattr__(self, "den", den // g)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "RatPoly":
        fr = [Fraction(c) for c in coeffs]
        den = reduce(lambda x, y: x * y // math.gcd(x, y), (c.denominator for c in fr), 1)
        return cls(tuple(int(c * den) for c in fr), den)

    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(c, self.den) for c in self.num)

    @property
    def degree(self) -> int:
        return degree(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def monic(self) -> "RatPoly":
        if not self.num:
            raise ValueError("zero polynomial has no monic form")
        return RatPoly(self.num, self.num[-1])

    def __add__(self, other: "RatPoly") -> "RatPoly":
        return RatPoly(add(scale(self.num, other.den), scale(other.num, self.den)), self.den * other.den)

    def __neg__(self) -> "RatPoly":
        return RatPoly(neg(self.num), self.den)

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return self + (-other)

    def __mul__(self, other: "RatPoly") -> "RatPoly":
        return RatPoly(mul(self.num, other.num), self.den * other.den)

    def __call__(self, x):
        return evaluate(self.coeffs, x)

    def rem(self, f: Sequence) -> "RatPoly":
        return RatPoly.from_coeffs(rem_q(self.coeffs, f))

    def eval_mod(self, x: int, p: int) -> int:
        """Value at x in Z/p; the denominator must be invertible mod p."""
        return evaluate(self.num, x) * pow(self.den, -1, p) % p

    def __str__(self) -> str:
        return format_poly(self.num, "z") if self.den == 1 else f"({format_poly(self.num, 'z')})/{self.den}"


def poly_gcd_q(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic gcd over Q."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    return RatPoly(gcd_z(a.num, b.num)).monic()


def mulmod_q(f: Sequence, g: Sequence, m: Sequence) -> tuple:
    return rem_q(mul(f, g), m)


def invmod_q(f: Sequence, m: Sequence) -> tuple:
    """Inverse of f in Q[z]/(m); raises ZeroDivisionError if gcd(f, m) != 1."""
    r0, r1 = tuple(m), rem_q(f, m)
    s0: tuple = ()
    s1: tuple = (1,)
    while r1:
        q, r = divmod_q(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
    if degree(r0) != 0:
        raise ZeroDivisionError("element is not invertible modulo the given polynomial")
    inv = Fraction(1) / Fraction(r0[0])
    return rem_q(scale(s0, inv), m)


def format_poly(f: Sequence, var: str = "z") -> str:
    if not f:
        return "0"
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s
