"""Sparse multivariate polynomials with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class MultiPoly:
    """Polynomial in the named variables ``vars``.

    ``terms`` maps exponent tuples (one entry per variable) to non-zero
    int/Fraction coefficients.  Instances are treated as immutable.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.vars = tuple(vars)
        clean = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                if c:
                    if len(e) != n:
                        raise ValueError("exponent vector length does not match variables")
                    clean[tuple(e)] = _norm(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def const(cls, vars: Sequence[str], c) -> "MultiPoly":
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, vars: Sequence[str], name: str) -> "MultiPoly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(vars, {tuple(e): 1})

    @classmethod
    def from_univariate(cls, vars: Sequence[str], name: str, coeffs: Sequence) -> "MultiPoly":
        vars = tuple(vars)
        i = vars.index(name)
        terms: dict = {}
        for k, c in enumerate(coeffs):
            if isinstance(c, MultiPoly):
                for e, v in c.terms.items():
                    e2 = list(e)
                    e2[i] += k
                    terms[tuple(e2)] = terms.get(tuple(e2), 0) + v
            elif c:
                e2 = [0] * len(vars)
                e2[i] = k
                terms[tuple(e2)] = terms.get(tuple(e2), 0) + c
        return cls(vars, terms)

    # -- protocol ---------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, Rational):
            return MultiPoly.const(self.vars, other)
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Rational):
            other = MultiPoly.const(self.vars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MultiPoly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, Rational):
            if not other:
                return MultiPoly(self.vars)
            return MultiPoly(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative exponent")
        result = MultiPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exquo(self, other) -> "MultiPoly":
        """Exact quotient self/other; raises ArithmeticError if inexact."""
        if isinstance(other, Rational):
            if not other:
                raise ZeroDivisionError("division by zero")
            return MultiPoly(self.vars, {e: Fraction(c) / other for e, c in self.terms.items()})
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        lead_e = max(other.terms)
        lead_c = other.terms[lead_e]
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            e = max(rem)
            shift = tuple(a - b for a, b in zip(e, lead_e))
            if min(shift) < 0:
                raise ArithmeticError("inexact multivariate division")
            t = _norm(Fraction(rem[e]) / lead_c)
            quot[shift] = t
            for e2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(e2, shift))
                v = rem.get(k, 0) - t * c2
                if v:
                    rem[k] = _norm(v)
                else:
                    rem.pop(k, None)
        return MultiPoly(self.vars, quot)

    # -- structure --------------------------------------------------------

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * len(self.vars), 0)

    def degree(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coeffs_in(self, name: str) -> list["MultiPoly"]:
        """Coefficients (low-to-high) with respect to one variable.

        The coefficient polynomials keep the full variable tuple; the chosen
        variable simply no longer occurs in them.
        """
        i = self.vars.index(name)
        buckets: dict[int, dict] = {}
        for e, c in self.terms.items():
            e2 = e[:i] + (0,) + e[i + 1 :]
            buckets.setdefault(e[i], {})[e2] = c
        top = max(buckets, default=-1)
        return [MultiPoly(self.vars, buckets.get(k, {})) for k in range(top + 1)]

    def rename(self, vars: Sequence[str]) -> "MultiPoly":
        """Re-express over a new variable tuple containing every variable in use."""
        vars = tuple(vars)
        idx = []
        for i, v in enumerate(self.vars):
            if v in vars:
                idx.append((i, vars.index(v)))
            elif any(e[i] for e in self.terms):
                raise ValueError(f"variable {v} is in use")
        terms = {}
        for e, c in self.terms.items():
            e2 = [0] * len(vars)
            for i, j in idx:
                e2[j] = e[i]
            terms[tuple(e2)] = c
        return MultiPoly(vars, terms)

    def reduce_by(self, name: str, f: Sequence[int]) -> "MultiPoly":
        """Reduce exponents of `name` below deg f, where f is monic in Z[name]."""
        d = len(f) - 1
        if d < 1 or f[-1] != 1:
            raise ValueError("reduction needs a monic polynomial of positive degree")
        i = self.vars.index(name)
        top = max((e[i] for e in self.terms), default=0)
        if top < d:
            return self
        table = power_table(tuple(f), top)
        terms: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            if k < d:
                terms[e] = terms.get(e, 0) + c
                continue
            for j, a in enumerate(table[k]):
                if a:
                    e2 = e[:i] + (j,) + e[i + 1 :]
                    terms[e2] = terms.get(e2, 0) + c * a
        return MultiPoly(self.vars, terms)

    def substitute(self, values: Mapping[str, object], zero=0, one=1):
        """Evaluate, substituting `values` for every variable (ring-generic)."""
        total = zero
        pows: dict = {}
        for e, c in self.terms.items():
            term = c * one
            for v, k in zip(self.vars, e):
                if k:
                    key = (v, k)
                    if key not in pows:
                        pows[key] = values[v] ** k
                    term = term * pows[key]
            total = total + term
        return total

    def eval_mod(self, values: Mapping[str, int], p: int) -> int:
        """Evaluate in Z/p; rational coefficient denominators must be units mod p."""
        total = 0
        for e, c in self.terms.items():
            if isinstance(c, Fraction):
                term = c.numerator * pow(c.denominator, -1, p)
            else:
                term = c
            for v, k in zip(self.vars, e):
                if k:
                    term = term * pow(values[v], k, p)
            total = (total + term) % p
        return total % p

    def denominators(self) -> set[int]:
        return {c.denominator for c in self.terms.values() if isinstance(c, Fraction)}

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def __repr__(self) -> str:
        return f"MultiPoly({self.vars}, {self})"

    def __str__(self) -> str:
        return format_terms(self.vars, self.sorted_terms())


_POWER_TABLES: dict[tuple, list[tuple]] = {}


def power_table(f: tuple, top: int) -> list[tuple]:
    """Rows k = 0..top give z**k mod f (monic f) as coefficient tuples."""
    d = len(f) - 1
    table = _POWER_TABLES.get(f)
    if table is None:
        table = [tuple(1 if j == k else 0 for j in range(d)) for k in range(d)]
        _POWER_TABLES[f] = table
    while len(table) <= top:
        prev = table[-1]
        # z * prev, then eliminate z**d
        carry = prev[-1]
        row = [0] + list(prev[:-1])
        if carry:
            row = [r - carry * f[j] for j, r in enumerate(row)]
        table.append(tuple(row))
    return table


def format_terms(vars: Sequence[str], terms: Iterable[tuple[tuple, object]]) -> str:
    parts = []
    for e, c in terms:
        factors = []
        for v, k in zip(vars, e):
            if k == 1:
                factors.append(v)
            elif k:
                factors.append(f"{v}^{k}")
        mag = abs(c)
        mono = "*".join(factors)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s
