"""Finitely presented domains Z[x_1..x_j, alpha_1..alpha_k] and their elements.

Transcendental generators are free variables; algebraic generators are
roots of monic integer polynomials, each named by an isolating rectangle.
Elements are integer polynomials with every algebraic exponent reduced
below the degree of its minimal polynomial.  With several algebraic
generators that reduction alone is not a canonical form, so equality and
zero tests go through the primitive element instead.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import upoly
from .compose import THETA, CompositionResult, compose_all, rewrite_element
from .irreducibility import CERTIFIED, REDUCIBLE, Irreducibility, certify
from .isolation import PrecisionError, Rect, find_root
from .multipoly import MultiPoly

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
RESERVED = {THETA}


class PresentationError(ValueError):
    """The presentation does not describe a supported integral domain."""


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class AlgebraicGenerator:
    name: str
    minpoly: tuple
    rect: Rect
    irreducibility: Irreducibility


def _check_minpoly(name: str, f) -> tuple:
    if not isinstance(f, (list, tuple)) or not all(isinstance(c, int) and not isinstance(c, bool) for c in f):
        raise PresentationError(f"minimal polynomial of {name} must be a list of integers")
    f = upoly.trim(f)
    if upoly.degree(f) < 1:
        raise PresentationError(f"minimal polynomial of {name} must have degree at least 1")
    if f[-1] != 1:
        c = f[-1]
        raise PresentationError(
            f"minimal polynomial of {name} is not monic (leading coefficient {c}); "
            f"present the algebraic integer {c}*{name} instead"
        )
    if not upoly.is_squarefree(f):
        raise PresentationError(f"minimal polynomial of {name} is not squarefree")
    return f


class DomainPresentation:
    """Generators of Z[S]: transcendental names plus algebraic integers."""

    def __init__(self, transcendentals: Sequence[str] = (), algebraics: Sequence = ()):
        names = list(transcendentals) + [a[0] for a in algebraics]
        for n in names:
            if not isinstance(n, str) or not _NAME.match(n):
                raise PresentationError(f"invalid generator name {n!r}")
            if n in RESERVED:
                raise PresentationError(f"generator name {n!r} is reserved")
        if len(set(names)) != len(names):
            raise PresentationError("generator names must be unique")
        gens = []
        for item in algebraics:
            name, f = item[0], item[1]
            rect = item[2] if len(item) > 2 else None
            f = _check_minpoly(name, f)
            verdict = certify(f)
            if verdict.status == REDUCIBLE:
                raise PresentationError(
                    f"minimal polynomial of {name} is reducible (factor {upoly.format_poly(verdict.factor)})"
                )
            try:
                if rect is not None and not isinstance(rect, Rect):
                    rect = Rect.from_values(rect)
                rect = find_root(f, rect)[1]
            except (ValueError, PrecisionError) as exc:
                raise PresentationError(f"isolating rectangle for {name}: {exc}") from None
            gens.append(AlgebraicGenerator(name, f, rect, verdict))
        self.transcendentals = tuple(transcendentals)
        self.algebraics = tuple(gens)
        self.vars = tuple(names)
        self._minpolys = {g.name: g.minpoly for g in gens}

    # -- identity ---------------------------------------------------------

    def _ident(self):
        return (self.transcendentals, tuple((g.name, g.minpoly, g.rect) for g in self.algebraics))

    def __eq__(self, other) -> bool:
        return isinstance(other, DomainPresentation) and self._ident() == other._ident()

    def __hash__(self) -> int:
        return hash(self._ident())

    def __repr__(self) -> str:
        algs = ", ".join(f"{g.name}: {upoly.format_poly(g.minpoly)}" for g in self.algebraics)
        return f"DomainPresentation(transcendentals={list(self.transcendentals)}, algebraics=[{algs}])"

    @classmethod
    def from_json(cls, doc: Mapping) -> "DomainPresentation":
        trans = doc.get("transcendentals", [])
        if not isinstance(trans, list):
            raise PresentationError("transcendentals must be a list of names")
        algs = []
        for a in doc.get("algebraics", []):
            if not isinstance(a, Mapping) or "name" not in a or "minpoly" not in a:
                raise PresentationError("each algebraic generator needs a name and a minpoly")
            algs.append((a["name"], a["minpoly"], a.get("isolate")))
        return cls(trans, algs)

    def to_json(self) -> dict:
        return {
            "transcendentals": list(self.transcendentals),
            "algebraics": [
                {"name": g.name, "minpoly": list(g.minpoly), "isolate": g.rect.as_strings()} for g in self.algebraics
            ],
        }

    # -- structure --------------------------------------------------------

    @functools.cached_property
    def composition(self) -> CompositionResult:
        return compose_all([(g.name, g.minpoly, g.rect) for g in self.algebraics])

    @property
    def attested(self) -> bool:
        """True when some minimal polynomial is accepted without a certificate."""
        return any(g.irreducibility.status != CERTIFIED for g in self.algebraics)

    @property
    def faithful(self) -> bool:
        """Whether zero tests are backed by certified irreducibility."""
        if len(self.algebraics) <= 1:
            return not self.attested
        return self.composition.status == CERTIFIED

    def minpoly(self, name: str) -> tuple:
        return self._minpolys[name]

    def normal(self, poly: MultiPoly) -> MultiPoly:
        for name, f in self._minpolys.items():
            poly = poly.reduce_by(name, f)
        return poly

    def key(self, poly: MultiPoly):
        """Canonical form used for equality and zero tests."""
        if len(self.algebraics) <= 1:
            return poly
        return rewrite_element(poly, self.composition, self.transcendentals)

    # -- elements ---------------------------------------------------------

    def element(self, poly: MultiPoly) -> "Element":
        return Element(self, self.normal(poly))

    def from_int(self, n: int) -> "Element":
        return Element(self, MultiPoly.const(self.vars, n))

    def zero(self) -> "Element":
        return self.from_int(0)

    def one(self) -> "Element":
        return self.from_int(1)

    def gen(self, name: str) -> "Element":
        if name not in self.vars:
            raise KeyError(f"unknown generator {name}")
        return self.element(MultiPoly.var(self.vars, name))

    def parse(self, text: str, bindings: Mapping[str, "Element"] | None = None) -> "Element":
        return parse_element(text, self, bindings)

    def is_zero(self, e: "Element") -> bool:
        return e.is_zero()


class Element:
    """Member of Z[S] in normal form."""

    __slots__ = ("domain", "poly", "_key")

    def __init__(self, domain: DomainPresentation, poly: MultiPoly):
        self.domain = domain
        self.poly = poly
        self._key = None

    def _other(self, other) -> "Element":
        if isinstance(other, Element):
            if other.domain is not self.domain and other.domain != self.domain:
                raise ValueError("elements belong to different presentations")
            return other
        if isinstance(other, int):
            return self.domain.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Element(self.domain, self.poly + o.poly)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.domain, -self.poly)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Element(self.domain, self.poly - o.poly)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Element(self.domain, self.domain.normal(self.poly * o.poly))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = self.domain.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    @property
    def key(self):
        if self._key is None:
            self._key = self.domain.key(self.poly)
        return self._key

    def is_zero(self) -> bool:
        return not self.key

    def __eq__(self, other) -> bool:
        o = self._other(other) if isinstance(other, (Element, int)) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return self.key == o.key

    def __hash__(self) -> int:
        k = self.key
        # constants hash like the rational they equal, matching __eq__ with ints
        return hash(k.constant_value()) if k.is_constant() else hash(k)

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"Element({self})"


def format_element(e: Element) -> str:
    """Serialize in the expression grammar; parse_element inverts it."""
    return str(e.poly)


# -- expression parser ------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()]))")


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, domain, bindings):
        self.tokens = _tokenize(text)
        self.i = 0
        self.domain = domain
        self.bindings = bindings or {}

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at(self, op) -> bool:
        kind, val, _ = self.peek()
        return kind == "op" and val == op

    def expr(self) -> Element:
        acc = self.term()
        while self.at("+") or self.at("-"):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Element:
        acc = self.unary()
        while self.at("*"):
            self.take()
            acc = acc * self.unary()
        return acc

    def unary(self) -> Element:
        if self.at("-"):
            self.take()
            return -self.unary()
        if self.at("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Element:
        base = self.atom()
        while self.at("^"):
            self.take()
            kind, val, pos = self.peek()
            if kind == "op" and val == "-":
                raise ParseError("negative exponent", pos)
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer literal", pos)
            self.take()
            base = base**val
        return base

    def atom(self) -> Element:
        kind, val, pos = self.take()
        if kind == "int":
            return self.domain.from_int(val)
        if kind == "name":
            if val in self.bindings:
                return self.bindings[val]
            if val in self.domain.vars:
                return self.domain.gen(val)
            raise ParseError(f"unknown identifier {val!r}", pos)
        if kind == "op" and val == "(":
            inner = self.expr()
            kind2, val2, pos2 = self.take()
            if kind2 != "op" or val2 != ")":
                raise ParseError("expected ')'", pos2)
            return inner
        if kind == "end":
            raise ParseError("unexpected end of expression", pos)
        raise ParseError(f"unexpected token {val!r}", pos)


def parse_element(text: str, domain: DomainPresentation, bindings: Mapping[str, Element] | None = None) -> Element:
    """Parse integers, generators, + - * ^, unary minus and parentheses."""
    if not isinstance(text, str):
        raise ParseError("expression must be a string", 0)
    p = _Parser(text, domain, bindings)
    e = p.expr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected token {val!r}", pos)
    return e


# -- constraint sets --------------------------------------------------------

KINDS = ("pairwise-differences", "sum-differences", "product-differences", "custom")


@dataclass(frozen=True)
class ConstraintSet:
    """Non-zero elements with provenance labels."""

    items: tuple

    def __post_init__(self):
        for e, label in self.items:
            if e.is_zero():
                raise ValueError(f"constraint {label!r} is zero in the domain")

    @classmethod
    def of(cls, elements: Iterable[Element], label: str = "custom") -> "ConstraintSet":
        return cls(tuple((e, f"{label}[{k}]") for k, e in enumerate(elements)))

    @property
    def elements(self) -> list[Element]:
        return [e for e, _ in self.items]

    @property
    def labels(self) -> list[str]:
        return [lab for _, lab in self.items]

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def merge(self, *others: "ConstraintSet") -> "ConstraintSet":
        seen = set()
        out = []
        for cs in (self,) + others:
            for e, lab in cs.items:
                if e not in seen:
                    seen.add(e)
                    out.append((e, lab))
        return ConstraintSet(tuple(out))


def _distinct(pairs: Iterable[tuple[Element, str]]) -> list[tuple[Element, str]]:
    seen = {}
    for e, lab in pairs:
        if e not in seen:
            seen[e] = lab
    return list(seen.items())


def build_constraints(kind: str, inputs: Sequence[Element], names: Sequence[str] | None = None) -> ConstraintSet:
    """Difference families over the inputs, zeros removed, duplicates merged."""
    if kind not in KINDS:
        raise ValueError(f"unknown constraint kind {kind!r}")
    inputs = list(inputs)
    if not inputs:
        raise ValueError("build_constraints needs at least one input")
    names = list(names) if names else [f"a{k}" for k in range(len(inputs))]
    items: list[tuple[Element, str]] = []
    if kind == "custom":
        items = [(e, f"custom:{n}") for e, n in zip(inputs, names)]
    elif kind == "pairwise-differences":
        for i in range(len(inputs)):
            for j in range(i + 1, len(inputs)):
                items.append((inputs[i] - inputs[j], f"{kind}:{names[i]}-{names[j]}"))
    else:
        combine = (lambda a, b: a + b) if kind == "sum-differences" else (lambda a, b: a * b)
        sym = "+" if kind == "sum-differences" else "*"
        values = _distinct(
            (combine(inputs[i], inputs[j]), f"{names[i]}{sym}{names[j]}")
            for i in range(len(inputs))
            for j in range(i, len(inputs))
        )
        for s, ls in values:
            for t, lt in values:
                if s is not t:
                    items.append((s - t, f"{kind}:({ls})-({lt})"))
    kept = [(e, lab) for e, lab in _distinct(items) if not e.is_zero()]
    return ConstraintSet(tuple(kept))


def load_problem(doc: Mapping) -> tuple[DomainPresentation, dict, ConstraintSet, dict]:
    """Read presentation, named set, constraints and options from a JSON document."""
    if not isinstance(doc, Mapping):
        raise PresentationError("problem document must be a JSON object")
    pres = DomainPresentation.from_json(doc)
    named: dict[str, Element] = {}
    for name, text in (doc.get("set") or {}).items():
        named[name] = parse_element(text, pres, named)
    cons_doc = doc.get("constraints") or {}
    kinds = cons_doc.get("kinds", [])
    parts = []
    if kinds and named:
        for kind in kinds:
            if kind == "custom":
                continue
            parts.append(build_constraints(kind, list(named.values()), list(named)))
    elif kinds and any(k != "custom" for k in kinds):
        raise PresentationError("constraint kinds need a non-empty set")
    custom = [parse_element(t, pres, named) for t in cons_doc.get("custom", [])]
    if custom:
        parts.append(build_constraints("custom", custom, cons_doc.get("custom")))
    if not parts:
        raise PresentationError("no constraints given")
    constraints = parts[0].merge(*parts[1:])
    if not len(constraints):
        raise PresentationError("every constraint is zero")
    return pres, named, constraints, dict(doc.get("options") or {})


def random_element(domain: DomainPresentation, rng, terms: int = 4, coeff: int = 9, exponent: int = 3) -> Element:
    """A random element with a few small terms, for spot checks."""
    n = len(domain.vars)
    poly = {}
    for _ in range(terms):
        e = tuple(rng.randint(0, exponent) for _ in range(n))
        poly[e] = poly.get(e, 0) + rng.randint(-coeff, coeff)
    return domain.element(MultiPoly(domain.vars, poly))
