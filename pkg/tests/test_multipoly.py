from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from reduction_engine.multipoly import MultiPoly

VARS = ("x", "y", "t")
SYMS = sympy.symbols(VARS)

monomials = st.tuples(*(st.integers(0, 3) for _ in VARS))
coeffs = st.one_of(st.integers(-9, 9), st.fractions(min_value=-5, max_value=5, max_denominator=6))
polys = st.dictionaries(monomials, coeffs, max_size=5).map(lambda d: MultiPoly(VARS, d))


def sp(m: MultiPoly):
    acc = sympy.Integer(0)
    for e, c in m.terms.items():
        term = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
        for s, k in zip(SYMS, e):
            term *= s**k
        acc += term
    return sympy.expand(acc)


@given(polys, polys)
def test_ring_operations_match_sympy(a, b):
    assert sympy.expand(sp(a * b) - sp(a) * sp(b)) == 0
    assert sympy.expand(sp(a + b) - sp(a) - sp(b)) == 0
    assert sympy.expand(sp(a - b) - sp(a) + sp(b)) == 0


@given(polys)
def test_reduce_by_matches_sympy_remainder(a):
    f = (-2, 0, 1)
    r = a.reduce_by("x", f)
    assert r.degree("x") < 2
    x = SYMS[0]
    _, rem = sympy.div(sp(a), x**2 - 2, x)
    assert sympy.expand(sp(r) - rem) == 0


@given(polys, st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
def test_eval_mod_matches_exact_value(a, x, y, t):
    p = 101
    exact = sp(a).subs(dict(zip(SYMS, (x, y, t))))
    num, den = sympy.fraction(sympy.Rational(exact))
    if all(c.denominator % p for c in map(Fraction, a.terms.values())):
        assert a.eval_mod({"x": x, "y": y, "t": t}, p) == int(num) * pow(int(den), -1, p) % p


def test_no_zero_terms_and_length_checked():
    assert MultiPoly(VARS, {(1, 0, 0): 0}).terms == {}
    with pytest.raises(ValueError):
        MultiPoly(VARS, {(1, 0): 1})
