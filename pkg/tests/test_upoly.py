from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from reduction_engine import upoly
from reduction_engine.multipoly import MultiPoly
from reduction_engine.upoly import RatPoly, poly_gcd_q, resultant, squarefree_part

z, y = sympy.symbols("z y")


def sylvester_det(a, b):
    """Resultant straight from the Sylvester matrix determinant."""
    m, n = len(a) - 1, len(b) - 1
    if m == 0 and n == 0:
        return 1
    rows = []
    for k in range(n):
        rows.append([0] * k + list(reversed(a)) + [0] * (n - 1 - k))
    for k in range(m):
        rows.append([0] * k + list(reversed(b)) + [0] * (m - 1 - k))
    return int(sympy.Matrix(rows).det())


def test_sylvester_oracle_sign():
    # sympy.resultant reports -1 for this pair; the determinant is 1
    assert sylvester_det((0, 1), (1, 0, 0, 1)) == 1
    assert resultant((0, 1), (1, 0, 0, 1)) == 1


def sp(f, var=z):
    return sympy.Poly(list(reversed(f)) or [0], var)


def from_sp(p):
    return tuple(int(c) for c in reversed(p.all_coeffs()))


small = st.integers(-6, 6)
polys = st.lists(small, min_size=1, max_size=6).map(upoly.trim).filter(bool)


def test_gcd_examples():
    assert poly_gcd_q(RatPoly((-1, 0, 1)), RatPoly((-1, 1))) == RatPoly((-1, 1))
    assert poly_gcd_q(RatPoly((-2, 0, 1)), RatPoly((1, 0, 1))) == RatPoly((1,))
    assert resultant((-2, 0, 1), (1, 0, 1)) != 0
    assert poly_gcd_q(RatPoly((2, -3, 0, 1)), RatPoly((-3, 0, 3))) == RatPoly((-1, 1))


def test_gcd_both_zero():
    with pytest.raises(ValueError):
        poly_gcd_q(RatPoly(()), RatPoly(()))


def test_squarefree_examples():
    assert squarefree_part((2, -3, 0, 1)) == (-2, 1, 1)
    assert squarefree_part((1, 0, 1)) == (1, 0, 1)
    assert squarefree_part((0, 0, 1)) == (0, 1)
    with pytest.raises(ValueError):
        squarefree_part(())


def test_resultant_examples():
    assert resultant((-3, 1), (-2, 0, 1)) == 7
    assert resultant((-1, 0, 1), (-1, 1)) == 0
    with pytest.raises(ValueError):
        resultant((), (1, 1))
    # Res_y(y^2 - 2, (z - y)^2 + 1) with coefficients in Z[z]
    V = ("z",)
    zz = MultiPoly.var(V, "z")
    f = [MultiPoly.const(V, c) for c in (-2, 0, 1)]
    g = [zz * zz + 1, -2 * zz, MultiPoly.const(V, 1)]
    r = resultant(f, g)
    assert r == MultiPoly.from_univariate(V, "z", [9, 0, -2, 0, 1])


def test_first_subresultant():
    V = ("z",)
    zz = MultiPoly.var(V, "z")
    f = [MultiPoly.const(V, c) for c in (-2, 0, 1)]
    g = [zz * zz + 1, -2 * zz, MultiPoly.const(V, 1)]
    s0, s1 = upoly.subresultant(f, g, 1)
    assert s0 == zz * zz + 3
    assert s1 == -2 * zz


@given(polys, polys)
def test_gcd_matches_sympy(a, b):
    ours = poly_gcd_q(RatPoly(a), RatPoly(b))
    theirs = sympy.gcd(sp(a), sp(b)).monic()
    assert ours.coeffs == tuple(Fraction(int(c.p), int(c.q)) for c in reversed(theirs.all_coeffs()))


@given(polys, polys)
def test_resultant_matches_sylvester_determinant(a, b):
    assert resultant(a, b) == sylvester_det(a, b)


@given(polys, polys)
def test_resultant_zero_iff_common_factor(a, b):
    common = upoly.degree(poly_gcd_q(RatPoly(a), RatPoly(b)).num) > 0
    assert (resultant(a, b) == 0) == common


@given(st.integers(-20, 20), polys)
def test_resultant_evaluation_property(c, g):
    assert abs(resultant((-c, 1), g)) == abs(upoly.evaluate(g, c))


@given(polys)
def test_squarefree_matches_sympy(g):
    ours = squarefree_part(g)
    theirs = sympy.sqf_part(sp(g))
    assert RatPoly(ours).monic() == RatPoly(from_sp(theirs)).monic()
    assert upoly.is_squarefree(ours)


@given(polys, polys)
def test_squarefree_of_square_times(a, b):
    a, b = squarefree_part(a), squarefree_part(b)
    if upoly.degree(poly_gcd_q(RatPoly(a), RatPoly(b)).num) > 0:
        return
    lhs = squarefree_part(upoly.mul(upoly.mul(a, a), b))
    rhs = squarefree_part(upoly.mul(a, b))
    assert RatPoly(lhs).monic() == RatPoly(rhs).monic()


@given(polys, polys)
def test_pseudo_division_identity(f, g):
    q, r = upoly.pseudo_divmod(f, g)
    k = max(upoly.degree(f) - upoly.degree(g) + 1, 0)
    lhs = upoly.scale(f, g[-1] ** k)
    assert upoly.add(upoly.mul(q, g), r) == lhs
    assert upoly.degree(r) < upoly.degree(g)


@given(polys, polys)
def test_invmod(f, m):
    if upoly.degree(m) < 1:
        return
    if upoly.degree(poly_gcd_q(RatPoly(f), RatPoly(m)).num) > 0:
        with pytest.raises(ZeroDivisionError):
            upoly.invmod_q(f, m)
        return
    inv = upoly.invmod_q(f, m)
    assert upoly.mulmod_q(f, inv, m) == (1,)


def test_ratpoly_normalizes():
    r = RatPoly((2, 4), -6)
    assert r.num == (-1, -2) and r.den == 3
    assert RatPoly.from_coeffs([Fraction(1, 2), Fraction(1, 3)]) == RatPoly((3, 2), 6)
    assert (RatPoly((0, 1)) * RatPoly((0, 1))).rem((-2, 0, 1)) == RatPoly((2,))


def test_no_float_in_exact_arith():
    import inspect

    for mod in (upoly,):
        assert "float(" not in inspect.getsource(mod)
