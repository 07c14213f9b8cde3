import itertools
import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from reduction_engine.domain import (
    ConstraintSet,
    DomainPresentation,
    ParseError,
    PresentationError,
    build_constraints,
    format_element,
    load_problem,
    parse_element,
    random_element,
)
from reduction_engine.irreducibility import ATTESTED, CERTIFIED
from reduction_engine.multipoly import MultiPoly

G = DomainPresentation([], [("i", [1, 0, 1])])
R2 = DomainPresentation([], [("r2", [-2, 0, 1])])
MIXED = DomainPresentation(["x"], [("r2", [-2, 0, 1]), ("i", [1, 0, 1])])
T = DomainPresentation(["t"], [])

SYMPY_VALUES = {"r2": sympy.sqrt(2), "i": sympy.I, "x": sympy.Symbol("x"), "t": sympy.Symbol("t")}


def to_sympy(e):
    """Independent value of an element, with generators as exact sympy numbers.

    The default root of z^2 - 2 is -sqrt 2 and of z^2 + 1 is -i (smallest by
    real then imaginary part); the sign is irrelevant for the identities
    checked here because both roots satisfy the same relations.
    """
    acc = sympy.Integer(0)
    for exps, c in e.poly.terms.items():
        term = sympy.Rational(c.numerator, c.denominator) if hasattr(c, "numerator") else sympy.Integer(c)
        for v, k in zip(e.poly.vars, exps):
            term *= SYMPY_VALUES[v] ** k
        acc += term
    return sympy.expand(acc)


def test_parse_examples():
    assert R2.parse("r2 + 1").poly.terms == {(1,): 1, (0,): 1}
    assert G.parse("i^2") == -1
    assert R2.parse("(3 - r2)*(3 + r2)") == 7
    assert G.parse("i**2 + 1").is_zero()


def test_arithmetic_examples():
    i = G.gen("i")
    assert (1 + i) * (1 - i) == 2
    r2 = R2.gen("r2")
    assert r2 * r2 == 2
    x, s = MIXED.gen("x"), MIXED.gen("r2")
    assert x * s + x * s == MIXED.parse("2*x*r2")


def test_is_zero_examples():
    assert G.parse("i^2 + 1").is_zero()
    assert not R2.parse("r2 - 1").is_zero()
    assert R2.parse("(3-r2)*(3+r2) - 7").is_zero()


def test_mixed_equality_uses_primitive_element():
    # (r2*i)^2 = -2 holds although no single minimal polynomial reduces it
    assert MIXED.parse("(r2*i)^2 + 2").is_zero()
    assert MIXED.parse("r2*i") != MIXED.parse("i*r2 + 1")
    assert hash(MIXED.parse("(r2*i)^2")) == hash(MIXED.from_int(-2))


@pytest.mark.parametrize(
    "text, pos",
    [("r2 + q", 5), ("r2 +", 4), ("(r2", 3), ("r2 ^ -1", 5), ("r2 $ 1", 3), ("2 r2", 2)],
)
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as err:
        R2.parse(text)
    assert err.value.position == pos


def test_mismatched_presentations_rejected():
    with pytest.raises(ValueError):
        G.gen("i") + R2.gen("r2")


@pytest.mark.parametrize(
    "algebraics, message",
    [
        ([("a", [-2, 0, 2])], "not monic"),
        ([("a", [1, -2, 1])], "squarefree"),
        ([("a", [-1, 0, 1])], "reducible"),
        ([("a", [5])], "degree"),
        ([("a", [])], "degree"),
        ([("a", [-2, 0, 1]), ("a", [1, 0, 1])], "unique"),
        ([("theta", [1, 0, 1])], "reserved"),
        ([("a", [-2, 0, 1], [-2, 2, -1, 1])], "rectangle"),
    ],
)
def test_presentation_validation(algebraics, message):
    with pytest.raises(PresentationError, match=message):
        DomainPresentation([], algebraics)


def test_non_monic_hint_names_substitute():
    with pytest.raises(PresentationError, match=r"3\*a"):
        DomainPresentation([], [("a", [-2, 0, 3])])


def test_irreducibility_flag():
    assert G.algebraics[0].irreducibility.status == CERTIFIED
    assert not G.attested and G.faithful


def test_rectangle_picks_root():
    pos = DomainPresentation([], [("r2", [-2, 0, 1], [1, 2, -1, 1])])
    assert pos.algebraics[0].rect.re_lo >= 1
    assert R2.algebraics[0].rect.re_hi < 0


def test_json_round_trip():
    doc = MIXED.to_json()
    again = DomainPresentation.from_json(doc)
    assert again == MIXED
    assert again.to_json() == doc


def brute_force(kind, values):
    if kind == "pairwise-differences":
        raw = [a - b for a, b in itertools.combinations(values, 2)]
    else:
        op = (lambda a, b: a + b) if kind == "sum-differences" else (lambda a, b: a * b)
        raw = [op(a, b) - op(c, d) for a, b, c, d in itertools.product(values, repeat=4)]
    return {sympy.expand(v) for v in raw} - {0}


def test_pairwise_example():
    A = [G.from_int(0), G.from_int(1), G.gen("i")]
    cs = build_constraints("pairwise-differences", A)
    assert len(cs) == 3
    assert {to_sympy(e) for e in cs.elements} == brute_force("pairwise-differences", [0, 1, sympy.I])


def test_sum_example():
    cs = build_constraints("sum-differences", [G.from_int(0), G.from_int(1)])
    assert {to_sympy(e) for e in cs.elements} == {1, -1, 2, -2}


def test_product_example_matches_quadruples():
    A = [G.from_int(1), G.gen("i")]
    cs = build_constraints("product-differences", A)
    expected = brute_force("product-differences", [1, sympy.I])
    assert {to_sympy(e) for e in cs.elements} == expected
    assert len(cs) == 6


def test_custom_filters_zero():
    cs = build_constraints("custom", [G.parse("i^2+1"), G.parse("i")])
    assert len(cs) == 1


def test_constraint_set_rejects_zero():
    with pytest.raises(ValueError):
        ConstraintSet(((G.zero(), "zero"),))


def test_load_problem():
    doc = {
        "algebraics": [{"name": "r2", "minpoly": [-2, 0, 1]}],
        "set": {"a": "r2", "b": "a + 1"},
        "constraints": {"kinds": ["pairwise-differences"], "custom": ["r2 - 1"]},
        "options": {"mode": "strict"},
    }
    pres, named, cs, opts = load_problem(doc)
    assert named["b"] == pres.parse("r2 + 1")
    assert len(cs) == 2 and opts == {"mode": "strict"}


def test_load_problem_without_constraints():
    with pytest.raises(PresentationError):
        load_problem({"algebraics": [{"name": "r2", "minpoly": [-2, 0, 1]}]})


# -- properties ---------------------------------------------------------------

DOMAINS = [G, R2, MIXED, T]


def elements(domain):
    return st.integers(0, 2**32).map(lambda s: random_element(domain, random.Random(s)))


@pytest.mark.parametrize("domain", DOMAINS, ids=["gaussian", "sqrt2", "mixed", "t"])
@given(data=st.data())
def test_ring_laws(domain, data):
    a, b, c = (data.draw(elements(domain)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a + (-a)).is_zero()
    assert (a - a).is_zero()
    if a.is_zero():
        assert (a * b).is_zero()


@pytest.mark.parametrize("domain", DOMAINS, ids=["gaussian", "sqrt2", "mixed", "t"])
@given(data=st.data())
def test_arithmetic_matches_exact_values(domain, data):
    a, b = data.draw(elements(domain)), data.draw(elements(domain))
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
    assert sympy.expand(to_sympy(a + b) - to_sympy(a) - to_sympy(b)) == 0
    assert (a == b) == (sympy.expand(to_sympy(a) - to_sympy(b)) == 0)


@pytest.mark.parametrize("domain", DOMAINS, ids=["gaussian", "sqrt2", "mixed", "t"])
@given(data=st.data())
def test_parse_format_round_trip(domain, data):
    a = data.draw(elements(domain))
    again = parse_element(format_element(a), domain)
    assert again.poly == a.poly


@given(st.lists(st.integers(0, 2**32), min_size=1, max_size=4), st.sampled_from(
    ["pairwise-differences", "sum-differences", "product-differences", "custom"]))
def test_constraints_never_zero(seeds, kind):
    A = [random_element(MIXED, random.Random(s), terms=2, coeff=2, exponent=1) for s in seeds]
    for e in build_constraints(kind, A).elements:
        assert not e.is_zero()
        assert to_sympy(e) != 0


def test_hash_agrees_with_integer_equality():
    assert G.parse("i^2") == -1
    assert hash(G.parse("i^2")) == hash(-1)
    assert {MIXED.parse("(r2*i)^2")} == {-2}
