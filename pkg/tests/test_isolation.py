from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from reduction_engine import upoly
from reduction_engine.isolation import Disk, Rect, count_inside, disk_eval, find_root, isolate, root_disk, same_root

z = sympy.symbols("z")


def sympy_roots(f):
    return [complex(r) for r in sympy.Poly(list(reversed(f)), z).nroots(n=30)]


def test_sqrt2_default_is_negative_root():
    _, rect = find_root((-2, 0, 1))
    assert rect.re_lo * rect.re_lo >= 2 >= rect.re_hi * rect.re_hi and rect.re_hi < 0


def test_rectangle_selects_positive_root():
    _, rect = find_root((-2, 0, 1), Rect.from_values([1, 2, -1, 1]))
    _, d = root_disk((-2, 0, 1), rect)
    assert abs(float(d.re) - 2 ** 0.5) < 1e-12


def test_rectangle_with_two_roots_rejected():
    with pytest.raises(ValueError):
        find_root((-2, 0, 1), Rect.from_values([-2, 2, -1, 1]))


def test_rectangle_with_no_root_rejected():
    with pytest.raises(ValueError):
        find_root((1, 0, 1), Rect.from_values([-1, 1, -Fraction(1, 2), Fraction(1, 2)]))


def test_non_squarefree_rejected():
    with pytest.raises(ValueError):
        isolate((1, -2, 1))


def test_same_root():
    f = (1, 0, 1)
    up = Rect.from_values([-1, 1, Fraction(1, 2), 2])
    up2 = Rect.from_values([Fraction(-1, 10), Fraction(1, 10), Fraction(9, 10), Fraction(11, 10)])
    down = Rect.from_values([-1, 1, -2, Fraction(-1, 2)])
    assert same_root(f, up, up2)
    assert not same_root(f, up, down)


def test_disk_eval_encloses_exact_value():
    x = Disk(Fraction(3, 2), Fraction(1, 3), Fraction(1, 100))
    f = (5, -1, 0, 2)
    w = disk_eval(f, Disk.exact(Fraction(3, 2), Fraction(1, 3)))
    v = complex(1.5, 1 / 3)
    assert abs(complex(float(w.re), float(w.im)) - (5 - v + 2 * v**3)) < 1e-12
    assert disk_eval(f, x).rad >= w.rad


squarefree = (
    st.lists(st.integers(-9, 9), min_size=2, max_size=7)
    .map(upoly.trim)
    .filter(lambda f: upoly.degree(f) >= 1 and upoly.is_squarefree(f))
)


@given(squarefree)
def test_disks_isolate_every_root(f):
    _, disks = isolate(f)
    assert len(disks) == upoly.degree(f)
    for i, d in enumerate(disks):
        for e in disks[i + 1 :]:
            assert not d.meets(e)
    # each numerical root from an independent solver lies in exactly one disk
    for r in sympy_roots(f):
        hits = [d for d in disks if abs(complex(float(d.re), float(d.im)) - r) <= float(d.rad) + 1e-9 * (1 + abs(r))]
        assert len(hits) == 1


@given(squarefree)
def test_default_root_box_contains_one_root(f):
    _, rect = find_root(f)
    _, disks = isolate(f, bits=256)
    assert count_inside(disks, rect) == 1
