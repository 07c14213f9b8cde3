import itertools
import math

import pytest

from reduction_engine.harness import HarnessConfig, preset, run, run_matrix, run_sl2, run_sumprod
from reduction_engine.harness import distance, incidence, matrix, sl2, sumprod
from reduction_engine.harness.common import FAIL, INCONCLUSIVE, PASS

G = preset("gaussian")
Z = preset("integer")
R2 = preset("sqrt2")


def cfg(app, **kw):
    return HarnessConfig(app, **kw)


# -- sum-product ----------------------------------------------------------------


def test_sumprod_gaussian_example():
    A = [G.from_int(0), G.from_int(1), G.gen("i")]
    assert sumprod.source_stats(A) == {"A": 3, "A+A": 6, "AA": 4}
    rec = sumprod.sumprod_record(G, A, cfg("sumprod", size=3))
    assert rec.verdict == PASS and rec.image == rec.source
    assert rec.map["p"] > 9


def test_sumprod_singleton():
    rec = sumprod.sumprod_record(G, [G.zero()], cfg("sumprod", size=1))
    assert rec.source == {"A": 1, "A+A": 1, "AA": 1} and rec.verdict == PASS


def test_sumprod_integers():
    A = [Z.from_int(v) for v in (1, 2, 4)]
    # sums {2,3,4,5,6,8}, products {1,2,4,8,16}
    assert sumprod.source_stats(A) == {"A": 3, "A+A": 6, "AA": 5}
    assert sumprod.sumprod_record(Z, A, cfg("sumprod", size=3, domain="integer")).verdict == PASS


def test_image_stats_notice_collisions():
    # i -> 2 mod 5 collapses 1 + 1 and i
    assert sumprod.image_stats([0, 1, 2], 5)["A+A"] == 5


@pytest.mark.parametrize("domain", ["gaussian", "sqrt2", "mixed", "transcendental", "integer"])
def test_sumprod_every_domain(domain):
    rep = run_sumprod(cfg("sumprod", size=4, trials=2, domain=domain, seed=5))
    assert rep.failed == 0 and rep.passed == 2


# -- incidence --------------------------------------------------------------------


def test_incidence_example():
    pts = [(Z.from_int(x), Z.from_int(y)) for x, y in ((0, 0), (1, 1), (2, 1))]
    lines = [(Z.from_int(1), Z.from_int(0)), (Z.from_int(0), Z.from_int(1))]
    assert incidence.incidences(pts, lines) == 4
    rec = incidence.incidence_record(Z, pts, lines, cfg("incidence", size=3, domain="integer"))
    assert rec.verdict == PASS and rec.image["incidences"] == 4


def test_incidence_single_and_none():
    one = incidence.incidence_record(G, [(G.zero(), G.zero())], [(G.one(), G.zero())], cfg("incidence", size=1))
    assert one.source["incidences"] == 1 and one.verdict == PASS
    pts = [(G.from_int(k), G.from_int(5)) for k in range(3)]
    lines = [(G.zero(), G.from_int(b)) for b in (1, 2)]
    none = incidence.incidence_record(G, pts, lines, cfg("incidence", size=3))
    assert none.source["incidences"] == 0 and none.verdict == PASS


# -- distance ---------------------------------------------------------------------


def test_distance_example():
    pts = [(Z.from_int(x), Z.from_int(y)) for x, y in ((0, 0), (1, 0), (0, 1))]
    assert distance.distance_set(pts) == {0, 1, 2}
    rec = distance.distance_record(Z, pts, cfg("distance", size=3, domain="integer"))
    assert rec.verdict == PASS and rec.image["distances"] == 3


def test_distance_single_point():
    rec = distance.distance_record(G, [(G.one(), G.gen("i"))], cfg("distance", size=1))
    assert rec.source["distances"] == 1 and rec.verdict == PASS


def test_isotropic_distance():
    pts = [(G.zero(), G.zero()), (G.one(), G.gen("i"))]
    assert distance.distance(*pts) == 0
    assert distance.distance_set(pts) == {0}
    rec = distance.distance_record(G, pts, cfg("distance", size=2))
    assert rec.verdict == PASS and rec.image["distances"] == 1


# -- SL2 ------------------------------------------------------------------------------


def brute_products(A, k):
    """Independent enumeration of all ordered k-fold products."""
    out = set()
    for word in itertools.product(A, repeat=k):
        m = word[0]
        for x in word[1:]:
            m = sl2.matmul(m, x)
        out.add(m)
    return out


def test_sl2_unipotent_pair():
    A = [sl2.unipotent(Z, 2), sl2.unipotent(Z, 4)]
    assert len(brute_products(A, 2)) == 3 == math.comb(3, 2)
    rec = sl2.sl2_record(Z, A, cfg("sl2", size=2, domain="integer"))
    assert rec.verdict == PASS and rec.image["AA"] == 3


def test_sl2_identity():
    I = sl2.unipotent(Z, 0)
    rec = sl2.sl2_record(Z, [I], cfg("sl2", size=1, domain="integer"))
    assert rec.source["AAA"] == 1 and rec.verdict == PASS


def test_sl2_standard_generators():
    one, zero = Z.one(), Z.zero()
    A = [(one, one, zero, one), (one, zero, one, one)]
    expected = len(brute_products(A, 3))
    assert expected == 8
    rec = sl2.sl2_record(Z, A, cfg("sl2", size=2, domain="integer"))
    assert rec.source["AAA"] == expected and rec.verdict == PASS
    assert rec.source["commutator_nontrivial"] and rec.image["commutator_nontrivial"]


def test_sl2_rejects_non_unimodular():
    one, zero, two = Z.one(), Z.zero(), Z.from_int(2)
    with pytest.raises(ValueError):
        sl2.sl2_record(Z, [(two, zero, zero, one)], cfg("sl2", size=1, domain="integer"))


@pytest.mark.parametrize("n", range(2, 6))
def test_sl2_family_oracle(n):
    A = sl2.sl2_family(Z, n)
    assert len(brute_products(A, 2)) == math.comb(n + 1, 2)


def test_sl2_sampled_trials():
    rep = run_sl2(cfg("sl2", seed=7, trials=5))
    assert rep.passed == 5
    assert all(any("commutator" in n for n in t.notes) for t in rep.trials)


# -- matrices ----------------------------------------------------------------------------


def test_bordered_example():
    two, one = Z.from_int(2), Z.from_int(1)
    d = matrix.source_det([two, one], matrix.bordered(0, 1, 3))
    assert d == (2 - 1) ** 2 * 1


def test_det_routines_agree():
    import random

    rng = random.Random(3)
    for n in range(1, 6):
        rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        d = matrix.det_laplace(rows)
        for p in (2, 3, 101):
            assert matrix.det_mod_p(rows, p) == d % p


def test_pm_one_exhaustive():
    rep = run_matrix(cfg("matrix", size=2, exhaustive=True))
    (t,) = rep.trials
    assert t.source["matrices"] == 16 == t.source["expected"]
    assert t.source["singular"] == 8 and t.verdict == PASS


def test_zero_matrix_singular():
    zero = Z.zero()
    assert matrix.source_det([zero], [[0, 0], [0, 0]]).is_zero()
    assert matrix.det_mod_p([[0, 0], [0, 0]], 7) == 0


def test_exhaustive_cap():
    with pytest.raises(ValueError):
        matrix.exhaustive_record(Z, [Z.one(), -Z.one()], 4, cfg("matrix", domain="integer"))


def test_monte_carlo_small():
    rep = run_matrix(cfg("matrix", size=3, samples=300, trials=2, seed=1))
    assert rep.passed == 2
    assert any("Wilson" in n for n in rep.trials[0].notes)


# -- configuration and determinism ---------------------------------------------------------


def test_config_validation():
    for bad in (dict(size=0), dict(trials=0), dict(domain="quaternion"), dict(primes=(10, 5))):
        with pytest.raises(ValueError):
            HarnessConfig("sumprod", **bad)
    with pytest.raises(ValueError):
        HarnessConfig("knots")


def test_prime_bound_enforced():
    rep = run(cfg("sumprod", size=4, primes=(2, 15)))
    assert rep.trials[0].verdict == INCONCLUSIVE
    relaxed = run(cfg("sumprod", size=4, primes=(2, 10**4), enforce_prime_bound=False))
    assert relaxed.failed == 0


def test_trials_reproducible_in_isolation():
    full = run(cfg("distance", size=4, trials=4, seed=9))
    again = run(cfg("distance", size=4, trials=4, seed=9, workers=2))
    assert full.to_json()["trials"] == again.to_json()["trials"]
    from reduction_engine.harness.distance import trial

    c = cfg("distance", size=4, trials=4, seed=9)
    assert trial(c, 2).to_json() == full.trials[2].to_json()


def test_verdicts_are_binary():
    rep = run(cfg("incidence", size=3, trials=3, seed=2))
    assert {t.verdict for t in rep.trials} <= {PASS, FAIL, INCONCLUSIVE}
    assert rep.ok == (rep.failed == 0)
