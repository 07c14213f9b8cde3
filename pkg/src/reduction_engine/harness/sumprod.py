"""Sum-product: |phi(A)|, |phi(A)+phi(A)|, |phi(A)phi(A)| against the source set."""

from __future__ import annotations

from typing import Sequence

from ..domain import DomainPresentation, Element, build_constraints
from .common import FAIL, INCONCLUSIVE, PASS, HarnessConfig, TrialRecord, images, map_info, obtain_map, sample_distinct, trial_rng


def source_stats(A: Sequence[Element]) -> dict:
    """Exact cardinalities in the domain."""
    A = list(A)
    sums = {a + b for a in A for b in A}
    prods = {a * b for a in A for b in A}
    return {"A": len(set(A)), "A+A": len(sums), "AA": len(prods)}


def image_stats(vals: Sequence[int], p: int) -> dict:
    return {
        "A": len(set(vals)),
        "A+A": len({(a + b) % p for a in vals for b in vals}),
        "AA": len({a * b % p for a in vals for b in vals}),
    }


def constraints_for(A: Sequence[Element]):
    names = [f"a{k}" for k in range(len(A))]
    parts = [build_constraints(kind, A, names) for kind in ("pairwise-differences", "sum-differences", "product-differences")]
    return parts[0].merge(*parts[1:])


def sumprod_record(domain: DomainPresentation, A: Sequence[Element], cfg: HarnessConfig, index=0, seed=0) -> TrialRecord:
    A = list(A)
    src = source_stats(A)
    m, why = obtain_map(domain, constraints_for(A), cfg, seed, len(A))
    if m is None:
        return TrialRecord(index, seed, INCONCLUSIVE, src, notes=[why])
    img = image_stats(images(m, A), m.p)
    verdict = PASS if img == src else FAIL
    bound = max(src["A+A"], src["AA"])
    notes = [
        f"max(|A+A|, |AA|) = {bound} >= |A| = {src['A']}: {bound >= src['A']}",
        f"informational: |A|^(14/13) = {src['A'] ** (14 / 13):.3f}",
    ]
    return TrialRecord(index, seed, verdict, src, img, map_info(m), notes)


def trial(cfg: HarnessConfig, index: int) -> TrialRecord:
    rng = trial_rng(cfg, index)
    domain = cfg.presentation
    A = sample_distinct(domain, rng, cfg.size, cfg.coeff_bound)
    return sumprod_record(domain, A, cfg, index, cfg.trial_seed(index))
