"""Distinct values of (x1-x2)^2 + (y1-y2)^2, before and after reduction."""

from __future__ import annotations

from typing import Sequence

from ..domain import ConstraintSet, DomainPresentation, Element, build_constraints
from .common import (FAIL, INCONCLUSIVE, PASS, HarnessConfig, TrialRecord, images, map_info, obtain_map,
                     sample_element, trial_rng)


def distance(p, q):
    dx, dy = p[0] - q[0], p[1] - q[1]
    return dx * dx + dy * dy


def distance_set(points: Sequence[tuple[Element, Element]]) -> set:
    """Delta(P), over all ordered pairs, so 0 is always present."""
    return {distance(p, q) for p in points for q in points}


def image_distance_set(points: Sequence[tuple[int, int]], p: int) -> set:
    return {((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2) % p for a in points for b in points}


def constraints_for(points) -> ConstraintSet:
    parts = []
    for k, coords in enumerate(zip(*points)):
        parts.append(build_constraints("pairwise-differences", list(coords), [f"P{j}.{'xy'[k]}" for j in range(len(points))]))
    values = sorted(distance_set(points), key=str)
    if len(values) > 1:
        parts.append(build_constraints("pairwise-differences", values, [f"d{j}" for j in range(len(values))]))
    return parts[0].merge(*parts[1:])


def distance_record(domain: DomainPresentation, points, cfg: HarnessConfig, index=0, seed=0) -> TrialRecord:
    src = {"points": len(set(points)), "distances": len(distance_set(points))}
    m, why = obtain_map(domain, constraints_for(points), cfg, seed, len(points))
    if m is None:
        return TrialRecord(index, seed, INCONCLUSIVE, src, notes=[why])
    pts = list(zip(images(m, [x for x, _ in points]), images(m, [y for _, y in points])))
    img = {"points": len(set(pts)), "distances": len(image_distance_set(pts, m.p))}
    return TrialRecord(index, seed, PASS if img == src else FAIL, src, img, map_info(m))


def sample(domain: DomainPresentation, rng, n: int, bound: int):
    points: dict = {}
    while len(points) < n:
        points.setdefault((sample_element(domain, rng, bound), sample_element(domain, rng, bound)), None)
    return list(points)


def trial(cfg: HarnessConfig, index: int) -> TrialRecord:
    rng = trial_rng(cfg, index)
    points = sample(cfg.presentation, rng, cfg.size, cfg.coeff_bound)
    return distance_record(cfg.presentation, points, cfg, index, cfg.trial_seed(index))
