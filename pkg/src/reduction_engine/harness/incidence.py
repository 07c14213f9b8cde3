"""Point-line incidences in the domain plane, counted before and after reduction."""

from __future__ import annotations

from typing import Sequence

from ..domain import ConstraintSet, DomainPresentation, Element, build_constraints
from .common import (FAIL, INCONCLUSIVE, PASS, HarnessConfig, TrialRecord, images, map_info, obtain_map,
                     sample_element, trial_rng)

Point = tuple[Element, Element]
Line = tuple[Element, Element]  # y = m*x + b


def incidences(points: Sequence[Point], lines: Sequence[Line]) -> int:
    return sum((y - m * x - b).is_zero() for x, y in points for m, b in lines)


def image_incidences(pts: Sequence[tuple[int, int]], lns: Sequence[tuple[int, int]], p: int) -> int:
    return sum((y - m * x - b) % p == 0 for x, y in pts for m, b in lns)


def constraints_for(points: Sequence[Point], lines: Sequence[Line]) -> ConstraintSet:
    parts = []
    for k, coords in enumerate(zip(*points)):
        parts.append(build_constraints("pairwise-differences", list(coords), [f"P{j}.{'xy'[k]}" for j in range(len(points))]))
    for k, coords in enumerate(zip(*lines)):
        parts.append(build_constraints("pairwise-differences", list(coords), [f"L{j}.{'mb'[k]}" for j in range(len(lines))]))
    residuals = [y - m * x - b for x, y in points for m, b in lines]
    labels = [f"P{i}~L{j}" for i in range(len(points)) for j in range(len(lines))]
    parts.append(build_constraints("custom", residuals, labels))
    return parts[0].merge(*parts[1:])


def incidence_record(domain: DomainPresentation, points, lines, cfg: HarnessConfig, index=0, seed=0) -> TrialRecord:
    src = {"incidences": incidences(points, lines), "points": len(points), "lines": len(lines)}
    m, why = obtain_map(domain, constraints_for(points, lines), cfg, seed, max(len(points), len(lines)))
    if m is None:
        return TrialRecord(index, seed, INCONCLUSIVE, src, notes=[why])
    pts = list(zip(images(m, [x for x, _ in points]), images(m, [y for _, y in points])))
    lns = list(zip(images(m, [s for s, _ in lines]), images(m, [b for _, b in lines])))
    img = {"incidences": image_incidences(pts, lns, m.p), "points": len(set(pts)), "lines": len(set(lns))}
    return TrialRecord(index, seed, PASS if img == src else FAIL, src, img, map_info(m))


def sample(domain: DomainPresentation, rng, n: int, bound: int):
    """n distinct points and n distinct lines, most lines through some sampled point."""
    points: dict = {}
    while len(points) < n:
        points.setdefault((sample_element(domain, rng, 3), sample_element(domain, rng, 3)), None)
    pts = list(points)
    lines: dict = {}
    while len(lines) < n:
        slope = sample_element(domain, rng, 2)
        if rng.random() < 0.8:
            x, y = pts[rng.randrange(n)]
            lines.setdefault((slope, y - slope * x), None)
        else:
            lines.setdefault((slope, sample_element(domain, rng, bound)), None)
    return pts, list(lines)


def trial(cfg: HarnessConfig, index: int) -> TrialRecord:
    rng = trial_rng(cfg, index)
    points, lines = sample(cfg.presentation, rng, cfg.size, cfg.coeff_bound)
    return incidence_record(cfg.presentation, points, lines, cfg, index, cfg.trial_seed(index))
