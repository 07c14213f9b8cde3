"""Singularity of matrices with entries from a finite support, before and after reduction.

The exhaustive test enumerates all |S|^(n^2) matrices; the Monte Carlo test
samples matrices with independent uniform entries and reports the singular
fraction with a Wilson interval.  The primes used are far below the size
the asymptotic singularity bound asks for; only per-matrix preservation is
tested.
"""

from __future__ import annotations

import functools
import itertools
from typing import Sequence

from scipy.stats import binomtest

from .. import upoly
from ..domain import ConstraintSet, DomainPresentation, Element, build_constraints
from .common import FAIL, INCONCLUSIVE, PASS, HarnessConfig, TrialRecord, images, map_info, obtain_map, trial_rng

MAX_N = 8


def det_laplace(rows: Sequence[Sequence]):
    """Determinant by cofactor expansion along rows, memoized on column subsets."""
    n = len(rows)

    @functools.lru_cache(maxsize=None)
    def minor(r: int, cols: tuple):
        if r == n:
            return 1
        acc = 0
        for k, c in enumerate(cols):
            term = rows[r][c] * minor(r + 1, cols[:k] + cols[k + 1 :])
            acc = acc + term if k % 2 == 0 else acc - term
        return acc

    return minor(0, tuple(range(n)))


def det_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Determinant over Z/p by Gaussian elimination."""
    m = [[x % p for x in r] for r in rows]
    n = len(m)
    d = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            d = -d
        d = d * m[k][k] % p
        inv = pow(m[k][k], -1, p)
        for i in range(k + 1, n):
            f = m[i][k] * inv % p
            if f:
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[k])]
    return d % p


def _as_int(e: Element):
    return e.poly.constant_value() if e.poly.is_constant() else None


def source_det(support: Sequence[Element], idx: Sequence[Sequence[int]]):
    ints = [_as_int(s) for s in support]
    if all(isinstance(v, int) for v in ints):
        return support[0].domain.from_int(upoly.bareiss_det([[ints[i] for i in row] for row in idx]))
    return det_laplace([[support[i] for i in row] for row in idx])


def _shape(flat, n):
    return [flat[r * n : (r + 1) * n] for r in range(n)]


def bordered(s_idx: int, t_idx: int, n: int) -> list[list[int]]:
    """s on the diagonal except the last entry, t everywhere else."""
    return [[s_idx if (r == c and r < n - 1) else t_idx for c in range(n)] for r in range(n)]


def _wilson(k: int, n: int) -> list[float]:
    ci = binomtest(k, n).proportion_ci(confidence_level=0.95, method="wilson")
    return [ci.low, ci.high]


def exhaustive_record(domain: DomainPresentation, support: Sequence[Element], n: int, cfg: HarnessConfig,
                      seed=0) -> TrialRecord:
    support = list(support)
    if len(set(support)) != len(support):
        raise ValueError("support elements must be distinct")
    cap = cfg.exhaustive_cap
    if n > cap:
        raise ValueError(f"exhaustive enumeration is limited to n <= {cap}")
    mats = [_shape(flat, n) for flat in itertools.product(range(len(support)), repeat=n * n)]
    dets = [source_det(support, m) for m in mats]
    singular = [d.is_zero() for d in dets]
    src = {"matrices": len(mats), "expected": len(support) ** (n * n), "singular": sum(singular), "support": len(support)}
    nonzero = [d for d, z in zip(dets, singular) if not z]
    L = build_constraints("custom", nonzero, [f"det{k}" for k in range(len(nonzero))]) if nonzero else ConstraintSet(())
    m, why = obtain_map(domain, L, cfg, seed, n)
    if m is None:
        return TrialRecord(0, seed, INCONCLUSIVE, src, notes=[why])
    vals = images(m, support)
    img_sing = [det_mod_p([[vals[i] for i in row] for row in mat], m.p) == 0 for mat in mats]
    agree = sum(a == b for a, b in zip(singular, img_sing))
    notes = []
    identity_ok = True
    for si, ti in itertools.permutations(range(len(support)), 2):
        s, t = support[si], support[ti]
        if t.is_zero() or n < 1:
            continue
        d = source_det(support, bordered(si, ti, n))
        if d != (s - t) ** (n - 1) * t or d.is_zero():
            identity_ok = False
    notes.append(f"bordered-diagonal identity det = (s-t)^(n-1) t holds: {identity_ok}")
    img = {"matrices": len(mats), "expected": src["expected"], "singular": sum(img_sing),
           "support": len(set(vals)), "agree": agree}
    src = dict(src, agree=len(mats))
    verdict = PASS if img == src and identity_ok else FAIL
    return TrialRecord(0, seed, verdict, src, img, map_info(m), notes)


def monte_carlo_record(domain: DomainPresentation, support: Sequence[Element], n: int, samples: int,
                       cfg: HarnessConfig, rng, index=0, seed=0) -> TrialRecord:
    if not 1 <= n <= MAX_N:
        raise ValueError(f"Monte Carlo matrices need 1 <= n <= {MAX_N}")
    k = len(support)
    mats = [[[rng.randrange(k) for _ in range(n)] for _ in range(n)] for _ in range(samples)]
    dets = [source_det(support, m) for m in mats]
    singular = [d.is_zero() for d in dets]
    distinct_nonzero = list(dict.fromkeys(d for d, z in zip(dets, singular) if not z))
    parts = []
    if distinct_nonzero:
        parts.append(build_constraints("custom", distinct_nonzero, [f"det{j}" for j in range(len(distinct_nonzero))]))
    if len(support) > 1:
        parts.append(build_constraints("pairwise-differences", support, [f"s{j}" for j in range(k)]))
    L = parts[0].merge(*parts[1:]) if parts else ConstraintSet(())
    src = {"samples": samples, "singular": sum(singular)}
    m, why = obtain_map(domain, L, cfg, seed, n)
    if m is None:
        return TrialRecord(index, seed, INCONCLUSIVE, src, notes=[why])
    vals = images(m, support)
    img_sing = [det_mod_p([[vals[i] for i in row] for row in mat], m.p) == 0 for mat in mats]
    agree = sum(a == b for a, b in zip(singular, img_sing))
    img = {"samples": samples, "singular": sum(img_sing)}
    low, high = _wilson(src["singular"], samples)
    notes = [f"agreement {agree}/{samples}", f"singular fraction {src['singular'] / samples:.4f}, 95% Wilson CI [{low:.4f}, {high:.4f}]"]
    src["agree"] = samples
    img["agree"] = agree
    return TrialRecord(index, seed, PASS if img == src else FAIL, src, img, map_info(m), notes)


def parse_support(domain: DomainPresentation, support: Sequence[str]) -> list[Element]:
    return [domain.parse(s) for s in support]


def trial(cfg: HarnessConfig, index: int) -> TrialRecord:
    domain = cfg.presentation
    support = parse_support(domain, cfg.support)
    if cfg.exhaustive:
        rec = exhaustive_record(domain, support, cfg.size, cfg, cfg.trial_seed(index))
        rec.index = index
        return rec
    rng = trial_rng(cfg, index)
    return monte_carlo_record(domain, support, cfg.size, cfg.samples, cfg, rng, index, cfg.trial_seed(index))
