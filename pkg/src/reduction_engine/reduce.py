"""Homomorphisms Z[S] -> Z/p that keep every constraint non-zero.

After composition and specialization, Z[S] maps into Q[z]/f_theta and every
constraint becomes a polynomial in z.  A prime p and a root a of f_theta
mod p then give the map z -> a.  In strict mode p must split f_theta * L_1
completely, L_1 being the squarefree part of the constraint product; in
relaxed mode any root a with a non-zero constraint product will do.  Each
candidate is re-checked by `verify_map`, which recomputes everything from
the presentation alone.
"""

from __future__ import annotations

import functools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import upoly
from ._rng import rng_for
from .compose import CompositionResult
from .domain import ConstraintSet, DomainPresentation, Element, random_element
from .modpoly import RAMIFIED, ModPoly, factor_pattern, is_fully_split, roots_mod_p
from .primes import is_probable_prime, prime_divisors, primes_in_range
from .specialize import SpecializationResult, specialize

STRICT = "strict"
RELAXED = "relaxed"
HOM_PAIRS = 32


@dataclass(frozen=True)
class PrimeSearchConfig:
    p_min: int = 2
    p_max: int = 10**4
    mode: str = STRICT
    max_maps: int = 1
    excluded: frozenset = frozenset()
    workers: int = 1

    def __post_init__(self):
        if self.p_min < 2:
            raise ValueError("p_min must be at least 2")
        if self.p_max < self.p_min:
            raise ValueError("empty prime range")
        if self.mode not in (STRICT, RELAXED):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.max_maps < 1:
            raise ValueError("max_maps must be positive")


@dataclass(frozen=True)
class VerificationRecord:
    passed: bool
    failures: tuple = ()
    relations: Mapping[str, int] = field(default_factory=dict)
    theta_residue: int | None = None
    constraints_checked: int = 0
    hom_pairs: int = 0

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "failures": list(self.failures),
            "relations": dict(self.relations),
            "f_theta_at_a": self.theta_residue,
            "constraints_checked": self.constraints_checked,
            "hom_pairs": self.hom_pairs,
        }


@dataclass(frozen=True)
class ReductionMap:
    p: int
    a: int
    images: Mapping[str, int]
    mode: str
    f_theta: tuple
    excluded: frozenset
    verification: VerificationRecord | None = None

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "a": self.a,
            "images": dict(self.images),
            "mode": self.mode,
            "verified": bool(self.verification and self.verification.passed),
            "verification": self.verification.to_json() if self.verification else None,
        }


def apply_map(m: ReductionMap, e: Element) -> int:
    """phi(e) in Z/p, by substituting generator images."""
    dens = e.poly.denominators()
    assert all(d % m.p for d in dens), "denominator not invertible mod p"
    return e.poly.eval_mod(m.images, m.p)


def make_map(presentation: DomainPresentation, comp: CompositionResult, assignment: Mapping[str, int],
             p: int, a: int, mode: str) -> ReductionMap:
    images = {n: assignment[n] % p for n in presentation.transcendentals}
    for name, r in comp.rewrites.items():
        images[name] = r.eval_mod(a, p)
    return ReductionMap(p, a, images, mode, comp.f_theta, comp.denominators)


@functools.lru_cache(maxsize=64)
def _hom_samples(presentation: DomainPresentation, pairs: int, seed) -> tuple:
    rng = rng_for("hom-laws", seed)
    out = []
    for _ in range(pairs):
        x = random_element(presentation, rng)
        y = random_element(presentation, rng)
        out.append((x, y, x * y, x + y))
    return tuple(out)


def check_hom_laws(m: ReductionMap, presentation: DomainPresentation, pairs: int, seed=0) -> list[str]:
    """Compare phi(x*y), phi(x+y) with phi(x)*phi(y), phi(x)+phi(y) on random pairs."""
    bad = []
    for k, (x, y, prod, total) in enumerate(_hom_samples(presentation, pairs, seed)):
        px, py = apply_map(m, x), apply_map(m, y)
        if apply_map(m, prod) != px * py % m.p:
            bad.append(f"product law fails on pair {k}")
        if apply_map(m, total) != (px + py) % m.p:
            bad.append(f"sum law fails on pair {k}")
    return bad


def verify_map(m: ReductionMap, presentation: DomainPresentation, constraints: ConstraintSet,
               seed: int = 0, pairs: int = HOM_PAIRS) -> VerificationRecord:
    """Recheck a map from scratch; failures are reported, never raised."""
    failures: list[str] = []
    relations: dict[str, int] = {}
    theta_res = None
    checked = 0
    try:
        p = m.p
        if not is_probable_prime(p):
            failures.append(f"{p} is not prime")
        if p in m.excluded:
            failures.append(f"{p} divides a rewrite denominator")
        if m.f_theta[-1] % p == 0:
            failures.append(f"{p} divides the leading coefficient of f_theta")
        theta_res = upoly.evaluate(m.f_theta, m.a) % p
        if theta_res:
            failures.append(f"f_theta(a) = {theta_res} mod {p}")
        for g in presentation.algebraics:
            v = upoly.evaluate(g.minpoly, m.images[g.name]) % p
            relations[g.name] = v
            if v:
                failures.append(f"relation of {g.name} gives {v} mod {p}")
        if not failures:
            for e, label in constraints:
                checked += 1
                if apply_map(m, e) == 0:
                    failures.append(f"constraint {label} maps to 0")
                    break
            failures += check_hom_laws(m, presentation, pairs, seed)
    except Exception as exc:  # the verifier reports, it does not raise
        failures.append(f"verification error: {exc!r}")
    return VerificationRecord(not failures, tuple(failures), relations, theta_res, checked, pairs if not failures else 0)


@dataclass(frozen=True)
class _Plan:
    presentation: DomainPresentation
    constraints: ConstraintSet
    comp: CompositionResult
    assignment: dict
    product_num: tuple
    product_den: int
    split_poly: tuple
    mode: str
    excluded: frozenset
    seed: int


def _try_prime(plan: _Plan, p: int) -> ReductionMap | None:
    if p in plan.excluded or plan.product_den % p == 0:
        return None
    f = plan.comp.f_theta
    if plan.mode == STRICT:
        if not any(c % p for c in plan.product_num):
            return None
        if not is_fully_split(plan.split_poly, p):
            return None
        roots = roots_mod_p(ModPoly.from_ints(f, p))
    else:
        if f[-1] % p == 0:
            return None
        roots = [a for a in roots_mod_p(ModPoly.from_ints(f, p)) if upoly.evaluate(plan.product_num, a) % p]
    for a in sorted(roots):
        m = make_map(plan.presentation, plan.comp, plan.assignment, p, a, plan.mode)
        rec = verify_map(m, plan.presentation, plan.constraints, plan.seed)
        if rec.passed:
            return ReductionMap(m.p, m.a, m.images, m.mode, m.f_theta, m.excluded, rec)
    return None


def _scan(args) -> list[ReductionMap]:
    plan, primes, limit = args
    out = []
    for p in primes:
        m = _try_prime(plan, p)
        if m is not None:
            out.append(m)
            if len(out) >= limit:
                break
    return out


def make_plan(presentation, constraints, comp, special: SpecializationResult, mode, excluded=frozenset(), seed=0) -> _Plan:
    num, den = special.product.num, special.product.den
    if not num:
        raise ArithmeticError("constraint product vanishes modulo f_theta")
    l1 = upoly.squarefree_part(num)
    split = upoly.mul(comp.f_theta, l1)
    excl = frozenset(excluded) | comp.denominators | prime_divisors(den)
    return _Plan(presentation, constraints, comp, dict(special.assignment), num, den, split, mode, excl, seed)


def find_maps(presentation: DomainPresentation, constraints: ConstraintSet, comp: CompositionResult,
              special: SpecializationResult, cfg: PrimeSearchConfig, seed: int = 0) -> list[ReductionMap]:
    """Verified maps in ascending order of p, at most one per prime."""
    plan = make_plan(presentation, constraints, comp, special, cfg.mode, cfg.excluded, seed)
    primes = [int(p) for p in primes_in_range(cfg.p_min, cfg.p_max)]
    if cfg.workers <= 1 or len(primes) < 64:
        return _scan((plan, primes, cfg.max_maps))
    chunk = max(16, math.ceil(len(primes) / (4 * cfg.workers)))
    chunks = [primes[i : i + chunk] for i in range(0, len(primes), chunk)]
    maps: list[ReductionMap] = []
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        for part in pool.map(_scan, [(plan, c, cfg.max_maps) for c in chunks]):
            maps.extend(part)
            if len(maps) >= cfg.max_maps:
                break
    return maps[: cfg.max_maps]


@dataclass(frozen=True)
class PipelineResult:
    composition: CompositionResult
    specialization: SpecializationResult
    maps: list
    config: PrimeSearchConfig

    def to_json(self) -> dict:
        return {
            "composition": self.composition.to_json(),
            "specialization": self.specialization.to_json(),
            "maps": [m.to_json() for m in self.maps],
            "scanned": [self.config.p_min, self.config.p_max],
            "mode": self.config.mode,
        }


def run_pipeline(presentation: DomainPresentation, constraints: ConstraintSet,
                 cfg: PrimeSearchConfig | None = None, seed: int = 0) -> PipelineResult:
    """Compose, specialize and search for verified maps."""
    cfg = cfg or PrimeSearchConfig()
    comp = presentation.composition
    special = specialize(presentation, constraints, comp, seed)
    maps = find_maps(presentation, constraints, comp, special, cfg, seed)
    return PipelineResult(comp, special, maps, cfg)


# -- splitting densities ----------------------------------------------------


def pattern_key(pattern: Sequence[int]) -> str:
    return ",".join(str(d) for d in pattern)


def parse_predictions(text: str) -> dict[tuple, Fraction]:
    """Parse "1,1=1/2;2=1/2" into {(1, 1): 1/2, (2,): 1/2}."""
    out = {}
    for part in filter(None, (s.strip() for s in text.split(";"))):
        if "=" not in part:
            raise ValueError(f"prediction {part!r} lacks '='")
        lhs, rhs = part.split("=", 1)
        pattern = tuple(sorted(int(d) for d in lhs.split(",")))
        if not pattern or min(pattern) < 1:
            raise ValueError(f"bad pattern {lhs!r}")
        out[pattern] = Fraction(rhs.strip())
    return out


@dataclass(frozen=True)
class DensityReport:
    polynomial: tuple
    counts: Mapping[tuple, int]
    examined: int
    ramified: int
    bound: int
    predicted: Mapping[tuple, Fraction] | None = None

    @property
    def unramified(self) -> int:
        return self.examined - self.ramified

    def density(self, pattern: Sequence[int]) -> float:
        n = self.unramified
        return self.counts.get(tuple(pattern), 0) / n if n else 0.0

    def deviations(self) -> dict[tuple, float]:
        if not self.predicted:
            return {}
        return {k: abs(self.density(k) - float(v)) for k, v in self.predicted.items()}

    def to_json(self) -> dict:
        doc = {
            "polynomial": list(self.polynomial),
            "bound": self.bound,
            "primes_examined": self.examined,
            "ramified": self.ramified,
            "counts": {pattern_key(k): v for k, v in sorted(self.counts.items())},
            "densities": {pattern_key(k): self.density(k) for k in sorted(self.counts)},
        }
        if self.predicted:
            doc["predicted"] = {pattern_key(k): str(v) for k, v in sorted(self.predicted.items())}
            doc["deviation"] = {pattern_key(k): d for k, d in sorted(self.deviations().items())}
        return doc


def _patterns(args) -> list:
    g, primes = args
    return [factor_pattern(g, p) for p in primes]


def density_scan(g: Sequence[int], bound: int, predicted: Mapping[tuple, Fraction] | None = None,
                 workers: int = 1) -> DensityReport:
    """Decomposition types of g modulo every prime p <= bound."""
    g = upoly.trim(g)
    if upoly.degree(g) < 1:
        raise ValueError("density scan needs a polynomial of positive degree")
    if not upoly.is_squarefree(g):
        raise ValueError("polynomial is not squarefree")
    primes = [int(p) for p in primes_in_range(2, bound)]
    if workers > 1 and len(primes) > 1000:
        size = math.ceil(len(primes) / (4 * workers))
        chunks = [(g, primes[i : i + size]) for i in range(0, len(primes), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            patterns = [x for part in pool.map(_patterns, chunks) for x in part]
    else:
        patterns = _patterns((g, primes))
    counts: dict[tuple, int] = {}
    ramified = 0
    for pat in patterns:
        if pat == RAMIFIED:
            ramified += 1
        else:
            counts[pat] = counts.get(pat, 0) + 1
    return DensityReport(g, counts, len(primes), ramified, bound, dict(predicted) if predicted else None)
