"""Shared plumbing for the preservation experiments."""

from __future__ import annotations

import functools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

from .._rng import derive_seed, rng_for
from ..domain import ConstraintSet, DomainPresentation, Element
from ..reduce import STRICT, PrimeSearchConfig, ReductionMap, apply_map, run_pipeline
from ..specialize import SpecializationError

APPLICATIONS = ("sumprod", "incidence", "distance", "sl2", "matrix")
DOMAINS = ("gaussian", "sqrt2", "mixed", "transcendental", "integer")
DEFAULT_SIZE = {"sumprod": 8, "incidence": 6, "distance": 6, "sl2": 3, "matrix": 3}

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@functools.lru_cache(maxsize=None)
def preset(name: str) -> DomainPresentation:
    if name == "gaussian":
        return DomainPresentation([], [("i", [1, 0, 1])])
    if name == "sqrt2":
        return DomainPresentation([], [("r2", [-2, 0, 1])])
    if name == "mixed":
        return DomainPresentation([], [("r2", [-2, 0, 1]), ("i", [1, 0, 1])])
    if name == "transcendental":
        return DomainPresentation(["t"], [])
    if name == "integer":
        return DomainPresentation()
    raise ValueError(f"unknown domain {name!r}")


def basis(domain: DomainPresentation) -> list[Element]:
    """1, each generator, and the product of the algebraic generators when there are several."""
    out = [domain.one()] + [domain.gen(v) for v in domain.vars]
    algs = [domain.gen(g.name) for g in domain.algebraics]
    if len(algs) > 1:
        prod = domain.one()
        for a in algs:
            prod = prod * a
        out.append(prod)
    return out


def sample_element(domain: DomainPresentation, rng, bound: int = 9) -> Element:
    acc = domain.zero()
    for b in basis(domain):
        acc = acc + b * rng.randint(-bound, bound)
    return acc


def sample_distinct(domain: DomainPresentation, rng, n: int, bound: int = 9) -> list[Element]:
    seen: dict = {}
    while len(seen) < n:
        e = sample_element(domain, rng, bound)
        seen.setdefault(e, None)
    return list(seen)


@dataclass(frozen=True)
class HarnessConfig:
    application: str
    size: int | None = None
    trials: int = 1
    seed: int = 0
    domain: str = "gaussian"
    primes: tuple = (2, 10**6)
    mode: str = STRICT
    enforce_prime_bound: bool = True
    exhaustive: bool = False
    exhaustive_cap: int = 3
    support: tuple = ("-1", "1")
    samples: int = 1000
    workers: int = 1
    coeff_bound: int = 9

    def __post_init__(self):
        if self.application not in APPLICATIONS:
            raise ValueError(f"unknown application {self.application!r}")
        if self.size is None:
            object.__setattr__(self, "size", DEFAULT_SIZE[self.application])
        if self.size < 1:
            raise ValueError("size must be at least 1")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.domain not in DOMAINS:
            raise ValueError(f"unknown domain {self.domain!r}")
        lo, hi = self.primes
        if lo < 2 or hi < lo:
            raise ValueError("bad prime range")

    @property
    def presentation(self) -> DomainPresentation:
        return preset(self.domain)

    def trial_seed(self, index: int) -> int:
        return derive_seed("harness", self.application, self.seed, index)

    def to_json(self) -> dict:
        doc = asdict(self)
        doc["primes"] = list(self.primes)
        doc["support"] = list(self.support)
        return doc


@dataclass
class TrialRecord:
    index: int
    seed: int
    verdict: str
    source: dict = field(default_factory=dict)
    image: dict = field(default_factory=dict)
    map: dict | None = None
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class HarnessReport:
    application: str
    config: HarnessConfig
    trials: list

    @property
    def passed(self) -> int:
        return sum(t.verdict == PASS for t in self.trials)

    @property
    def failed(self) -> int:
        return sum(t.verdict == FAIL for t in self.trials)

    @property
    def inconclusive(self) -> int:
        return sum(t.verdict == INCONCLUSIVE for t in self.trials)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        return {
            "application": self.application,
            "config": self.config.to_json(),
            "aggregate": {"pass": self.passed, "fail": self.failed, "inconclusive": self.inconclusive},
            "trials": [t.to_json() for t in self.trials],
        }


def obtain_map(domain: DomainPresentation, constraints: ConstraintSet, cfg: HarnessConfig, seed: int,
               size: int) -> tuple[ReductionMap | None, str]:
    """One verified map for the constraints, or None with a reason."""
    if not len(constraints):
        constraints = ConstraintSet(((domain.one(), "trivial"),))
    lo, hi = cfg.primes
    if cfg.enforce_prime_bound:
        lo = max(lo, size * size + 1)
    if lo > hi:
        return None, f"prime range empty after enforcing p > {size}^2"
    try:
        res = run_pipeline(domain, constraints, PrimeSearchConfig(lo, hi, cfg.mode, 1), seed)
    except SpecializationError as exc:
        return None, f"specialization failed: {exc}"
    if not res.maps:
        return None, f"no verified map with p in [{lo}, {hi}]"
    return res.maps[0], ""


def map_info(m: ReductionMap) -> dict:
    return {"p": m.p, "a": m.a}


def images(m: ReductionMap, elems: Sequence[Element]) -> list[int]:
    return [apply_map(m, e) for e in elems]


def run_trials(cfg: HarnessConfig, trial: Callable[[HarnessConfig, int], TrialRecord]) -> list[TrialRecord]:
    indices = range(cfg.trials)
    if cfg.workers <= 1 or cfg.trials == 1:
        return [trial(cfg, k) for k in indices]
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(trial, [cfg] * cfg.trials, indices))


def trial_rng(cfg: HarnessConfig, index: int):
    return rng_for("trial", cfg.trial_seed(index))
