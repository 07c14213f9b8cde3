"""Integer points for the transcendental generators that keep constraints alive.

Each constraint is rewritten over Q[x_1..x_j][theta]/f_theta.  Points are
drawn uniformly from [-B, B]^j; a point is accepted when the product of the
specialized constraints is non-zero modulo f_theta.  B starts at twice the
total degree of that product and doubles after a batch with no success.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import upoly
from ._rng import rng_for
from .compose import THETA, CompositionResult, rewrite_element
from .domain import ConstraintSet, DomainPresentation
from .irreducibility import CERTIFIED
from .multipoly import MultiPoly
from .upoly import RatPoly

BATCHES = 64
BATCH_SIZE = 16


class SpecializationError(ArithmeticError):
    def __init__(self, message: str, transcript: Sequence = ()):
        super().__init__(message)
        self.transcript = list(transcript)


@dataclass(frozen=True)
class SpecializationResult:
    assignment: dict
    product: RatPoly
    transcript: list
    specialized: tuple = field(default=(), repr=False)

    def to_json(self) -> dict:
        return {
            "assignment": dict(self.assignment),
            "product": {"numerator": list(self.product.num), "denominator": self.product.den},
            "rejected": list(self.transcript),
        }


def _at_point(poly: MultiPoly, names: Sequence[str], point: Sequence[int], f_theta) -> tuple:
    """Substitute integers for the transcendentals; coefficients in theta."""
    it = poly.vars.index(THETA)
    idx = [poly.vars.index(n) for n in names]
    out: dict[int, object] = {}
    for e, c in poly.terms.items():
        v = c
        for i, x in zip(idx, point):
            if e[i]:
                v = v * x ** e[i]
        if v:
            out[e[it]] = out.get(e[it], 0) + v
    top = max(out, default=-1)
    coeffs = upoly.trim(out.get(k, 0) for k in range(top + 1))
    return upoly.rem_q(coeffs, f_theta)


def _product(polys: Sequence[tuple], f_theta) -> tuple:
    acc: tuple = (1,)
    for q in polys:
        acc = upoly.mulmod_q(acc, q, f_theta)
        if not acc:
            break
    return acc


def specialize(
    presentation: DomainPresentation,
    constraints: ConstraintSet,
    comp: CompositionResult | None = None,
    seed: int = 0,
    batches: int = BATCHES,
    batch_size: int = BATCH_SIZE,
) -> SpecializationResult:
    if not len(constraints):
        raise ValueError("specialize needs at least one constraint")
    comp = comp if comp is not None else presentation.composition
    names = presentation.transcendentals
    f = comp.f_theta
    rewritten = [rewrite_element(e.poly, comp, names) for e, _ in constraints]
    labels = constraints.labels

    if not names:
        vals = [_at_point(r, (), (), f) for r in rewritten]
        for v, lab in zip(vals, labels):
            if not v:
                if comp.status == CERTIFIED:
                    raise SpecializationError(f"internal inconsistency: constraint {lab} rewrites to zero")
                raise SpecializationError(
                    f"presentation not a domain or constraint zero: {lab} vanishes modulo f_theta"
                )
        prod = _product(vals, f)
        return SpecializationResult({}, RatPoly.from_coeffs(prod), [], tuple(RatPoly.from_coeffs(v) for v in vals))

    # total degree in the transcendentals of the product
    theta_i = len(names)
    degree = sum(max((sum(e[:theta_i]) for e in r.terms), default=0) for r in rewritten)
    bound = max(2 * degree, 1)
    rng = rng_for("specialize", seed)
    transcript = []
    for _ in range(batches):
        for _ in range(batch_size):
            point = tuple(rng.randint(-bound, bound) for _ in names)
            vals = [_at_point(r, names, point, f) for r in rewritten]
            prod = _product(vals, f)
            if prod:
                # a zero factor would force a zero product; check anyway
                assert all(vals)
                return SpecializationResult(
                    dict(zip(names, point)),
                    RatPoly.from_coeffs(prod),
                    transcript,
                    tuple(RatPoly.from_coeffs(v) for v in vals),
                )
            vanished = [lab for v, lab in zip(vals, labels) if not v] or ["product"]
            transcript.append({"assignment": dict(zip(names, point)), "bound": bound, "vanished": vanished[0]})
        bound *= 2
    raise SpecializationError("no admissible integer point within the retry budget", transcript)


def evaluate_at(poly: MultiPoly, presentation: DomainPresentation, comp: CompositionResult, assignment: dict) -> RatPoly:
    """Independent re-evaluation of one element under an assignment."""
    names = presentation.transcendentals
    r = rewrite_element(poly, comp, names)
    return RatPoly.from_coeffs(_at_point(r, names, [assignment[n] for n in names], comp.f_theta))
