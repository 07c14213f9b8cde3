"""Products of 2x2 determinant-one matrices, mapped entrywise."""

from __future__ import annotations

import math
from typing import Sequence

from ..domain import ConstraintSet, DomainPresentation, Element, build_constraints
from .common import FAIL, INCONCLUSIVE, PASS, HarnessConfig, TrialRecord, images, map_info, obtain_map, trial_rng

# a matrix [[a, b], [c, d]] is the tuple (a, b, c, d)


def matmul(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def matmul_mod(x, y, p):
    return tuple(v % p for v in matmul(x, y))


def det(m):
    return m[0] * m[3] - m[1] * m[2]


def inverse(m):
    """Inverse of a determinant-one matrix."""
    a, b, c, d = m
    return (d, -b, -c, a)


def products(A: Sequence, k: int, mul=matmul) -> list:
    """Distinct k-fold products, in order of first appearance."""
    level = list(dict.fromkeys(A))
    for _ in range(k - 1):
        level = list(dict.fromkeys(mul(x, y) for x in level for y in A))
    return level


def unipotent(domain: DomainPresentation, b) -> tuple:
    one, zero = domain.one(), domain.zero()
    b = b if isinstance(b, Element) else domain.from_int(b)
    return (one, b, zero, one)


def sl2_family(domain: DomainPresentation, n: int) -> list:
    """A = {U(2^j) : 1 <= j <= n}; commuting, with |AA| = C(n+1, 2)."""
    return [unipotent(domain, 2**j) for j in range(1, n + 1)]


def first_noncommuting(A: Sequence):
    for i, x in enumerate(A):
        for y in A[i + 1 :]:
            if matmul(x, y) != matmul(y, x):
                return x, y
    return None


def commutator(x, y):
    return matmul(matmul(x, y), matmul(inverse(x), inverse(y)))


def constraints_for(A: Sequence) -> ConstraintSet:
    union = list(dict.fromkeys(list(A) + products(A, 2) + products(A, 3)))
    parts = []
    for k in range(4):
        values = list(dict.fromkeys(m[k] for m in union))
        if len(values) > 1:
            parts.append(build_constraints("pairwise-differences", values, [f"M{j}[{k}]" for j in range(len(values))]))
    pair = first_noncommuting(A)
    if pair:
        c = commutator(*pair)
        items = [c[0] - 1, c[1], c[2], c[3] - 1]
        parts.append(build_constraints("custom", items, ["[B1,B2]-I: b1-1", "b2", "b3", "b4-1"]))
    if not parts:
        return ConstraintSet(())
    return parts[0].merge(*parts[1:])


def sl2_record(domain: DomainPresentation, A: Sequence, cfg: HarnessConfig, index=0, seed=0) -> TrialRecord:
    A = list(dict.fromkeys(A))
    if any(det(m) != 1 for m in A):
        raise ValueError("every matrix must have determinant 1")
    pair = first_noncommuting(A)
    src = {"A": len(A), "AA": len(products(A, 2)), "AAA": len(products(A, 3)), "det_one": True,
           "commutator_nontrivial": pair is not None}
    m, why = obtain_map(domain, constraints_for(A), cfg, seed, len(A))
    if m is None:
        return TrialRecord(index, seed, INCONCLUSIVE, src, notes=[why])
    p = m.p
    flat = images(m, [x for mat in A for x in mat])
    B = [tuple(flat[4 * i : 4 * i + 4]) for i in range(len(A))]

    def mul(x, y):
        return matmul_mod(x, y, p)

    img = {"A": len(set(B)), "AA": len(products(B, 2, mul)), "AAA": len(products(B, 3, mul)),
           "det_one": all((b[0] * b[3] - b[1] * b[2]) % p == 1 for b in B)}
    notes = []
    if pair is None:
        img["commutator_nontrivial"] = False
        notes.append("no non-commuting pair; commutator check skipped")
    else:
        i, j = A.index(pair[0]), A.index(pair[1])
        inv = lambda b: tuple(v % p for v in inverse(b))
        cb = mul(mul(B[i], B[j]), mul(inv(B[i]), inv(B[j])))
        img["commutator_nontrivial"] = cb != (1, 0, 0, 1)
        notes.append(f"commutator of A[{i}], A[{j}] checked")
    n = len(A)
    if all(mat[0] == 1 and mat[2] == 0 and mat[3] == 1 for mat in A):
        notes.append(f"unipotent family: C(n+1, 2) = {math.comb(n + 1, 2)}")
    return TrialRecord(index, seed, PASS if img == src else FAIL, src, img, map_info(m), notes)


def generators(domain: DomainPresentation) -> list:
    """U(g), V(g) and their inverses for g the first generator, or 1 over Z."""
    g = domain.gen(domain.vars[0]) if domain.vars else domain.one()
    one, zero = domain.one(), domain.zero()
    u, v = (one, g, zero, one), (one, zero, g, one)
    return [u, inverse(u), v, inverse(v)]


def sample(domain: DomainPresentation, rng, n: int, max_word: int = 3) -> list:
    gens = generators(domain)
    out: dict = {}
    while len(out) < n:
        word = gens[rng.randrange(4)]
        for _ in range(rng.randint(0, max_word - 1)):
            word = matmul(word, gens[rng.randrange(4)])
        out.setdefault(word, None)
    return list(out)


def trial(cfg: HarnessConfig, index: int) -> TrialRecord:
    rng = trial_rng(cfg, index)
    A = sample(cfg.presentation, rng, cfg.size)
    return sl2_record(cfg.presentation, A, cfg, index, cfg.trial_seed(index))
