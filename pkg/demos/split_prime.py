"""Walk through one reduction: Z[sqrt2] and Z[sqrt2, i] mapped onto Z/p.

Run with:  python demos/split_prime.py
"""

from reduction_engine import ConstraintSet, DomainPresentation, PrimeSearchConfig, apply_map, run_pipeline

# Z[sqrt2]: the element sqrt2 - 1 must not vanish under the map
R2 = DomainPresentation([], [("r2", [-2, 0, 1])])
L = ConstraintSet.of([R2.parse("r2 - 1")])
res = run_pipeline(R2, L, PrimeSearchConfig(2, 50, "strict", max_maps=3))
for m in res.maps:
    print(f"p = {m.p:3d}  r2 -> {m.images['r2']:3d}  r2 - 1 -> {apply_map(m, L.elements[0])}")

# 7 = (3 - sqrt2)(3 + sqrt2), so 7 itself can never be a valid prime for L = {7}
seven = R2.parse("(3 - r2)*(3 + r2)")
print("(3 - r2)(3 + r2) =", seven)
res = run_pipeline(R2, ConstraintSet.of([seven]), PrimeSearchConfig(7, 50, "strict"))
print("first prime for L = {7}:", res.maps[0].p)

# two generators collapse into one primitive element theta = sqrt2 + i
MIXED = DomainPresentation([], [("r2", [-2, 0, 1], [1, 2, -1, 1]), ("i", [1, 0, 1], [-1, 1, "1/2", 2])])
comp = MIXED.composition
print("f_theta coefficients:", comp.f_theta, "irreducibility:", comp.status)
for name, r in comp.rewrites.items():
    print(f"  {name} = ({r.num}) / {r.den}  as a polynomial in theta")
print("primes excluded by denominators:", sorted(comp.denominators))

res = run_pipeline(MIXED, ConstraintSet.of([MIXED.parse("r2 - i")]), PrimeSearchConfig(2, 200, "strict", max_maps=4))
for m in res.maps:
    print(f"p = {m.p:3d}  theta -> {m.a:3d}  images {dict(m.images)}  verified {m.verification.passed}")
