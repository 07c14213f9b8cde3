"""Splitting types of z^2 - 2 and z^3 - 2 modulo primes, next to Galois predictions.

For z^3 - 2 the Galois group is S3: one identity, three transpositions and
two 3-cycles, so the types {1,1,1}, {1,2}, {3} should occur with densities
1/6, 1/2, 1/3.

Run with:  python demos/splitting_densities.py [bound]
"""

import sys
from fractions import Fraction

from reduction_engine import density_scan

bound = int(sys.argv[1]) if len(sys.argv) > 1 else 10**5

cases = [
    ((-2, 0, 1), {(1, 1): Fraction(1, 2), (2,): Fraction(1, 2)}),
    ((-2, 0, 0, 1), {(1, 1, 1): Fraction(1, 6), (1, 2): Fraction(1, 2), (3,): Fraction(1, 3)}),
]
for g, predicted in cases:
    rep = density_scan(g, bound, predicted)
    print(f"g = {list(g)}: {rep.examined} primes up to {bound}, {rep.ramified} ramified")
    for pattern, target in sorted(predicted.items()):
        print(f"  type {str(pattern):10s} observed {rep.density(pattern):.4f}  predicted {float(target):.4f}")
