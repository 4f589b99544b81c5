"""Iterating the one-step engine over the unit vectors of l1.

A functional presented on a generator system is pushed, one unit vector
at a time, to a dual vector w with sup |w_i| <= 1.  The choice oracle is
injected: midpoint, left endpoint and right endpoint all give valid
norm-preserving extensions, and the dual vector pairs with every
generator to exactly its presented value.
"""

from fractions import Fraction as F

from normext import (
    CHOOSERS,
    FunctionalPresentation,
    GeneratorSystem,
    extend_full_l1,
)
from normext.spaces import FinVec

gens = (FinVec({0: F(1, 2), 3: F(-1, 4)}), FinVec({1: 1, 2: F(1, 8)}))
values = {0: F(3, 8), 1: F(-1, 2)}
f = FunctionalPresentation(values, 1)
system = GeneratorSystem(gens)

for name in ("mid", "left", "right"):
    res = extend_full_l1(f, system, fuel=2, precision=16, chooser=CHOOSERS[name])
    w = [res.dual.coord(i) for i in range(4)]
    print(f"chooser {name:>5}: w = ({', '.join(str(v) for v in w)})")
    for j, g in enumerate(gens):
        print(f"   pairing with generator {j}: {res.dual.pair_finite(g)}"
              f"  (presented {values[j]})")
print()
print("all three dual vectors extend the same functional;")
print("the admissible freedom is exactly the per-step choice interval")
