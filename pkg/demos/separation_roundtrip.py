"""Separation instances decoded from norm-preserving extensions.

Two disjoint enumerations are compiled into per-block weights, then into
a functional on an embedded subspace of l1 with bound 1.  Any extension
with the same bound is forced, block by block, to reveal which side each
enumerated number belongs to: the probe value comes out negative for
numbers enumerated by p and positive for numbers enumerated by q.
Numbers enumerated by neither are genuinely free, and the midpoint
chooser sends them to zero.
"""

from normext import Enumeration, SEPInstance
from normext.reductions import run_sep_reduction, separation_weights

sep = SEPInstance(Enumeration((0, 3)), Enumeration((2, 4)))
weights = separation_weights(sep)

print("enumerations: p lists (0, 3), q lists (2, 4)")
print("per-block weights:")
for n in sorted(weights.delta):
    print(f"  n={n}: delta = {weights.delta[n]}, eps = {weights.eps(n)}")

red = run_sep_reduction(sep, fuel=6, precision=20)
print()
print("probe values after the full extension (fuel 6, midpoint chooser):")
for n in range(6):
    tag = "p" if n in sep.p.range() else "q" if n in sep.q.range() else "-"
    print(f"  n={n} [{tag}]: g(probe_{n}) = {red.values[n]}")

print()
print(f"decoded separating set B = {sorted(red.decoded)}")
print(f"range(p) inside B and B disjoint from range(q): {red.separates}")
