"""Nested-interval choice realized through a one-step extension.

The stages [a_n, b_n] become generators: one ties the hidden value into
the n-th interval, one propagates it along a chain of coordinates.  The
admissible values for extending by the chain point are then exactly the
limit interval scaled by the probe mass, so decoding divides the chosen
value by that mass and lands inside every stage, exactly.
"""

from fractions import Fraction as F

from normext import CHOOSERS, cc_instance_from_stages
from normext.reductions import run_cc_reduction
from normext.spaces import l1_norm

stages = [(F(0), F(1)), (F(1, 8), F(7, 8)), (F(1, 4), F(5, 8))]
cc = cc_instance_from_stages(stages, stabilized_at=2)

print("stages:", ", ".join(f"[{a}, {b}]" for a, b in stages))
for name in ("mid", "left", "right"):
    red = run_cc_reduction(cc, chooser=CHOOSERS[name])
    mass = l1_norm(red.extension.probe)
    print(f"chooser {name:>5}:")
    print(f"  one-step interval for the probe: "
          f"[{red.extension.bounds.lo}, {red.extension.bounds.hi}]"
          f"  (= [a, b] scaled by probe mass {mass})")
    print(f"  decoded y = {red.decoded}")
    print(f"  inside every stage: {red.in_all_stages};"
          f" dual witness valid: {red.witness_valid}")
