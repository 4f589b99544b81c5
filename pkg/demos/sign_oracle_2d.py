"""The two-dimensional case: extensions decide signs, and conversely.

On (R^2, l1) a norm-1 functional on a line through (1, r) has a unique
norm-preserving extension unless the line passes through a corner of the
unit ball.  The dual weights come out as (1, sign r), so reading the
second weight answers "r >= 0 or r <= 0" - the lesser limited principle
of omniscience.  The sup-norm plane is handled by transporting through
the corner isometry (u, v) -> ((u-v)/2, (u+v)/2).
"""

from fractions import Fraction as F

from normext import FunctionalPresentation, conjugate_2d_linf
from normext.reductions import run_llpo_reduction
from normext.spaces import FinVec

print("sign detection through the extension:")
for r in (F(1), F(1, 4), F(0), F(-1, 4), F(-1)):
    red = run_llpo_reduction(r)
    w = red.dual
    print(f"  r={str(r):>4}: x=(1, {r}), f(x)={1 + abs(r)},"
          f" w=({w.coord(0)}, {w.coord(1)}) -> answer {red.answer}")
print("  (answer 1 certifies r >= 0, answer 0 certifies r <= 0;")
print("   at r=0 both are true and the corner tie-break picks 1)")

print()
print("the sup-norm plane via the corner isometry:")
x_inf = FinVec({0: F(3, 2), 1: F(1, 2)})
f_inf = FunctionalPresentation({0: F(3, 2)}, 1)  # value = sup norm of x
conj = conjugate_2d_linf(f_inf, x_inf)
print(f"  point (3/2, 1/2) maps to {conj.image_point} in the l1 plane")
print(f"  extension pulled back: g = ({conj.functional.value(0)},"
      f" {conj.functional.value(1)}), norm {conj.functional.bound} (exact)")
check = conj.functional.value(0) * F(3, 2) + conj.functional.value(1) * F(1, 2)
print(f"  g agrees on the line: g(x) = {check} = f(x)")
