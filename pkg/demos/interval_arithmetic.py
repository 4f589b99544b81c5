"""Exact interval arithmetic, real enclosures and monotone cuts.

A real number here is never a float: it is a query that, asked at
precision k, returns a rational interval of width at most 2^-k nested
inside every coarser answer.  Monotone cuts describe suprema and infima;
their limits become exactly computable once a stabilization certificate
says the sequence has stopped moving.
"""

from fractions import Fraction as F

from normext import (
    MonotoneCut,
    RealEnclosure,
    cut_limit,
    interval_arith,
    real_approx,
    two_pow,
)
from normext.exactreal import RationalInterval

print("interval hulls are exact images:")
print("  [1,2] + [3,4]      =", interval_arith("add", RationalInterval(1, 2), RationalInterval(3, 4)))
print("  |[-2,1]|           =", interval_arith("abs", RationalInterval(-2, 1)))
print("  (1/2) * [1,3]      =", interval_arith("scale", F(1, 2), RationalInterval(1, 3)))

print()
print("a real as a precision-indexed enclosure: x = sum of 2^-(n+1)")
x = RealEnclosure.from_partial_sums(
    term=lambda n: two_pow(n + 1), tail_bound=lambda m: two_pow(m)
)
for k in (2, 6, 10):
    box = real_approx(x, k)
    print(f"  precision {k:>2}: [{box.lo}, {box.hi}]  width {box.width()}")
print("  every box contains 1, and the boxes are nested")

print()
print("monotone cuts with stabilization certificates:")
lower = MonotoneCut("lower", [F(0), F(1, 4), F(1, 4)], stabilized_at=1)
upper = MonotoneCut("upper", [F(1), F(3, 4), F(3, 4)], stabilized_at=1)
print("  sup of (0, 1/4, 1/4, ...) =", cut_limit(lower))
print("  inf of (1, 3/4, 3/4, ...) =", cut_limit(upper))

unstable = MonotoneCut("lower", [F(0), F(1, 4)])
try:
    cut_limit(unstable)
except Exception as exc:
    print("  without a certificate:", exc)
