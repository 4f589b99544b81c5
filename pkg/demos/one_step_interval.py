"""The one-step extension interval, computed exactly by rational LP.

Extending a norm-1 functional f from a subspace A by one vector x is
possible exactly for the values in

    [ sup_y (f(y) - ||x - y||),  inf_y (f(y) + ||x - y||) ]

Both ends are linear programs in the combination coefficients and are
solved in exact rational arithmetic; a brute-force lattice scan confirms
them from below and above.
"""

from fractions import Fraction as F

from normext import FunctionalPresentation, GeneratorSystem, one_step_bounds
from normext.spaces import FinVec
from normext.verify import grid_one_step_oracle

cases = [
    ("A = span{e0}, f(e0) = 1, x = e1 (orthogonal direction)",
     GeneratorSystem((FinVec({0: 1}),)), FunctionalPresentation({0: 1}, 1),
     FinVec({1: 1})),
    ("A = span{e0}, f(e0) = 1, x = e0 (inside the span)",
     GeneratorSystem((FinVec({0: 1}),)), FunctionalPresentation({0: 1}, 1),
     FinVec({0: 1})),
    ("A = span{(1,1)}, f = twice the coefficient, x = e0 (forced corner)",
     GeneratorSystem((FinVec({0: 1, 1: 1}),)), FunctionalPresentation({0: 2}, 1),
     FinVec({0: 1})),
    ("A = span{(1,-1/2)}, f = the l1 norm along the line, x = e1",
     GeneratorSystem((FinVec({0: 1, 1: F(-1, 2)}),)),
     FunctionalPresentation({0: F(3, 2)}, 1), FinVec({1: 1})),
]

for label, system, f, x in cases:
    b = one_step_bounds(f, system, x)
    vals = [f.value(j) for j in range(len(system.gens))]
    glo = grid_one_step_oracle(vals, system.gens, x, upper=False)
    ghi = grid_one_step_oracle(vals, system.gens, x, upper=True)
    print(label)
    print(f"  admissible g(x) in [{b.lo}, {b.hi}]")
    print(f"  lattice scan brackets: sup side {glo}, inf side {ghi}")
    if b.lo == b.hi:
        print("  the extension is forced; no oracle needed")
    print()
