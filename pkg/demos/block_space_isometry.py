"""The weighted block space, its isometric copy inside l1, and the
distance function of its diagonal-free subspace.

Each block carries a two-dimensional norm parametrized by a weight; the
whole space is their weighted l1 sum.  A linear map per block turns the
block norm into a sup norm, the corner isometry turns that into an l1
norm, and the weighted sum then matches the plain l1 norm - all in exact
rational arithmetic, so the isometry identity is an equality of
fractions, not an approximation.
"""

import random
from fractions import Fraction as F

from normext import Enumeration, SEPInstance
from normext.reductions import (
    alpha_subspace_distance,
    embed_l1,
    embed_l1_inv,
    separation_weights,
)
from normext.spaces import BlockVec, block_sum_norm, l1_norm
from normext.verify import distance_lp

sep = SEPInstance(Enumeration((0, 2)), Enumeration((1,)))
eps = separation_weights(sep).eps

x = BlockVec({0: (F(1), F(-1, 2)), 1: (F(-2, 3), F(1, 4)), 2: (F(0), F(1))})
image = embed_l1(x, eps)

print("block vector x:", x)
print("image in l1:  ", image)
print("block-sum norm:", block_sum_norm(x, eps))
print("l1 norm of image:", l1_norm(image), "(equal, exactly)")
print("round trip recovers x:", embed_l1_inv(image, eps) == x)

print()
print("distance to the subspace with vanishing second components:")
d = alpha_subspace_distance(x, eps)
print("  closed form:", d)
print("  exact LP minimization:", distance_lp(x, eps), "(equal)")

print()
print("the identity is not a coincidence of this x:")
rng = random.Random(1)
for trial in range(3):
    y = BlockVec({n: (F(rng.randint(-9, 9), 4), F(rng.randint(-9, 9), 4))
                  for n in range(4)})
    lhs = l1_norm(embed_l1(y, eps))
    rhs = block_sum_norm(y, eps)
    print(f"  random sample {trial}: {lhs} == {rhs}: {lhs == rhs}")
