import random
from fractions import Fraction as F

import pytest

from normext.exactreal import RationalInterval, two_pow
from normext.spaces import (
    BlockVec,
    EpsilonSeq,
    FinVec,
    L1Point,
    block_norm,
    block_sum_norm,
    l1_norm,
    l1_to_linf_pair,
    l1point_norm,
    linf_norm,
    linf_to_l1_pair,
    truncate,
)


def geometric_point():
    return L1Point.from_term_series(
        term=lambda n: (n, two_pow(n + 1)), tail_bound=lambda m: two_pow(m)
    )


class TestFinVecNorms:
    def test_l1_of_plus_minus(self):
        assert l1_norm(FinVec({0: 1, 1: -1})) == 2

    def test_linf(self):
        assert linf_norm(FinVec({0: F(1, 2), 1: F(-3, 4)})) == F(3, 4)

    def test_unit_vector(self):
        assert l1_norm(FinVec.unit(5)) == 1

    def test_empty(self):
        assert l1_norm(FinVec()) == 0
        assert linf_norm(FinVec()) == 0

    def test_zero_entries_dropped(self):
        v = FinVec({0: 0, 3: F(1, 2)})
        assert v.support() == (3,)

    def test_vector_algebra(self):
        a = FinVec({0: 1, 2: F(1, 2)})
        b = FinVec({0: -1, 1: 3})
        assert (a + b) == FinVec({1: 3, 2: F(1, 2)})
        assert (a - a).is_zero()
        assert a.scale(2) == FinVec({0: 2, 2: 1})


class TestL1Point:
    def test_embedded_finvec_truncates_to_itself(self):
        v = FinVec({2: F(1, 3)})
        head, tail = truncate(L1Point.from_finvec(v), 7)
        assert head == v and tail == 0

    def test_geometric_truncation(self):
        head, tail = truncate(geometric_point(), 6)
        assert tail <= two_pow(6)
        assert l1_norm(head) + tail == 1

    def test_zero_point(self):
        head, tail = truncate(L1Point.from_finvec(FinVec()), 4)
        assert head.is_zero() and tail == 0

    def test_norm_interval_contains_one(self):
        box = l1point_norm(geometric_point(), 10)
        assert box.contains(1)
        assert box.width() <= two_pow(9)

    def test_norm_of_embedded_is_exact(self):
        v = FinVec({0: F(-2, 3), 4: 1})
        assert l1point_norm(L1Point.from_finvec(v), 3) == RationalInterval(F(5, 3), F(5, 3))

    def test_norm_of_zero(self):
        assert l1point_norm(L1Point.from_finvec(FinVec()), 3) == RationalInterval(0, 0)

    def test_bad_tail_bound_rejected(self):
        p = L1Point(lambda k: (FinVec(), F(1)))
        with pytest.raises(AssertionError):
            truncate(p, 1)


class TestBlockNorm:
    def test_small_weight(self):
        # weight below 1: max(|e*a + b|, |a - b|)
        assert block_norm(F(1, 3), (1, 0)) == 1

    def test_weight_one(self):
        assert block_norm(F(1), (1, 1)) == 2

    def test_large_weight(self):
        assert block_norm(F(3), (0, 1)) == 1

    def test_requires_positive_weight(self):
        with pytest.raises(ValueError):
            block_norm(0, (1, 1))

    def test_first_component_only_gives_abs(self):
        rng = random.Random(3)
        for _ in range(200):
            e = F(rng.randint(1, 18), rng.randint(1, 6))
            a = F(rng.randint(-20, 20), rng.randint(1, 8))
            assert block_norm(e, (a, 0)) == abs(a)

    def test_lower_bounds_against_components(self):
        rng = random.Random(4)
        for _ in range(300):
            # weights arising from deltas in [-1/2, 1/2]
            e = F(rng.randint(1, 27), 9)
            if e < F(1, 3):
                e = F(1, 3)
            a = F(rng.randint(-20, 20), rng.randint(1, 8))
            b = F(rng.randint(-20, 20), rng.randint(1, 8))
            n = block_norm(e, (a, b))
            assert n >= abs(b)
            assert n >= abs(a) / 2


class TestBlockSumNorm:
    def test_single_block(self):
        eps = EpsilonSeq({0: F(1, 3)})
        assert block_sum_norm(BlockVec.single(0, 1, 0), eps) == F(1, 2)

    def test_zero_vector(self):
        assert block_sum_norm(BlockVec(), EpsilonSeq()) == 0

    def test_second_component_blocks(self):
        # (0,1) has block norm 1 under every weight
        x = BlockVec({0: (0, 1), 1: (0, 1)})
        assert block_sum_norm(x, EpsilonSeq({0: F(7, 2), 1: F(2, 11)})) == F(3, 4)


class TestNormAxioms:
    def test_triangle_and_homogeneity(self):
        rng = random.Random(11)
        eps = EpsilonSeq({0: F(1, 3), 1: F(3), 2: F(1)})
        for _ in range(200):
            x = FinVec({i: F(rng.randint(-9, 9), rng.randint(1, 4)) for i in range(4)})
            y = FinVec({i: F(rng.randint(-9, 9), rng.randint(1, 4)) for i in range(4)})
            c = F(rng.randint(-6, 6), rng.randint(1, 3))
            assert l1_norm(x + y) <= l1_norm(x) + l1_norm(y)
            assert linf_norm(x + y) <= linf_norm(x) + linf_norm(y)
            assert l1_norm(x.scale(c)) == abs(c) * l1_norm(x)
            assert linf_norm(x.scale(c)) == abs(c) * linf_norm(x)
            bx = BlockVec({i: (F(rng.randint(-9, 9), 3), F(rng.randint(-9, 9), 3)) for i in range(3)})
            by = BlockVec({i: (F(rng.randint(-9, 9), 3), F(rng.randint(-9, 9), 3)) for i in range(3)})
            assert block_sum_norm(bx + by, eps) <= block_sum_norm(bx, eps) + block_sum_norm(by, eps)
            assert block_sum_norm(bx.scale(c), eps) == abs(c) * block_sum_norm(bx, eps)
            e = F(rng.randint(1, 12), 4)
            va = (F(rng.randint(-9, 9), 3), F(rng.randint(-9, 9), 3))
            vb = (F(rng.randint(-9, 9), 3), F(rng.randint(-9, 9), 3))
            assert block_norm(e, (va[0] + vb[0], va[1] + vb[1])) <= block_norm(e, va) + block_norm(e, vb)
            assert block_norm(e, (c * va[0], c * va[1])) == abs(c) * block_norm(e, va)


class TestPairIsometry:
    def test_corner_map_values(self):
        assert linf_to_l1_pair(1, 1) == (0, 1)
        assert linf_to_l1_pair(1, -1) == (1, 0)
        assert linf_to_l1_pair(F(1, 3), 1) == (F(-1, 3), F(2, 3))

    def test_norm_identity_and_inverse(self):
        rng = random.Random(5)
        for _ in range(100):
            u = F(rng.randint(-30, 30), rng.randint(1, 7))
            v = F(rng.randint(-30, 30), rng.randint(1, 7))
            a, b = linf_to_l1_pair(u, v)
            assert abs(a) + abs(b) == max(abs(u), abs(v))
            assert l1_to_linf_pair(a, b) == (u, v)


def test_epsilon_seq_defaults_to_one():
    eps = EpsilonSeq({2: F(1, 3)})
    assert eps(2) == F(1, 3)
    assert eps(9) == 1
    with pytest.raises(ValueError):
        EpsilonSeq({0: 0})
