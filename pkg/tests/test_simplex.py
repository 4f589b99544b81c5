import itertools
import random
from fractions import Fraction as F

import pytest

from normext.simplex import (
    LPInfeasibleError,
    LPProblem,
    LPUnboundedError,
    simplex_min,
    solve_lp_exact,
)


class TestBasics:
    def test_single_variable_max(self):
        s = solve_lp_exact(LPProblem.build([1], [[1]], ["<="], [3], sense="max"))
        assert s.value == 3 and s.witness == (F(3),)

    def test_degenerate_face_returns_vertex(self):
        s = solve_lp_exact(
            LPProblem.build([1, 1], [[1, 1]], ["<="], [1], sense="max")
        )
        assert s.value == 1
        assert sum(s.witness) == 1
        assert all(v in (F(0), F(1)) for v in s.witness)

    def test_l1_epigraph_pattern(self):
        # min t subject to t >= 1 - c, t >= c - 1, c free
        s = solve_lp_exact(
            LPProblem.build(
                [1, 0], [[1, 1], [1, -1]], [">=", ">="], [1, -1],
                sense="min", free=[False, True],
            )
        )
        assert s.value == 0 and s.witness[1] == 1

    def test_infeasible_distinct(self):
        with pytest.raises(LPInfeasibleError):
            solve_lp_exact(LPProblem.build([1], [[1]], ["<="], [-1]))

    def test_unbounded_distinct(self):
        with pytest.raises(LPUnboundedError):
            solve_lp_exact(LPProblem.build([1], [[1]], [">="], [0], sense="max"))

    def test_equalities_exact(self):
        s = solve_lp_exact(
            LPProblem.build(
                [3, 2], [[1, 1], [1, -1]], ["==", "=="], [F(7, 2), F(1, 2)]
            )
        )
        assert s.value == 9 and s.witness == (F(2), F(3, 2))

    def test_free_variable_negative_optimum(self):
        s = solve_lp_exact(
            LPProblem.build([1], [[1]], [">="], [-5], sense="min", free=[True])
        )
        assert s.value == -5 and s.witness == (F(-5),)

    def test_mismatched_shapes_rejected(self):
        with pytest.raises(ValueError):
            LPProblem.build([1, 2], [[1]], ["<="], [1])


class TestWarmBasis:
    def test_slack_basis_start(self):
        value, z = simplex_min(
            [[1, 0, 1, 0], [0, 1, 0, 1]], [2, 3], [-1, -1, 0, 0], basis=[2, 3]
        )
        assert value == -5 and z[:2] == [F(2), F(3)]

    def test_infeasible_basis_rejected(self):
        with pytest.raises(LPInfeasibleError):
            simplex_min([[1, 1]], [-1], [1, 0], basis=[1])

    def test_degenerate_cycling_guard(self):
        # classic cycling-prone tableau; Bland fallback must terminate
        rows = [
            [F(1, 4), -8, -1, 9, 1, 0, 0],
            [F(1, 2), -12, F(-1, 2), 3, 0, 1, 0],
            [0, 0, 1, 0, 0, 0, 1],
        ]
        costs = [F(-3, 4), 20, F(-1, 2), 6, 0, 0, 0]
        value, z = simplex_min(rows, [0, 0, 1], costs, basis=[4, 5, 6])
        assert value == F(-5, 4)


def brute_force_box_lp(objective, lhs, rhs, box):
    """Exact LP oracle by vertex enumeration on a boxed polytope.

    Constraints: lhs x <= rhs, 0 <= x_i <= box.  Every vertex solves n
    active constraints; enumerate all n-subsets of the constraint set.
    """
    n = len(objective)
    rows = [list(r) for r in lhs] + [
        [F(1) if j == i else F(0) for j in range(n)] for i in range(n)
    ] + [
        [F(-1) if j == i else F(0) for j in range(n)] for i in range(n)
    ]
    rhs_all = list(rhs) + [F(box)] * n + [F(0)] * n

    def solve_square(idx):
        a = [rows[i][:] + [rhs_all[i]] for i in idx]
        cols = list(range(n))
        piv = []
        for r in range(n):
            p = next((c for c in cols if a[r][c] != 0), None)
            if p is None:
                return None
            cols.remove(p)
            piv.append(p)
            d = a[r][p]
            a[r] = [v / d for v in a[r]]
            for r2 in range(n):
                if r2 != r and a[r2][p] != 0:
                    f = a[r2][p]
                    a[r2] = [v - f * w for v, w in zip(a[r2], a[r])]
        x = [F(0)] * n
        for r, p in enumerate(piv):
            x[p] = a[r][-1]
        return x

    best = None
    for idx in itertools.combinations(range(len(rows)), n):
        x = solve_square(list(idx))
        if x is None:
            continue
        if any(sum(r[j] * x[j] for j in range(n)) > b for r, b in zip(rows, rhs_all)):
            continue
        value = sum(objective[j] * x[j] for j in range(n))
        if best is None or value > best:
            best = value
    return best


def test_random_lps_match_vertex_enumeration():
    rng = random.Random(13)
    for _ in range(40):
        n = rng.randint(1, 3)
        m = rng.randint(1, 3)
        objective = [F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n)]
        lhs = [
            [F(rng.randint(-5, 5), rng.randint(1, 2)) for _ in range(n)]
            for _ in range(m)
        ]
        rhs = [F(rng.randint(0, 8), rng.randint(1, 2)) for _ in range(m)]
        box = 6
        expected = brute_force_box_lp(objective, lhs, rhs, box)
        rows = lhs + [[F(1) if j == i else F(0) for j in range(n)] for i in range(n)]
        rels = ["<="] * (m + n)
        rhs_full = rhs + [F(box)] * n
        got = solve_lp_exact(
            LPProblem.build(objective, rows, rels, rhs_full, sense="max")
        )
        assert got.value == expected
