"""Exact rational linear programming via a dense tableau simplex.

All arithmetic is over ``fractions.Fraction``, so optima and witnesses
are exact.  The pivot rule is Dantzig with a permanent switch to Bland's
rule after a pivot budget, which guarantees termination on degenerate
instances.  Infeasibility and unboundedness are reported as distinct
exceptions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .exactreal import rat

ZERO = Fraction(0)
ONE = Fraction(1)


class LPError(Exception):
    pass


class LPInfeasibleError(LPError):
    pass


class LPUnboundedError(LPError):
    pass


@dataclass(frozen=True)
class LPProblem:
    """min or max of objective . x subject to lhs[i] . x (rel[i]) rhs[i].

    Variables are nonnegative unless marked free.  ``rel`` entries are
    "<=", ">=" or "==".
    """

    objective: Tuple[Fraction, ...]
    lhs: Tuple[Tuple[Fraction, ...], ...]
    rel: Tuple[str, ...]
    rhs: Tuple[Fraction, ...]
    sense: str = "min"
    free: Optional[Tuple[bool, ...]] = None

    @classmethod
    def build(cls, objective, lhs, rel, rhs, sense="min", free=None) -> "LPProblem":
        obj = tuple(rat(c) for c in objective)
        rows = tuple(tuple(rat(a) for a in row) for row in lhs)
        rhs_t = tuple(rat(b) for b in rhs)
        rel_t = tuple(rel)
        n = len(obj)
        if any(len(row) != n for row in rows):
            raise ValueError("constraint row length does not match objective")
        if not (len(rows) == len(rhs_t) == len(rel_t)):
            raise ValueError("inconsistent constraint counts")
        for r in rel_t:
            if r not in ("<=", ">=", "=="):
                raise ValueError(f"unknown relation {r!r}")
        if sense not in ("min", "max"):
            raise ValueError("sense must be 'min' or 'max'")
        free_t = tuple(bool(f) for f in free) if free is not None else tuple([False] * n)
        if len(free_t) != n:
            raise ValueError("free marker length does not match objective")
        return cls(obj, rows, rel_t, rhs_t, sense, free_t)


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    witness: Tuple[Fraction, ...]


def _pivot(rows: List[List[Fraction]], basis: List[int], costs: List[Fraction],
           r: int, c: int) -> None:
    """Gauss-Jordan pivot on entry (r, c); last column is the rhs."""
    row = rows[r]
    piv = row[c]
    if piv != ONE:
        inv = ONE / piv
        rows[r] = row = [a * inv for a in row]
    for i, other in enumerate(rows):
        if i == r:
            continue
        factor = other[c]
        if factor != ZERO:
            rows[i] = [a - factor * b for a, b in zip(other, row)]
    factor = costs[c]
    if factor != ZERO:
        for j, b in enumerate(row):
            costs[j] -= factor * b
    basis[r] = c


def _reduce_costs(rows: List[List[Fraction]], basis: List[int],
                  costs: List[Fraction]) -> None:
    for r, j in enumerate(basis):
        factor = costs[j]
        if factor != ZERO:
            row = rows[r]
            for k, b in enumerate(row):
                costs[k] -= factor * b


def _run_simplex(rows: List[List[Fraction]], basis: List[int],
                 costs: List[Fraction], ncols: int) -> None:
    """Minimize in place; costs must already be reduced for the basis.

    Raises LPUnboundedError when a negative reduced cost column has no
    positive entry.
    """
    pivots = 0
    bland_after = 64 + 8 * (len(rows) + ncols)
    while True:
        entering = -1
        if pivots < bland_after:
            best = ZERO
            for j in range(ncols):
                cj = costs[j]
                if cj < best:
                    best = cj
                    entering = j
        else:
            for j in range(ncols):
                if costs[j] < ZERO:
                    entering = j
                    break
        if entering < 0:
            return
        leaving = -1
        best_ratio = None
        for i, row in enumerate(rows):
            a = row[entering]
            if a > ZERO:
                ratio = row[-1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving < 0:
            raise LPUnboundedError("objective unbounded on the feasible region")
        _pivot(rows, basis, costs, leaving, entering)
        pivots += 1


def simplex_min(
    lhs: Sequence[Sequence[Fraction]],
    rhs: Sequence[Fraction],
    costs: Sequence[Fraction],
    basis: Optional[Sequence[int]] = None,
) -> Tuple[Fraction, List[Fraction]]:
    """min costs . z subject to lhs z = rhs, z >= 0, exactly.

    When ``basis`` names a feasible basis its columns are pivoted to the
    identity and phase one is skipped, otherwise a full two-phase run is
    performed.  Returns the optimal value and one optimal vertex.
    """
    m = len(lhs)
    n = len(costs)
    rows = [[rat(a) for a in row] + [rat(rhs[i])] for i, row in enumerate(lhs)]

    if basis is not None:
        if len(basis) != m:
            raise LPError("basis must name one column per row")
        cost_row = [rat(c) for c in costs] + [ZERO]
        base = [-1] * m
        taken = [False] * m
        for j in basis:
            r = next(
                (i for i in range(m) if not taken[i] and rows[i][j] != ZERO),
                None,
            )
            if r is None:
                raise LPError("supplied basis columns are singular")
            taken[r] = True
            _pivot(rows, base, cost_row, r, j)
        if any(row[-1] < ZERO for row in rows):
            raise LPInfeasibleError("supplied basis is not feasible")
        _run_simplex(rows, base, cost_row, n)
    else:
        for row in rows:
            if row[-1] < ZERO:
                for j in range(n + 1):
                    row[j] = -row[j]
        art = list(range(n, n + m))
        for i, row in enumerate(rows):
            tail = [ZERO] * m
            tail[i] = ONE
            rows[i] = row[:-1] + tail + [row[-1]]
        base = list(art)
        phase1 = [ZERO] * n + [ONE] * m + [ZERO]
        _reduce_costs(rows, base, phase1)
        _run_simplex(rows, base, phase1, n + m)
        if -phase1[-1] != ZERO:
            raise LPInfeasibleError("constraints admit no solution")
        # drive leftover artificials out of the basis or drop their rows
        drop = []
        for r in range(m):
            if base[r] >= n:
                pivot_col = next(
                    (j for j in range(n) if rows[r][j] != ZERO), None
                )
                if pivot_col is None:
                    drop.append(r)
                else:
                    _pivot(rows, base, phase1, r, pivot_col)
        if drop:
            rows = [row for r, row in enumerate(rows) if r not in drop]
            base = [b for r, b in enumerate(base) if r not in drop]
        rows = [row[:n] + [row[-1]] for row in rows]
        cost_row = [rat(c) for c in costs] + [ZERO]
        _reduce_costs(rows, base, cost_row)
        _run_simplex(rows, base, cost_row, n)

    x = [ZERO] * n
    for r, j in enumerate(base):
        if 0 <= j < n:
            x[j] = rows[r][-1]
    return -cost_row[-1], x


def solve_lp_exact(p: LPProblem) -> LPSolution:
    """Exact optimum and attaining witness for a general rational LP."""
    n = len(p.objective)
    free = p.free or tuple([False] * n)

    # column layout: nonneg vars as-is, free vars split into (+, -)
    col_of_plus = []
    col_of_minus = []
    cols = 0
    for j in range(n):
        col_of_plus.append(cols)
        cols += 1
        if free[j]:
            col_of_minus.append(cols)
            cols += 1
        else:
            col_of_minus.append(-1)

    nslack = sum(1 for r in p.rel if r != "==")
    total = cols + nslack
    lhs_rows: List[List[Fraction]] = []
    slack_at = cols
    for i, row in enumerate(p.lhs):
        full = [ZERO] * total
        for j, a in enumerate(row):
            if a == ZERO:
                continue
            full[col_of_plus[j]] = a
            if free[j]:
                full[col_of_minus[j]] = -a
        if p.rel[i] == "<=":
            full[slack_at] = ONE
            slack_at += 1
        elif p.rel[i] == ">=":
            full[slack_at] = -ONE
            slack_at += 1
        lhs_rows.append(full)

    costs = [ZERO] * total
    sign = ONE if p.sense == "min" else -ONE
    for j, c in enumerate(p.objective):
        costs[col_of_plus[j]] = sign * c
        if free[j]:
            costs[col_of_minus[j]] = -sign * c

    try:
        value, z = simplex_min(lhs_rows, list(p.rhs), costs)
    except LPUnboundedError:
        raise LPUnboundedError(
            "objective unbounded on the feasible region"
            if p.sense == "min"
            else "objective unbounded above on the feasible region"
        )

    witness = []
    for j in range(n):
        v = z[col_of_plus[j]]
        if free[j]:
            v = v - z[col_of_minus[j]]
        witness.append(v)
    return LPSolution(sign * value, tuple(witness))
