"""Acceptance suites: exact identities and oracle cross-checks.

Each suite draws its instances from a seeded generator, runs a pipeline
or an identity, and records failures as rows suitable for CSV output.
The one-step suite checks the LP engine against an independent
brute-force lattice oracle that never touches the simplex: it evaluates
the objective in scaled integer arithmetic over the stated grid,
exactly.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .exactreal import two_pow
from .functionals import FunctionalPresentation, GeneratorSystem
from .hahnbanach import (
    CHOOSERS,
    conjugate_2d_linf,
    extend_findim,
    one_step_bounds,
    one_step_witnesses,
)
from .oracles import (
    CCInstance,
    Enumeration,
    SEPInstance,
    TreeInstance,
    cc_instance_from_stages,
    cc_solve,
    cut_value,
    ivt_to_cc,
    sep_solve,
    wkl_path,
)
from .reductions import (
    alpha_subspace_distance,
    base_functional,
    embed_l1,
    run_cc_reduction,
    run_llpo_reduction,
    run_sep_reduction,
    separation_weights,
)
from .simplex import LPProblem, solve_lp_exact
from .spaces import BlockVec, EpsilonSeq, FinVec, block_sum_norm, l1_norm

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class SuiteResult:
    suite: str
    checks: int = 0
    failures: List[dict] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, instance: str, check: str, expected, got):
        self.checks += 1
        if not ok:
            self.failures.append(
                {
                    "suite": self.suite,
                    "instance": instance,
                    "check": check,
                    "expected": str(expected),
                    "got": str(got),
                }
            )


# ---------------------------------------------------------------------------
# random instance helpers

def _random_fraction(rng: random.Random, span: int = 8, den: int = 8) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_sep_instance(rng: random.Random, universe: int = 8) -> SEPInstance:
    p_vals, q_vals = [], []
    for n in range(universe):
        side = rng.randrange(3)
        if side == 0:
            p_vals.append(n)
        elif side == 1:
            q_vals.append(n)
    rng.shuffle(p_vals)
    rng.shuffle(q_vals)
    return SEPInstance(Enumeration(tuple(p_vals)), Enumeration(tuple(q_vals)))


def random_blockvec(rng: random.Random, blocks: int = 8, support: int = 5) -> BlockVec:
    idx = rng.sample(range(blocks), rng.randint(1, support))
    return BlockVec({n: (_random_fraction(rng), _random_fraction(rng)) for n in idx})


def all_disjoint_pairs(universe: int):
    """Every ordered disjoint pair of subsets of range(universe)."""
    for mask in range(3 ** universe):
        p, q = [], []
        m = mask
        for n in range(universe):
            m, side = divmod(m, 3)
            if side == 1:
                p.append(n)
            elif side == 2:
                q.append(n)
        yield tuple(p), tuple(q)


# ---------------------------------------------------------------------------
# brute-force lattice oracle for the one-step bounds

def _lattice_scan_1d(V: int, deltas: List[int], start: List[int], K: int) -> int:
    """Max over k in [-K, K] of V*k - sum|start_i + k*deltas_i|, exactly."""
    best = None
    cur = [s - (K + 1) * d for s, d in zip(start, deltas)]
    k = -K - 1
    while k < K:
        k += 1
        acc = 0
        for a in range(len(cur)):
            cur[a] += deltas[a]
            c = cur[a]
            acc += c if c >= 0 else -c
        val = V * k - acc
        if best is None or val > best:
            best = val
    return best


def _ternary_max_1d(f: Callable[[int], int], lo: int, hi: int) -> int:
    """Exact max of a concave integer-lattice function on [lo, hi]."""
    while hi - lo > 2:
        m1 = lo + (hi - lo) // 3
        m2 = hi - (hi - lo) // 3
        f1, f2 = f(m1), f(m2)
        if f1 < f2:
            lo = m1 + 1
        elif f1 > f2:
            hi = m2 - 1
        else:
            lo, hi = m1, m2
    return max(f(k) for k in range(lo, hi + 1))


def _lattice_component_max(
    V: List[int], G: List[List[int]], X: List[int], K: int
) -> int:
    """Exact grid max of V.k - sum_i |X_i - sum_j G_ij k_j| over [-K, K]^m."""
    m = len(V)
    d = len(X)
    if m == 1:
        deltas = [-G[i][0] for i in range(d)]
        return _lattice_scan_1d(V[0], deltas, list(X), K)
    if m == 2:
        best = None
        for k1 in range(-K, K + 1):
            base = [X[i] - k1 * G[i][0] for i in range(d)]
            contrib = V[0] * k1

            def slice_val(k2: int) -> int:
                acc = 0
                for i in range(d):
                    c = base[i] - k2 * G[i][1]
                    acc += c if c >= 0 else -c
                return contrib + V[1] * k2 - acc

            val = _ternary_max_1d(slice_val, -K, K)
            if best is None or val > best:
                best = val
        return best
    raise ValueError("lattice oracle supports components of at most 2 generators")


def grid_one_step_oracle(
    values: Sequence[Fraction],
    gens: Sequence[FinVec],
    x: FinVec,
    upper: bool,
    box: int = 4,
    shift: int = 8,
) -> Fraction:
    """Brute-force grid value of the one-step bound.

    Exact max of f(y) - ||x - y||_1 (or min of f(y) + ||x - y||_1 when
    ``upper``) with coefficients ranging over the lattice of step
    2**-shift inside [-box, box]^m.  Components of the generator
    incidence graph are maximized independently, which is an identity
    for this separable objective; each component must involve at most
    two generators.
    """
    # union-find on coordinates through generator supports
    parent: Dict[int, int] = {}

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in gens:
        sup = g.support()
        for i in sup:
            parent.setdefault(i, i)
        for a, b in zip(sup, sup[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

    sign = -1 if upper else 1
    den = 1
    for g in gens:
        for _, v in g.items():
            den = lcm(den, v.denominator)
    for v in values:
        den = lcm(den, v.denominator)
    for _, v in x.items():
        den = lcm(den, v.denominator)

    K = box << shift
    total = 0
    seen = set()
    comps: Dict[int, List[int]] = {}
    for j, g in enumerate(gens):
        sup = g.support()
        if not sup:
            continue
        comps.setdefault(find(sup[0]), []).append(j)
    for i in x.support():
        if i not in parent:
            total -= int(abs(x.get(i)) * den) << shift

    for root, gidx in comps.items():
        coords = sorted(c for c in parent if find(c) == root)
        coord_set = set(coords)
        V = [sign * int(values[j] * den) for j in gidx]
        G = [[int(gens[j].get(i) * den) for j in gidx] for i in coords]
        X = [int(x.get(i) * den) << shift for i in coords]
        if not any(i in coord_set for i in x.support()):
            # no x mass here: the grid max is 0 at the origin when the
            # bound promise holds, and scanning would only confirm it
            continue
        total += _lattice_component_max(V, G, X, K)
    result = Fraction(total, den << shift)
    return -result if upper else result


# ---------------------------------------------------------------------------
# suites

def suite_isometry(seed: int = 0, trials: int = 1000) -> SuiteResult:
    """Exact equality of the block-sum norm and its l1 embedding image."""
    res = SuiteResult("isometry")
    t0 = time.time()
    rng = random.Random(seed)
    for t in range(trials):
        sep = random_sep_instance(rng)
        eps = separation_weights(sep).eps
        x = random_blockvec(rng)
        lhs = l1_norm(embed_l1(x, eps))
        rhs = block_sum_norm(x, eps)
        res.check(lhs == rhs, f"trial-{t}", "l1(embed(x)) == blocksum(x)", rhs, lhs)
    res.elapsed = time.time() - t0
    return res


def suite_sep_pipeline(
    seed: int = 0,
    universe: int = 6,
    fuel: int = 12,
    precision: int = 20,
) -> SuiteResult:
    """Exhaustive separation round trips through the full extension engine."""
    res = SuiteResult("sep_pipeline")
    t0 = time.time()
    for p_vals, q_vals in all_disjoint_pairs(universe):
        sep = SEPInstance(Enumeration(p_vals), Enumeration(q_vals))
        red = run_sep_reduction(sep, fuel=fuel, precision=precision)
        res.check(
            red.separates,
            f"p={list(p_vals)},q={list(q_vals)}",
            "range(p) <= B and B disjoint from range(q)",
            "separates",
            sorted(red.decoded),
        )
    res.elapsed = time.time() - t0
    return res


def random_cc_instance(rng: random.Random) -> CCInstance:
    """Random stabilized nested intervals with a_n < b_n at every stage."""
    stages = []
    a, b = Fraction(0), Fraction(1)
    depth = rng.randint(1, 5)
    for _ in range(depth):
        width = b - a
        a_new = a + width * Fraction(rng.randint(0, 3), 12)
        b_new = b - width * Fraction(rng.randint(0, 3), 12)
        if a_new >= b_new:
            a_new, b_new = a, b
        stages.append((a_new, b_new))
        a, b = a_new, b_new
    return cc_instance_from_stages(stages, len(stages) - 1)


def suite_cc_pipeline(seed: int = 0, trials: int = 100) -> SuiteResult:
    """Nested-interval round trips: exact stage membership and dual witnesses."""
    res = SuiteResult("cc_pipeline")
    t0 = time.time()
    rng = random.Random(seed)
    chooser_names = ["mid", "left", "right"]
    for t in range(trials):
        cc = random_cc_instance(rng)
        name = chooser_names[t % 3]
        red = run_cc_reduction(cc, chooser=CHOOSERS[name])
        res.check(
            red.in_all_stages,
            f"trial-{t}({name})",
            "a_n <= y <= b_n at every stage",
            "member",
            red.decoded,
        )
        res.check(
            red.witness_valid,
            f"trial-{t}({name})",
            "|w_n1| <= 1 for the reconstructed witness",
            "<=1",
            max(abs(w) for w in red.witness),
        )
    res.elapsed = time.time() - t0
    return res


def suite_two_dim(seed: int = 0) -> SuiteResult:
    """Sign cases of the two-dimensional extension and its sup-norm conjugate."""
    res = SuiteResult("two_dim")
    t0 = time.time()
    values = [Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2),
              Fraction(1, 4), Fraction(-1, 4)]
    for r in values:
        red = run_llpo_reduction(r)
        w0, w1 = red.dual.coord(0), red.dual.coord(1)
        sign = ONE if r > 0 else -ONE
        res.check(w0 == 1, f"r={r}", "w0 == 1", 1, w0)
        res.check(w1 == sign, f"r={r}", "w1 == sign(r)", sign, w1)
        res.check(
            red.answer == (1 if r > 0 else 0),
            f"r={r}", "decode matches sign", 1 if r > 0 else 0, red.answer,
        )
        # conjugated sup-norm case: preimage of (1, r) under the corner map
        x_inf = FinVec({0: r + 1, 1: r - 1})
        f_inf = FunctionalPresentation({0: 1 + abs(r)}, 1)
        conj = conjugate_2d_linf(f_inf, x_inf)
        res.check(
            (conj.l1_dual.coord(0), conj.l1_dual.coord(1)) == (w0, w1),
            f"r={r}", "conjugate agrees after transport", (w0, w1),
            (conj.l1_dual.coord(0), conj.l1_dual.coord(1)),
        )
        g0, g1 = conj.functional.value(0), conj.functional.value(1)
        res.check(
            g0 * x_inf.get(0) + g1 * x_inf.get(1) == 1 + abs(r),
            f"r={r}", "conjugate extends the functional", 1 + abs(r),
            g0 * x_inf.get(0) + g1 * x_inf.get(1),
        )
        res.check(
            abs(g0) + abs(g1) == 1,
            f"r={r}", "conjugate norm is 1", 1, abs(g0) + abs(g1),
        )
    red0 = run_llpo_reduction(0)
    res.check(red0.consistent, "r=0", "decode consistent at 0", True, red0.consistent)
    res.elapsed = time.time() - t0
    return res


def random_one_step_instance(rng: random.Random):
    """Random bounded instance: d <= 4 coordinates, at most 3 generators.

    The functional values come from pairing with a random sup-bounded
    dual vector, so the bound 1 holds by construction.  Generators are
    kept at l1 mass <= 2/3 and witnesses inside [-3, 3], which makes the
    2**-8 grid provably resolve the optimum within 2**-7.  Three-generator
    instances use two overlapping generators plus a disjoint one so the
    grid oracle stays exact.
    """
    while True:
        m = rng.randint(1, 3)
        if m <= 2:
            d = rng.randint(max(2, m), 4)
            supports = [sorted(rng.sample(range(d), rng.randint(1, d))) for _ in range(m)]
        else:
            d = 4
            supports = [[0, 1], [0, 1], [2, 3]]
        w = [Fraction(rng.randint(-8, 8), 8) for _ in range(d)]
        gens = []
        for sup in supports:
            coords = {i: _random_fraction(rng) for i in sup}
            g = FinVec(coords)
            if g.is_zero():
                g = FinVec({sup[0]: Fraction(1, 2)})
            mass = l1_norm(g)
            if mass > Fraction(2, 3):
                g = g.scale(Fraction(2, 3) / mass)
            gens.append(g)
        values = {
            j: sum((v * w[i] for i, v in g.items()), ZERO)
            for j, g in enumerate(gens)
        }
        x = FinVec({i: _random_fraction(rng) for i in range(d)})
        mass = l1_norm(x)
        if mass > 2:
            x = x.scale(2 / mass)
        f = FunctionalPresentation(values, 1)
        system = GeneratorSystem(tuple(gens))
        wit_lo, wit_hi = one_step_witnesses(f, system, x)
        coeffs = list(wit_lo.values()) + list(wit_hi.values())
        if all(abs(c) <= 3 for c in coeffs):
            return f, system, x


def suite_one_step(seed: int = 0, trials: int = 200) -> SuiteResult:
    """Exact sandwich bounds plus agreement with the lattice oracle."""
    res = SuiteResult("one_step")
    t0 = time.time()
    rng = random.Random(seed)
    tol = two_pow(7)
    for t in range(trials):
        f, system, x = random_one_step_instance(rng)
        b = one_step_bounds(f, system, x)
        nx = l1_norm(x)
        res.check(b.lo <= b.hi, f"trial-{t}", "L <= U", "<=", (b.lo, b.hi))
        res.check(
            -nx <= b.lo and b.hi <= nx,
            f"trial-{t}", "bounds inside [-||x||, ||x||]", nx, (b.lo, b.hi),
        )
        vals = [f.value(j) for j in range(len(system.gens))]
        grid_lo = grid_one_step_oracle(vals, system.gens, x, upper=False)
        grid_hi = grid_one_step_oracle(vals, system.gens, x, upper=True)
        res.check(
            ZERO <= b.lo - grid_lo <= tol,
            f"trial-{t}", "grid max within 2^-7 below L", str(b.lo), str(grid_lo),
        )
        res.check(
            ZERO <= grid_hi - b.hi <= tol,
            f"trial-{t}", "grid min within 2^-7 above U", str(b.hi), str(grid_hi),
        )
    res.elapsed = time.time() - t0
    return res


def distance_lp(x: BlockVec, eps: EpsilonSeq, blocks: int = 5) -> Fraction:
    """Exact LP minimization of the block-sum norm of x - a over the
    subspace spanned by the first-component units of the given blocks."""
    span = sorted(set(range(blocks)) | set(x.support()))
    nb = len(span)
    nvars = 2 * nb  # alpha'_n (free) then m_n (epigraph)
    rows, rel, rhs = [], [], []
    for a, n in enumerate(span):
        alpha, beta = x.get(n)
        e = eps(n)
        p1, q1, p2, q2 = (
            (e, ONE, ONE, -ONE) if e < 1 else
            (ONE, ONE, ONE / e, -ONE) if e > 1 else
            (ONE, ONE, ONE, -ONE)
        )
        for p, q in ((p1, q1), (p2, q2)):
            # m_n >= +-(p*(alpha - alpha') + q*beta)
            for s in (1, -1):
                row = [ZERO] * nvars
                row[a] = s * p
                row[nb + a] = ONE
                rows.append(row)
                rel.append(">=")
                rhs.append(s * (p * alpha + q * beta))
    objective = [ZERO] * nb + [two_pow(n + 1) for n in span]
    free = [True] * nb + [False] * nb
    prob = LPProblem.build(objective, rows, rel, rhs, sense="min", free=free)
    return solve_lp_exact(prob).value


def suite_distance(seed: int = 0, trials: int = 100) -> SuiteResult:
    """Closed-form subspace distance equals the exact LP minimum."""
    res = SuiteResult("distance")
    t0 = time.time()
    rng = random.Random(seed)
    for t in range(trials):
        sep = random_sep_instance(rng)
        eps = separation_weights(sep).eps
        x = random_blockvec(rng, blocks=5, support=4)
        formula = alpha_subspace_distance(x, eps)
        lp = distance_lp(x, eps)
        res.check(formula == lp, f"trial-{t}", "formula == LP minimum", lp, formula)
    res.elapsed = time.time() - t0
    return res


def suite_base_functional_norm(seed: int = 0, trials: int = 1000) -> SuiteResult:
    """Norm-1 witnesses and never-exceeding samples for the base functional."""
    res = SuiteResult("base_functional_norm")
    t0 = time.time()
    rng = random.Random(seed)
    for t in range(trials):
        sep = random_sep_instance(rng)
        eps = separation_weights(sep).eps
        idx = rng.sample(range(8), rng.randint(1, 5))
        witness = BlockVec({n: (abs(_random_fraction(rng)) + 1, 0) for n in idx})
        fw = base_functional(witness)
        nw = block_sum_norm(witness, eps)
        res.check(fw == nw, f"wit-{t}", "ratio 1 on nonnegative witnesses", nw, fw)
        sample = BlockVec({n: (_random_fraction(rng), 0) for n in idx})
        fs = base_functional(sample)
        ns = block_sum_norm(sample, eps)
        res.check(abs(fs) <= ns, f"sample-{t}", "|f(y)| <= ||y||", ns, fs)
    res.elapsed = time.time() - t0
    return res


def suite_extension_count(seed: int = 0) -> SuiteResult:
    """Exactly n-1 one-step calls from a line in dimension n."""
    res = SuiteResult("extension_count")
    t0 = time.time()
    rng = random.Random(seed)
    for n in range(2, 7):
        coords = {i: _random_fraction(rng) for i in range(n)}
        g = FinVec(coords)
        if g.is_zero():
            g = FinVec({0: ONE})
        w = [Fraction(rng.randint(-8, 8), 8) for _ in range(n)]
        value = sum((v * w[i] for i, v in g.items()), ZERO)
        f = FunctionalPresentation({0: value}, 1)
        ext = extend_findim(f, GeneratorSystem((g,)), n)
        res.check(
            ext.one_step_calls == n - 1,
            f"n={n}", "one-step call count == n-1", n - 1, ext.one_step_calls,
        )
        got = sum(
            (ext.functional.value(i) * v for i, v in g.items()), ZERO
        )
        res.check(got == value, f"n={n}", "extension agrees on the line", value, got)
    res.elapsed = time.time() - t0
    return res


def _pruned_tree(dead: List[Tuple[str, int]], cap: int = 16) -> TreeInstance:
    max_death = max((d for _, d in dead), default=0)

    def contains(s: str) -> bool:
        if len(s) > cap:
            raise ValueError("query beyond presented depth")
        for prefix, depth in dead:
            if s.startswith(prefix) and len(s) >= depth:
                return False
        return True

    return TreeInstance(contains=contains, viability=lambda d: max(d, max_death))


def suite_oracles(seed: int = 0) -> SuiteResult:
    """Solver checks: exhaustive separation, stage membership, root finding,
    and leftmost-path prefix consistency on pruned trees."""
    res = SuiteResult("oracles")
    t0 = time.time()
    rng = random.Random(seed)

    count = 0
    for p_vals, q_vals in all_disjoint_pairs(8):
        inst = SEPInstance(Enumeration(p_vals), Enumeration(q_vals))
        b = sep_solve(inst)
        ok = inst.p.range() <= b and not (b & inst.q.range())
        res.check(ok, f"sep-{count}", "separating set", "separates", sorted(b))
        count += 1

    for t in range(20):
        cc = random_cc_instance(rng)
        out = cc_solve(cc)
        stab = max(cc.lower.stabilized_at, cc.upper.stabilized_at)
        ok = all(
            cut_value(cc.lower, n) <= out <= cut_value(cc.upper, n)
            for n in range(stab + 1)
        )
        res.check(ok, f"cc-{t}", "midpoint in every stage", "member", out)

    roots = [Fraction(rng.randint(1, 63), 64) for _ in range(12)]
    roots += [Fraction(rng.randint(1, 127), 128) for _ in range(8)]
    for t, r in enumerate(roots):
        kind = t % 3
        if kind == 0:
            fn = lambda x, r=r: x - r
        elif kind == 1:
            fn = lambda x, r=r: (x - r) * (x * x + 1)
        else:
            fn = lambda x, r=r: (x - r) * (x + 2)
        cc = ivt_to_cc(fn, steps=12)
        out = cc_solve(cc)
        res.check(
            abs(out - r) <= two_pow(10),
            f"ivt-{t}", "root located to 2^-10", str(r), str(out),
        )
    # exactly dyadic root stabilizes on the root itself
    cc = ivt_to_cc(lambda x: x - Fraction(5, 16), steps=12)
    out = cc_solve(cc)
    res.check(out == Fraction(5, 16), "ivt-dyadic", "stabilized at the root",
              Fraction(5, 16), out)

    for t in range(20):
        dead = []
        for _ in range(rng.randint(1, 3)):
            depth = rng.randint(1, 4)
            prefix = "".join(rng.choice("01") for _ in range(depth))
            if set(prefix) == {"1"}:
                prefix = prefix[:-1] + "0"  # keep the all-ones path alive
            dead.append((prefix, rng.randint(len(prefix) + 1, 8)))
        tree = _pruned_tree(dead)
        paths = [wkl_path(tree, length) for length in range(7)]
        ok = all(paths[i + 1].startswith(paths[i]) for i in range(6))
        ok = ok and all(tree.contains(p) for p in paths)
        res.check(ok, f"wkl-{t}", "prefix-consistent leftmost paths", "prefixes", paths[-1])
    res.elapsed = time.time() - t0
    return res


SUITES: Dict[str, Callable[[int], SuiteResult]] = {
    "isometry": suite_isometry,
    "sep_pipeline": suite_sep_pipeline,
    "cc_pipeline": suite_cc_pipeline,
    "two_dim": suite_two_dim,
    "one_step": suite_one_step,
    "distance": suite_distance,
    "base_functional_norm": suite_base_functional_norm,
    "extension_count": suite_extension_count,
    "oracles": suite_oracles,
}


def run_suites(names: Optional[Sequence[str]] = None, seed: int = 0) -> List[SuiteResult]:
    chosen = list(names) if names else list(SUITES)
    unknown = [n for n in chosen if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suites: {unknown}")
    return [SUITES[n](seed) for n in chosen]
