"""Norm-preserving extension engines on l1-type spaces.

The admissible values for extending a norm-1 functional by one vector x
form the exact interval

    [ sup_y (f(y) - ||x - y||_1),  inf_y (f(y) + ||x - y||_1) ]

with y ranging over the current span.  Both ends are rational linear
programs in the combination coefficients, with epigraph variables for
the l1 terms, and are solved exactly.  A presolve splits the program
into connected components of the generator/coordinate incidence graph;
components not meeting the support of x contribute exactly zero under
the norm-bound promise, which keeps the iterated engines fast.

Engines: one-step extension with an injected choice oracle, iterated
full extension on truncated l1 generators, finite-dimensional extension
by missing basis vectors, the closed-form two-dimensional l1 case driven
by a sign oracle, and its sup-norm conjugate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple, Union

from .exactreal import RationalInterval, rat
from .functionals import DualVector, FunctionalPresentation, GeneratorSystem
from .oracles import (
    LLPOInstance,
    cc_instance_from_stages,
    cc_solve,
    llpo_sign_instance,
    llpo_solve,
    loop_driver,
)
from .simplex import LPUnboundedError, simplex_min
from .spaces import FinVec, L1Point, l1_norm, linf_to_l1_pair

ZERO = Fraction(0)
ONE = Fraction(1)

Chooser = Callable[[RationalInterval], Fraction]


class NormViolationError(Exception):
    """The presented bound is violated on the span (unbounded program)."""


def chooser_mid(interval: RationalInterval) -> Fraction:
    return interval.midpoint()


def chooser_left(interval: RationalInterval) -> Fraction:
    return interval.lo


def chooser_right(interval: RationalInterval) -> Fraction:
    return interval.hi


def cc_oracle_chooser(interval: RationalInterval) -> Fraction:
    """Pick the value by literally solving a one-stage choice instance."""
    inst = cc_instance_from_stages([(interval.lo, interval.hi)], 0)
    return cc_solve(inst)


CHOOSERS: Dict[str, Chooser] = {
    "mid": chooser_mid,
    "left": chooser_left,
    "right": chooser_right,
}


@dataclass(frozen=True)
class OneStepBounds:
    lo: Fraction
    hi: Fraction

    def interval(self) -> RationalInterval:
        return RationalInterval(self.lo, self.hi)


def _components(gens: Sequence[FinVec]) -> Dict[int, int]:
    """Union-find roots of coordinates linked by shared generator support."""
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
    return {i: find(i) for i in parent}


def _component_lp(
    gen_vecs: List[FinVec],
    gen_vals: List[Fraction],
    coords: List[int],
    x: FinVec,
    upper: bool,
) -> Tuple[Fraction, List[Fraction]]:
    """Exact inf (upper=True) or sup of f(y) -/+ ||x - y||_1 on one component.

    Encoded with epigraph variables s_i >= |x_i - (Gt)_i| and solved from
    an explicit starting basis (t = 0, s_i = |x_i|), so no phase one is
    needed.  Returns the optimal value and the coefficient witness.
    """
    m = len(gen_vecs)
    d = len(coords)
    pos = {i: a for a, i in enumerate(coords)}
    ncols = 2 * m + 3 * d
    s_at = 2 * m
    u1_at = 2 * m + d
    u2_at = 2 * m + 2 * d

    rows = []
    rhs = []
    basis = []
    for i in coords:
        a = pos[i]
        r1 = [ZERO] * ncols
        r2 = [ZERO] * ncols
        for j, g in enumerate(gen_vecs):
            c = g.get(i)
            if c != ZERO:
                r1[2 * j] = c
                r1[2 * j + 1] = -c
                r2[2 * j] = -c
                r2[2 * j + 1] = c
        r1[s_at + a] = ONE
        r1[u1_at + a] = -ONE
        r2[s_at + a] = ONE
        r2[u2_at + a] = -ONE
        xi = x.get(i)
        rows.append(r1)
        rhs.append(xi)
        rows.append(r2)
        rhs.append(-xi)
        basis.append(s_at + a)
        basis.append(u2_at + a if xi >= 0 else u1_at + a)

    sign = ONE if upper else -ONE
    costs = [ZERO] * ncols
    for j, v in enumerate(gen_vals):
        costs[2 * j] = sign * v
        costs[2 * j + 1] = -sign * v
    for a in range(d):
        costs[s_at + a] = ONE

    value, z = simplex_min(rows, rhs, costs, basis=basis)
    witness = [z[2 * j] - z[2 * j + 1] for j in range(m)]
    return sign * value, witness


def _one_step_lp(
    f: FunctionalPresentation,
    gens: Sequence[FinVec],
    x: FinVec,
) -> Tuple[Fraction, Fraction, Dict[int, Fraction], Dict[int, Fraction]]:
    """Both one-step bounds with witnesses, via component decomposition."""
    for j, g in enumerate(gens):
        if g.is_zero() and f.value(j) != ZERO:
            raise NormViolationError(
                f"nonzero value on the zero generator {j} violates the bound"
            )
    roots = _components(gens)
    by_root: Dict[int, List[int]] = {}
    for j, g in enumerate(gens):
        sup = g.support()
        if sup:
            by_root.setdefault(roots[sup[0]], []).append(j)

    lo = ZERO
    hi = ZERO
    wit_lo: Dict[int, Fraction] = {}
    wit_hi: Dict[int, Fraction] = {}
    seen_roots = set()
    for i in x.support():
        root = roots.get(i)
        if root is None:
            # coordinate of x outside every generator support
            mass = abs(x.get(i))
            lo -= mass
            hi += mass
            continue
        if root in seen_roots:
            continue
        seen_roots.add(root)
        gen_idx = by_root.get(root, [])
        coords = sorted(c for c, r in roots.items() if r == root)
        vecs = [gens[j] for j in gen_idx]
        vals = [f.value(j) for j in gen_idx]
        try:
            lo_c, wit_l = _component_lp(vecs, vals, coords, x, upper=False)
            hi_c, wit_h = _component_lp(vecs, vals, coords, x, upper=True)
        except LPUnboundedError as exc:
            raise NormViolationError(
                "functional exceeds bound 1 on the span"
            ) from exc
        lo += lo_c
        hi += hi_c
        for j, t in zip(gen_idx, wit_l):
            if t != ZERO:
                wit_lo[j] = t
        for j, t in zip(gen_idx, wit_h):
            if t != ZERO:
                wit_hi[j] = t
    return lo, hi, wit_lo, wit_hi


def _finite_gens(system: GeneratorSystem) -> List[FinVec]:
    gens = []
    for g in system.gens:
        if not isinstance(g, FinVec):
            raise TypeError(
                "one-step bounds need finite generators; truncate l1 points first"
            )
        gens.append(g)
    return gens


def one_step_bounds(
    f: FunctionalPresentation,
    system: GeneratorSystem,
    x: FinVec,
) -> OneStepBounds:
    """Exact pair (L, U) of admissible values for extending f by x.

    Requires f normalized to bound <= 1 (rescale first); then L <= U and
    both lie in [-||x||_1, ||x||_1].  An unbounded program means the
    bound promise fails on the span and is reported as such.
    """
    if f.bound > 1:
        raise ValueError("normalize the functional to bound <= 1 first")
    gens = _finite_gens(system)
    lo, hi, _, _ = _one_step_lp(f, gens, x)
    if lo > hi:
        raise AssertionError("one-step bounds crossed; simplex defect")
    nx = l1_norm(x)
    if lo < -nx or hi > nx:
        raise AssertionError("one-step bounds escaped [-||x||, ||x||]")
    return OneStepBounds(lo, hi)


def one_step_witnesses(
    f: FunctionalPresentation,
    system: GeneratorSystem,
    x: FinVec,
) -> Tuple[Dict[int, Fraction], Dict[int, Fraction]]:
    """Coefficient witnesses attaining the lower and upper one-step bounds."""
    gens = _finite_gens(system)
    _, _, wit_lo, wit_hi = _one_step_lp(f, gens, x)
    return wit_lo, wit_hi


@dataclass(frozen=True)
class OneStepExtension:
    system: GeneratorSystem
    functional: FunctionalPresentation
    bounds: OneStepBounds
    probe: FinVec
    probe_index: int
    tail_slack: Fraction

    def value_on_probe(self) -> Fraction:
        return self.functional.value(self.probe_index)


def one_step_extend(
    f: FunctionalPresentation,
    system: GeneratorSystem,
    x: Union[FinVec, L1Point],
    chooser: Chooser = chooser_mid,
    precision: int = 20,
) -> OneStepExtension:
    """Extend f by the vector x, picking the value with the choice oracle.

    An l1 point x is probed through its certified truncation; when the
    discarded tail is supported away from the generators and the head,
    every value chosen from the head interval is valid for the full
    point, and the remaining slack is returned for inspection either way.
    """
    if isinstance(x, L1Point):
        probe, slack = x.truncate(precision)
    else:
        probe, slack = x, ZERO
    bounds = one_step_bounds(f, system, probe)
    chosen = rat(chooser(bounds.interval()))
    if not bounds.interval().contains(chosen):
        raise ValueError("chooser left the admissible interval")
    new_index = len(system.gens)
    values = dict(f.values)
    values[new_index] = chosen
    # the one-step theorem guarantees norm <= 1, not <= f.bound
    return OneStepExtension(
        system=GeneratorSystem(system.gens + (probe,), dim=system.dim),
        functional=FunctionalPresentation(values, ONE),
        bounds=bounds,
        probe=probe,
        probe_index=new_index,
        tail_slack=slack,
    )


@dataclass(frozen=True)
class FullExtension:
    dual: DualVector
    head_system: GeneratorSystem
    functional: FunctionalPresentation
    fuel: int
    precision: int
    complete: bool
    uncovered: Tuple[int, ...]


def extend_full_l1(
    f: FunctionalPresentation,
    system: GeneratorSystem,
    fuel: int,
    precision: int,
    chooser: Chooser = chooser_mid,
) -> FullExtension:
    """Iterate the one-step extension over the unit vectors e_0..e_{2*fuel-1}.

    Works on precision-``precision`` truncations of the generators; the
    returned dual vector w satisfies sup |w_i| <= 1 and pairs with every
    covered generator head to exactly the presented value.  Generators
    whose heads stick out of the covered index range are flagged instead
    of silently truncated.
    """
    if fuel < 1:
        raise ValueError("fuel must be at least 1")
    if f.bound > 1:
        raise ValueError("normalize the functional to bound <= 1 first")
    heads, slacks = system.heads(precision)
    width = 2 * fuel
    uncovered = tuple(
        j for j, h in enumerate(heads) if any(i >= width for i in h.support())
    )
    base = GeneratorSystem(heads, dim=system.dim)
    start = (base, f)

    def step(state):
        sys_k, fn_k = state
        j = len(sys_k.gens) - len(heads)
        ext = one_step_extend(fn_k, sys_k, FinVec.unit(j), chooser=chooser)
        return ext.system, ext.functional

    trace = loop_driver(step, start, width)
    final_system, final_fn = trace[-1]
    entries = {i: final_fn.value(len(heads) + i) for i in range(width)}
    dual = DualVector(entries, bound=ONE)
    return FullExtension(
        dual=dual,
        head_system=final_system,
        functional=final_fn,
        fuel=fuel,
        precision=precision,
        complete=not uncovered,
        uncovered=uncovered,
    )


class _Elimination:
    """Reduced row echelon bookkeeping of span and functional values."""

    def __init__(self):
        self.rows: List[Tuple[int, Dict[int, Fraction], Fraction]] = []

    def _reduce(self, vec: Dict[int, Fraction], val: Fraction):
        vec = dict(vec)
        for pivot, row, rval in self.rows:
            c = vec.get(pivot)
            if c:
                for i, rv in row.items():
                    nv = vec.get(i, ZERO) - c * rv
                    if nv == ZERO:
                        vec.pop(i, None)
                    else:
                        vec[i] = nv
                val -= c * rval
        return vec, val

    def insert(self, vec: FinVec, val: Fraction) -> bool:
        """Add a vector with its value; False when already in the span."""
        red, rval = self._reduce(dict(vec.items()), val)
        if not red:
            if rval != ZERO:
                raise NormViolationError(
                    "inconsistent values on linearly dependent generators"
                )
            return False
        pivot = min(red)
        pc = red[pivot]
        red = {i: v / pc for i, v in red.items()}
        rval = rval / pc
        for k, (p2, row2, val2) in enumerate(self.rows):
            c = row2.get(pivot)
            if c:
                for i, rv in red.items():
                    nv = row2.get(i, ZERO) - c * rv
                    if nv == ZERO:
                        row2.pop(i, None)
                    else:
                        row2[i] = nv
                self.rows[k] = (p2, row2, val2 - c * rval)
        self.rows.append((pivot, red, rval))
        return True

    def contains(self, vec: FinVec) -> bool:
        red, _ = self._reduce(dict(vec.items()), ZERO)
        return not red

    def value_of(self, vec: FinVec) -> Fraction:
        red, rval = self._reduce(dict(vec.items()), ZERO)
        if red:
            raise ValueError("vector outside the recorded span")
        return -rval

    def rank(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class FindimExtension:
    functional: FunctionalPresentation
    dual: DualVector
    one_step_calls: int


def extend_findim(
    f: FunctionalPresentation,
    system: GeneratorSystem,
    dim: int,
    chooser: Chooser = chooser_mid,
) -> FindimExtension:
    """Extend to all of R^dim under the l1 norm, basis vector by basis vector.

    Performs one one-step extension per standard basis vector missing
    from the span, at most dim - rank(A) of them, and returns the values
    on the standard basis with the original norm bound.
    """
    gens = _finite_gens(system)
    if any(i >= dim for g in gens for i in g.support()):
        raise ValueError("generator support outside the ambient dimension")
    m = f.bound
    if m == 0:
        if any(v != ZERO for v in f.values.values()):
            raise ValueError("nonzero values with bound 0")
        zero = FunctionalPresentation({i: 0 for i in range(dim)}, 0)
        return FindimExtension(zero, DualVector({}, 0), 0)

    span = _Elimination()
    work_f = FunctionalPresentation(
        {i: v / m for i, v in f.values.items()}, ONE
    )
    nonzero = False
    for j, g in enumerate(gens):
        if not g.is_zero():
            nonzero = True
        span.insert(g, work_f.value(j))
    if not nonzero:
        raise ValueError("generator system spans only the zero subspace")

    work_system = GeneratorSystem(tuple(gens), dim=system.dim)
    calls = 0
    for i in range(dim):
        e = FinVec.unit(i)
        if span.contains(e):
            continue
        ext = one_step_extend(work_f, work_system, e, chooser=chooser)
        calls += 1
        work_system = ext.system
        work_f = ext.functional
        span.insert(e, ext.value_on_probe())

    basis_values = {i: m * span.value_of(FinVec.unit(i)) for i in range(dim)}
    functional = FunctionalPresentation(basis_values, m)
    dual = DualVector(basis_values, bound=m)
    return FindimExtension(functional, dual, calls)


LLPOOracle = Callable[[LLPOInstance], int]


def _oracle_sign(value: Fraction, llpo: LLPOOracle) -> Fraction:
    """Unit sign of a coordinate, letting the sign oracle break the tie at 0."""
    if value > 0:
        return ONE
    if value < 0:
        return -ONE
    return ONE if llpo(llpo_sign_instance(value)) == 0 else -ONE


def extend_2d_l1(
    f: FunctionalPresentation,
    x: FinVec,
    llpo: LLPOOracle = llpo_solve,
) -> DualVector:
    """Closed-form norm-preserving extension from span{x} in (R^2, l1).

    After normalizing, the dual weight on every coordinate where x is
    nonzero is forced to its sign; zero coordinates sit on a corner of
    the dual ball and the sign oracle picks a side.  The result pairs
    with x to exactly f(x) and has sup norm exactly ||f||.
    """
    if x.is_zero():
        raise ValueError("cannot extend from the zero vector")
    if any(i >= 2 for i in x.support()):
        raise ValueError("expected a vector in R^2")
    fx = f.value(0)
    if fx == 0:
        raise ValueError("functional vanishes on the line; norm promise fails")
    v = fx / l1_norm(x)  # signed norm of f on span{x}
    w0 = v * _oracle_sign(x.get(0), llpo)
    w1 = v * _oracle_sign(x.get(1), llpo)
    return DualVector({0: w0, 1: w1}, bound=abs(v))


@dataclass(frozen=True)
class ConjugateExtension:
    functional: FunctionalPresentation
    l1_dual: DualVector
    image_point: FinVec


def conjugate_2d_linf(
    f: FunctionalPresentation,
    x: FinVec,
    llpo: LLPOOracle = llpo_solve,
) -> ConjugateExtension:
    """Extension in (R^2, sup norm) by transport through the corner isometry.

    The point and functional are pushed into (R^2, l1), extended there,
    and pulled back; the sup-norm functional norm (the l1 mass of its
    basis values) is preserved exactly.
    """
    if any(i >= 2 for i in x.support()):
        raise ValueError("expected a vector in R^2")
    a, b = linf_to_l1_pair(x.get(0), x.get(1))
    image = FinVec({0: a, 1: b})
    w = extend_2d_l1(FunctionalPresentation({0: f.value(0)}, f.bound), image, llpo)
    g0 = (w.coord(0) + w.coord(1)) / 2
    g1 = (-w.coord(0) + w.coord(1)) / 2
    functional = FunctionalPresentation({0: g0, 1: g1}, abs(g0) + abs(g1))
    return ConjugateExtension(functional, w, image)
