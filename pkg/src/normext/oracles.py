"""Desk-scale solvers for the benchmark choice problems and the loop
driver for iterated extension.

None of these problems is uniformly computable on genuinely infinite
inputs; the types here are finite presentations (explicit prefixes with
all-zero-tail flags, stabilization certificates, repetition-tailed
enumerations, viability bounds) under which exact answers are honest.
The reduction builders elsewhere stay fully uniform translators; only
the solving collapses to the finitely presented case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Tuple, TypeVar

from .exactreal import MonotoneCut, RationalLike, cut_limit, cut_value, rat

State = TypeVar("State")


class PromiseViolationError(Exception):
    """An instance broke the promise its problem domain requires."""


@dataclass(frozen=True)
class BitStream:
    """Finitely presented infinite bit sequence.

    ``zero_tail`` certifies that every bit after the prefix is zero; a
    stream without the certificate is taken as witnessed nonzero beyond
    its prefix.
    """

    prefix: Tuple[int, ...] = ()
    zero_tail: bool = True

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.prefix):
            raise ValueError("bit stream prefix must consist of 0/1")

    def is_all_zero(self) -> bool:
        return self.zero_tail and all(b == 0 for b in self.prefix)


@dataclass(frozen=True)
class LLPOInstance:
    p0: BitStream
    p1: BitStream


def llpo_solve(inst: LLPOInstance) -> int:
    """Index of an all-zero stream, leftmost when both qualify."""
    if inst.p0.is_all_zero():
        return 0
    if inst.p1.is_all_zero():
        return 1
    raise PromiseViolationError("promise violated: both streams are nonzero")


def llpo_sign_instance(r: RationalLike) -> LLPOInstance:
    """Sign streams of a rational: answer 0 certifies r >= 0, 1 certifies r <= 0."""
    r = rat(r)
    return LLPOInstance(
        p0=BitStream((1,) if r < 0 else (0,), True),
        p1=BitStream((1,) if r > 0 else (0,), True),
    )


@dataclass(frozen=True)
class CCInstance:
    """Nested rational intervals via a lower and an upper monotone cut."""

    lower: MonotoneCut
    upper: MonotoneCut

    def __post_init__(self):
        if self.lower.side != "lower" or self.upper.side != "upper":
            raise ValueError("cc instance needs a lower and an upper cut")
        last = max(
            self.lower.stabilized_at or 0, self.upper.stabilized_at or 0
        )
        for n in range(last + 1):
            if cut_value(self.lower, n) > cut_value(self.upper, n):
                raise ValueError(f"interval at stage {n} is empty")

    def stage(self, n: int) -> Tuple[Fraction, Fraction]:
        return cut_value(self.lower, n), cut_value(self.upper, n)


def cc_instance_from_stages(
    stages: Iterable[Tuple[RationalLike, RationalLike]],
    stabilized_at: int,
) -> CCInstance:
    pairs = [(rat(a), rat(b)) for a, b in stages]
    return CCInstance(
        lower=MonotoneCut("lower", [a for a, _ in pairs], stabilized_at),
        upper=MonotoneCut("upper", [b for _, b in pairs], stabilized_at),
    )


def cc_solve(inst: CCInstance) -> Fraction:
    """Exact midpoint of [sup a_n, inf b_n]; needs stabilized cuts."""
    a = cut_limit(inst.lower)
    b = cut_limit(inst.upper)
    return (a + b) / 2


@dataclass(frozen=True)
class Enumeration:
    """Enumeration of a finite set, repetition-tailed beyond its values.

    An empty value list enumerates nothing.
    """

    values: Tuple[int, ...] = ()

    def __post_init__(self):
        if any(int(v) < 0 for v in self.values):
            raise ValueError("enumerated values must be nonnegative")

    def range(self) -> frozenset:
        return frozenset(self.values)

    def first_index(self, n: int):
        """Least stage at which n is enumerated, or None."""
        try:
            return self.values.index(n)
        except ValueError:
            return None

    def witnessed_by(self, stage: int) -> frozenset:
        return frozenset(self.values[:stage])


@dataclass(frozen=True)
class SEPInstance:
    p: Enumeration
    q: Enumeration

    def check_disjoint(self):
        common = self.p.range() & self.q.range()
        if common:
            raise PromiseViolationError(
                f"promise violated: ranges intersect at {sorted(common)}"
            )

    def saturation_stage(self) -> int:
        return max(len(self.p.values), len(self.q.values))


def sep_solve(inst: SEPInstance) -> frozenset:
    """Minimal separating set: range(p) itself; unlisted numbers excluded."""
    inst.check_disjoint()
    return inst.p.range()


@dataclass(frozen=True)
class TreeInstance:
    """Infinite binary tree with a viability bound.

    ``contains`` decides membership of 0/1 strings; the tree must be
    prefix closed and infinite (promise).  ``viability(d)`` gives a depth
    D such that any depth-d node with a descendant at depth D is a prefix
    of an infinite path.
    """

    contains: Callable[[str], bool]
    viability: Callable[[int], int]


def _has_descendant_at(tree: TreeInstance, node: str, depth: int) -> bool:
    if len(node) >= depth:
        return True
    stack = [node]
    while stack:
        s = stack.pop()
        for bit in ("1", "0"):
            t = s + bit
            if tree.contains(t):
                if len(t) == depth:
                    return True
                stack.append(t)
    return False


def wkl_path(inst: TreeInstance, length: int) -> str:
    """Leftmost depth-``length`` node certified to extend to an infinite path."""
    if length < 0:
        raise ValueError("length must be nonnegative")
    deep = max(length, inst.viability(length))

    def search(node: str):
        if not _has_descendant_at(inst, node, deep):
            return None
        if len(node) == length:
            return node
        for bit in ("0", "1"):
            t = node + bit
            if inst.contains(t):
                found = search(t)
                if found is not None:
                    return found
        return None

    found = search("")
    if found is None:
        raise PromiseViolationError(
            f"promise violated: no node of depth {length} survives to depth {deep}"
        )
    return found


def ivt_to_cc(
    f: Callable[[Fraction], Fraction],
    steps: int,
    lo: RationalLike = 0,
    hi: RationalLike = 1,
) -> CCInstance:
    """Bisection trace of a sign-changing exactly evaluable function.

    Produces the nested intervals a_n <= x <= b_n, keeping at each step
    the half whose endpoint signs multiply to <= 0.  An exactly hit root
    stabilizes both cuts at the midpoint; otherwise the instance carries
    a stabilization-by-budget certificate at stage ``steps``, so the
    certified interval is the stage-``steps`` bisection bracket.
    """
    a, b = rat(lo), rat(hi)
    fa, fb = rat(f(a)), rat(f(b))
    if fa * fb >= 0:
        raise ValueError("endpoints must have strictly opposite signs")
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    las, ubs = [a], [b]
    stab = steps
    for i in range(steps):
        m = (las[-1] + ubs[-1]) / 2
        fm = rat(f(m))
        if fm == 0:
            las.append(m)
            ubs.append(m)
            stab = i + 1
            break
        if fa * fm < 0:
            las.append(las[-1])
            ubs.append(m)
            fb = fm
        else:
            las.append(m)
            ubs.append(ubs[-1])
            fa = fm
    return CCInstance(
        lower=MonotoneCut("lower", las, stab),
        upper=MonotoneCut("upper", ubs, stab),
    )


def sep_to_wkl(inst: SEPInstance) -> TreeInstance:
    """Tree of separating characteristic-string prefixes.

    A prefix dies once a witnessed enumeration stage contradicts one of
    its bits; paths through the tree are exactly separating sets.
    """
    sat = inst.saturation_stage()

    def contains(s: str) -> bool:
        stage = len(s)
        p_seen = inst.p.witnessed_by(stage)
        q_seen = inst.q.witnessed_by(stage)
        for n, bit in enumerate(s):
            if bit == "1" and n in q_seen:
                return False
            if bit == "0" and n in p_seen:
                return False
        return True

    return TreeInstance(contains=contains, viability=lambda d: max(d, sat))


class LoopStepError(Exception):
    """A loop step failed; carries the failing iteration index."""

    def __init__(self, iteration: int, cause: Exception):
        super().__init__(f"loop step {iteration} failed: {cause}")
        self.iteration = iteration


def loop_driver(step: Callable[[State], State], start: State, iterations: int) -> List[State]:
    """Iterate ``step`` and return the whole trace [s0, ..., sN]."""
    if iterations < 0:
        raise ValueError("iteration count must be nonnegative")
    trace = [start]
    for i in range(iterations):
        try:
            trace.append(step(trace[-1]))
        except Exception as exc:
            raise LoopStepError(i, exc) from exc
    return trace
