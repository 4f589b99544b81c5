"""Linear bounded functionals presented by values on a generator system
plus a norm bound, dual vectors on l1, and exact finite-dimensional
operator norms.

A functional on a dense subspace is never handed over as a black box:
it is the pair ``(values on generators, bound M)``.  Evaluation away
from the generators needs an approximating-combination certificate,
which is the effective access to density that the presentation alone
does not give.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Tuple, Union

from .exactreal import RationalInterval, RationalLike, rat, two_pow
from .spaces import FinVec, L1Point

GeneratorVec = Union[FinVec, L1Point]


@dataclass(frozen=True)
class GeneratorSystem:
    """Indexed generators spanning a dense subspace.

    ``dim``, when present, asserts that the generators contain that many
    linearly independent vectors (meaningful for finite-dimensional use).
    """

    gens: Tuple[GeneratorVec, ...]
    dim: Optional[int] = None

    def __post_init__(self):
        if not self.gens:
            raise ValueError("generator system must be nonempty")

    def __len__(self) -> int:
        return len(self.gens)

    def heads(self, k: int) -> Tuple[Tuple[FinVec, ...], Tuple[Fraction, ...]]:
        """Exact finite truncations of all generators with their tail slacks."""
        heads = []
        slacks = []
        for g in self.gens:
            if isinstance(g, FinVec):
                heads.append(g)
                slacks.append(Fraction(0))
            else:
                h, t = g.truncate(k)
                heads.append(h)
                slacks.append(t)
        return tuple(heads), tuple(slacks)


class FunctionalPresentation:
    """Values on a generator system together with a bound M >= ||f||."""

    __slots__ = ("values", "bound")

    def __init__(self, values: Mapping[int, RationalLike], bound: RationalLike):
        self.values = {int(i): rat(v) for i, v in values.items()}
        self.bound = rat(bound)
        if self.bound < 0:
            raise ValueError("norm bound must be nonnegative")

    def value(self, i: int) -> Fraction:
        return self.values.get(i, Fraction(0))

    def __repr__(self) -> str:
        inside = ", ".join(f"{i}: {v}" for i, v in sorted(self.values.items()))
        return f"FunctionalPresentation({{{inside}}}, bound={self.bound})"


def eval_on_combination(f: FunctionalPresentation, combo: Mapping[int, RationalLike]) -> Fraction:
    """Exact value of f on the rational combination sum combo[i] * gen_i."""
    return sum((rat(c) * f.value(int(i)) for i, c in combo.items()), Fraction(0))


@dataclass(frozen=True)
class CertifiedPoint:
    """A point of the subspace with an approximating-combination certificate.

    ``combination(k)`` returns generator coefficients whose combination is
    within ``2**-k`` of the point in norm.  ``exact`` marks combinations
    that hit the point with no slack at all, e.g. generators themselves.
    """

    point: L1Point
    combination: Callable[[int], Mapping[int, Fraction]]
    exact: bool = False


def eval_functional(
    f: FunctionalPresentation,
    system: GeneratorSystem,
    x: CertifiedPoint,
    k: int,
) -> RationalInterval:
    """Enclosure of f(x) of width <= 2**-k.

    Uses |f(x) - f(y)| <= M * ||x - y|| on a certified combination y at
    an internal precision fine enough for the requested output width.
    """
    if not isinstance(x, CertifiedPoint):
        raise ValueError("missing approximating-combination certificate")
    if k < 0:
        raise ValueError("precision must be nonnegative")
    m = f.bound
    if x.exact:
        return RationalInterval.point(eval_on_combination(f, x.combination(k)))
    if m == 0:
        return RationalInterval.point(0)
    kk = k + 1
    while 2 * m * two_pow(kk) > two_pow(k):
        kk += 1
    combo = x.combination(kk)
    center = eval_on_combination(f, combo)
    slack = m * two_pow(kk)
    return RationalInterval(center - slack, center + slack)


class DualVector:
    """Bounded rational sequence acting on l1 by the duality pairing.

    ``entries`` lists finitely many coordinates; indices past the largest
    listed one carry the constant ``tail`` value (zero for a finitely
    supported vector), unlisted indices below that are zero.
    """

    __slots__ = ("entries", "bound", "tail", "tail_start")

    def __init__(
        self,
        entries: Mapping[int, RationalLike],
        bound: RationalLike,
        tail: RationalLike = 0,
    ):
        self.entries = {int(i): rat(v) for i, v in entries.items()}
        self.bound = rat(bound)
        self.tail = rat(tail)
        self.tail_start = max(self.entries) + 1 if self.entries else 0
        if self.bound < 0:
            raise ValueError("bound must be nonnegative")
        bad = [i for i, v in self.entries.items() if abs(v) > self.bound]
        if bad or abs(self.tail) > self.bound:
            raise ValueError("entry exceeds the stated sup bound")

    def coord(self, i: int) -> Fraction:
        if i >= self.tail_start:
            return self.tail
        return self.entries.get(i, Fraction(0))

    def pair_finite(self, x: FinVec) -> Fraction:
        return sum((v * self.coord(i) for i, v in x.items()), Fraction(0))

    def __repr__(self) -> str:
        inside = ", ".join(f"{i}: {v}" for i, v in sorted(self.entries.items()))
        return f"DualVector({{{inside}}}, bound={self.bound}, tail={self.tail})"


def dual_pairing(w: DualVector, x: L1Point, k: int) -> RationalInterval:
    """Enclosure of sum w_i x_i of width <= 2**-k."""
    if k < 0:
        raise ValueError("precision must be nonnegative")
    if w.bound == 0:
        return RationalInterval.point(0)
    kk = k + 1
    while w.bound * two_pow(kk) > two_pow(k + 1):
        kk += 1
    head, tail = x.truncate(kk)
    center = w.pair_finite(head)
    slack = w.bound * tail
    return RationalInterval(center - slack, center + slack)


def opnorm_findim_l1(f: FunctionalPresentation) -> Fraction:
    """Exact operator norm for a presentation over the standard l1 basis.

    By l1 / l-infinity duality this is the largest absolute basis value.
    """
    return max((abs(v) for v in f.values.values()), default=Fraction(0))


def rescale(f: FunctionalPresentation, c: RationalLike) -> FunctionalPresentation:
    """Divide the functional by c > 0 (values and bound alike)."""
    c = rat(c)
    if c <= 0:
        raise ValueError("rescale factor must be positive")
    return FunctionalPresentation(
        {i: v / c for i, v in f.values.items()}, f.bound / c
    )
