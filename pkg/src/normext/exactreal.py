"""Exact rational scalars, rational intervals, precision-indexed real
enclosures and monotone cuts.

Every scalar in this package is a ``fractions.Fraction`` (arbitrary
precision, always stored reduced, exact equality).  A real number is not
a float: it is a query ``k -> interval`` returning nested rational
intervals of width at most ``2**-k``.  Monotone cuts are the bounded
monotone rational sequences used by the choice oracles; a stabilization
certificate is the finite-presentation device that makes their limits
exactly computable at desk scale.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence, Union

Rational = Fraction

RationalLike = Union[Fraction, int, str]


def rat(value: RationalLike, den: Optional[int] = None) -> Fraction:
    """Coerce ints, 'num/den' strings or Fractions to an exact Fraction."""
    if den is not None:
        return Fraction(value, den)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def two_pow(k: int) -> Fraction:
    """2**-k as an exact rational (k may be negative)."""
    if k >= 0:
        return Fraction(1, 2 ** k)
    return Fraction(2 ** (-k))


class NoStabilizationError(Exception):
    """Raised when an exact limit is requested without a certificate."""


class RationalInterval:
    """Closed interval with exact rational endpoints, lo <= hi."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: RationalLike, hi: RationalLike):
        lo = rat(lo)
        hi = rat(hi)
        if lo > hi:
            raise ValueError(f"interval endpoints out of order: [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, value: RationalLike) -> "RationalInterval":
        v = rat(value)
        return cls(v, v)

    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value: RationalLike) -> bool:
        v = rat(value)
        return self.lo <= v <= self.hi

    def contains_interval(self, other: "RationalInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalInterval)
            and self.lo == other.lo
            and self.hi == other.hi
        )

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        return f"RationalInterval({self.lo}, {self.hi})"


def _as_interval(value) -> RationalInterval:
    if isinstance(value, RationalInterval):
        return value
    return RationalInterval.point(rat(value))


def interval_arith(op: str, left, right=None) -> RationalInterval:
    """Exact image hull of add/sub/neg/abs/scale/max/min on intervals.

    ``scale`` takes one rational operand and one interval operand, in
    either order.  The result is minimal: it is exactly
    ``{op(x, y) : x in left, y in right}``.
    """
    if op == "neg":
        i = _as_interval(left)
        return RationalInterval(-i.hi, -i.lo)
    if op == "abs":
        i = _as_interval(left)
        if i.lo >= 0:
            return RationalInterval(i.lo, i.hi)
        if i.hi <= 0:
            return RationalInterval(-i.hi, -i.lo)
        return RationalInterval(0, max(-i.lo, i.hi))
    if right is None:
        raise ValueError(f"operation {op!r} needs two operands")
    if op == "scale":
        # exactly one operand is the scalar
        if isinstance(left, RationalInterval):
            i, c = left, rat(right)
        elif isinstance(right, RationalInterval):
            i, c = right, rat(left)
        else:
            i, c = _as_interval(right), rat(left)
        a, b = c * i.lo, c * i.hi
        return RationalInterval(min(a, b), max(a, b))
    i = _as_interval(left)
    j = _as_interval(right)
    if op == "add":
        return RationalInterval(i.lo + j.lo, i.hi + j.hi)
    if op == "sub":
        return RationalInterval(i.lo - j.hi, i.hi - j.lo)
    if op == "max":
        return RationalInterval(max(i.lo, j.lo), max(i.hi, j.hi))
    if op == "min":
        return RationalInterval(min(i.lo, j.lo), min(i.hi, j.hi))
    raise ValueError(f"unknown interval operation {op!r}")


class RealEnclosure:
    """A real number as a precision-indexed nested interval query.

    ``query(k)`` must return an interval of width at most ``2**-k`` that
    is contained in ``query(k')`` for every k' < k.  Both conditions are
    asserted on every approximation actually computed.
    """

    def __init__(self, query: Callable[[int], RationalInterval]):
        self._query = query
        self._cache: dict[int, RationalInterval] = {}

    @classmethod
    def from_rational(cls, value: RationalLike) -> "RealEnclosure":
        v = rat(value)
        return cls(lambda k: RationalInterval.point(v))

    @classmethod
    def from_partial_sums(
        cls,
        term: Callable[[int], Fraction],
        tail_bound: Callable[[int], Fraction],
    ) -> "RealEnclosure":
        """Sum of a series with a certified tail bound.

        ``tail_bound(m)`` bounds ``|sum of terms m, m+1, ...|`` and must
        eventually fall below any 2**-k.
        """

        sums: list[Fraction] = [Fraction(0)]

        def partial(m: int) -> Fraction:
            while len(sums) <= m:
                sums.append(sums[-1] + term(len(sums) - 1))
            return sums[m]

        def query(k: int) -> RationalInterval:
            eps = two_pow(k + 1)
            m = 0
            while tail_bound(m) > eps:
                m += 1
            s = partial(m)
            t = tail_bound(m)
            return RationalInterval(s - t, s + t)

        return cls(query)

    def approx(self, k: int) -> RationalInterval:
        if k < 0:
            raise ValueError("precision must be nonnegative")
        if k in self._cache:
            return self._cache[k]
        box = self._query(k)
        if box.width() > two_pow(k):
            raise AssertionError(
                f"enclosure at precision {k} has width {box.width()} > 2^-{k}"
            )
        for k2, other in self._cache.items():
            inner, outer = (box, other) if k2 < k else (other, box)
            if not outer.contains_interval(inner):
                raise AssertionError(
                    f"enclosures at precisions {k2} and {k} are not nested"
                )
        self._cache[k] = box
        return box


def real_approx(x: RealEnclosure, k: int) -> RationalInterval:
    """Interval of width <= 2**-k around the real x, nested in coarser ones."""
    return x.approx(k)


class MonotoneCut:
    """A monotone rational sequence, optionally with a stabilization stage.

    A lower cut is non-decreasing and describes a supremum; an upper cut
    is non-increasing and describes an infimum.  The limit is exactly
    computable only when a stabilization certificate is present.
    """

    def __init__(
        self,
        side: str,
        values: Union[Callable[[int], Fraction], Sequence[RationalLike], Mapping[int, RationalLike]],
        stabilized_at: Optional[int] = None,
    ):
        if side not in ("lower", "upper"):
            raise ValueError("side must be 'lower' or 'upper'")
        self.side = side
        self.stabilized_at = stabilized_at
        if callable(values):
            self._fn = values
            self._list = None
        else:
            if isinstance(values, Mapping):
                seq = [rat(values[i]) for i in range(len(values))]
            else:
                seq = [rat(v) for v in values]
            if not seq:
                raise ValueError("cut needs at least one stage")
            if stabilized_at is not None and stabilized_at >= len(seq):
                raise ValueError("stabilization stage beyond presented values")
            self._list = seq
            self._fn = None
        self._check_monotone()

    def _check_monotone(self):
        if self._list is None:
            return
        for a, b in zip(self._list, self._list[1:]):
            if self.side == "lower" and a > b:
                raise ValueError("lower cut must be non-decreasing")
            if self.side == "upper" and a < b:
                raise ValueError("upper cut must be non-increasing")

    def value(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("stage must be nonnegative")
        if self.stabilized_at is not None and n >= self.stabilized_at:
            n = self.stabilized_at
        if self._list is not None:
            if n >= len(self._list):
                raise NoStabilizationError(
                    f"stage {n} beyond presented values and no certificate"
                )
            return self._list[n]
        return rat(self._fn(n))

    def limit(self) -> Fraction:
        """Exact sup (lower side) or inf (upper side); needs a certificate."""
        if self.stabilized_at is None:
            raise NoStabilizationError("no stabilization certificate")
        return self.value(self.stabilized_at)


def cut_value(c: MonotoneCut, n: int) -> Fraction:
    return c.value(n)


def cut_limit(c: MonotoneCut) -> Fraction:
    return c.limit()
