"""Vectors and norms: finitely supported sequences, certified l1 points,
two-component block vectors and the block-sum norms.

The flattening convention used everywhere is that block ``n`` of a block
vector occupies sequence indices ``2n`` (first component) and ``2n+1``
(second component).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Tuple, Union

from .exactreal import RationalInterval, RationalLike, rat, two_pow


class FinVec:
    """Finitely supported rational vector, absent index means zero."""

    __slots__ = ("_coords",)

    def __init__(self, coords: Union[Mapping[int, RationalLike], Iterable[Tuple[int, RationalLike]], None] = None):
        items = coords.items() if isinstance(coords, Mapping) else (coords or ())
        clean = {}
        for i, v in items:
            i = int(i)
            if i < 0:
                raise ValueError("indices must be nonnegative")
            v = rat(v)
            if v != 0:
                clean[i] = v
        self._coords = clean

    @classmethod
    def unit(cls, i: int) -> "FinVec":
        return cls({i: 1})

    @classmethod
    def from_list(cls, values: Iterable[RationalLike]) -> "FinVec":
        return cls({i: v for i, v in enumerate(values)})

    def get(self, i: int) -> Fraction:
        return self._coords.get(i, Fraction(0))

    def items(self):
        return self._coords.items()

    def support(self) -> Tuple[int, ...]:
        return tuple(sorted(self._coords))

    def is_zero(self) -> bool:
        return not self._coords

    def to_list(self, length: Optional[int] = None) -> list:
        n = length if length is not None else (max(self._coords) + 1 if self._coords else 0)
        return [self.get(i) for i in range(n)]

    def __add__(self, other: "FinVec") -> "FinVec":
        out = dict(self._coords)
        for i, v in other._coords.items():
            out[i] = out.get(i, Fraction(0)) + v
        return FinVec(out)

    def __sub__(self, other: "FinVec") -> "FinVec":
        return self + (-other)

    def __neg__(self) -> "FinVec":
        return FinVec({i: -v for i, v in self._coords.items()})

    def scale(self, c: RationalLike) -> "FinVec":
        c = rat(c)
        return FinVec({i: c * v for i, v in self._coords.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, FinVec) and self._coords == other._coords

    def __hash__(self) -> int:
        return hash(frozenset(self._coords.items()))

    def __repr__(self) -> str:
        inside = ", ".join(f"{i}: {v}" for i, v in sorted(self._coords.items()))
        return "FinVec({" + inside + "})"


def l1_norm(x: FinVec) -> Fraction:
    """Exact sum of absolute coordinates (0 for the empty vector)."""
    return sum((abs(v) for _, v in x.items()), Fraction(0))


def linf_norm(x: FinVec) -> Fraction:
    """Exact max of absolute coordinates (0 for the empty vector)."""
    return max((abs(v) for _, v in x.items()), default=Fraction(0))


def dot(x: FinVec, y: FinVec) -> Fraction:
    small, large = (x, y) if len(tuple(x.items())) <= len(tuple(y.items())) else (y, x)
    return sum((v * large.get(i) for i, v in small.items()), Fraction(0))


class L1Point:
    """A point of l1 as a precision-indexed certified truncation query.

    ``query(k)`` returns ``(head, tail_bound)`` where ``head`` is a
    finitely supported vector, ``tail_bound <= 2**-k`` and the full point
    is within ``tail_bound`` of ``head`` in the l1 norm.  The bound is
    certified by construction; this class checks the ``2**-k`` shape.
    """

    def __init__(self, query: Callable[[int], Tuple[FinVec, Fraction]]):
        self._query = query
        self._cache: dict[int, Tuple[FinVec, Fraction]] = {}

    @classmethod
    def from_finvec(cls, v: FinVec) -> "L1Point":
        return cls(lambda k: (v, Fraction(0)))

    @classmethod
    def from_term_series(
        cls,
        term: Callable[[int], Tuple[int, Fraction]],
        tail_bound: Callable[[int], Fraction],
    ) -> "L1Point":
        """Point given as a coordinatewise series with a certified l1 tail.

        ``term(n)`` is the n-th summand as ``(index, value)`` and
        ``tail_bound(m)`` bounds the l1 mass of all terms from m on.
        """

        def query(k: int) -> Tuple[FinVec, Fraction]:
            eps = two_pow(k)
            m = 0
            while tail_bound(m) > eps:
                m += 1
            coords: dict[int, Fraction] = {}
            for n in range(m):
                i, v = term(n)
                coords[i] = coords.get(i, Fraction(0)) + rat(v)
            return FinVec(coords), tail_bound(m)

        return cls(query)

    def truncate(self, k: int) -> Tuple[FinVec, Fraction]:
        if k < 0:
            raise ValueError("precision must be nonnegative")
        if k in self._cache:
            return self._cache[k]
        head, bound = self._query(k)
        bound = rat(bound)
        if bound < 0 or bound > two_pow(k):
            raise AssertionError(f"tail bound {bound} out of range at precision {k}")
        self._cache[k] = (head, bound)
        return head, bound


def truncate(x: L1Point, k: int) -> Tuple[FinVec, Fraction]:
    """The certified pair (head, tail bound) of x at precision k."""
    return x.truncate(k)


def l1point_norm(x: L1Point, k: int) -> RationalInterval:
    """Interval of width <= 2**-(k-1) containing the l1 norm of x."""
    head, tail = x.truncate(k)
    h = l1_norm(head)
    return RationalInterval(max(Fraction(0), h - tail), h + tail)


class BlockVec:
    """Finitely supported sequence of two-component blocks (alpha, beta)."""

    __slots__ = ("_blocks",)

    def __init__(self, blocks: Union[Mapping[int, Tuple[RationalLike, RationalLike]], None] = None):
        clean = {}
        for n, (a, b) in (blocks or {}).items():
            n = int(n)
            if n < 0:
                raise ValueError("block indices must be nonnegative")
            a, b = rat(a), rat(b)
            if a != 0 or b != 0:
                clean[n] = (a, b)
        self._blocks = clean

    @classmethod
    def single(cls, n: int, alpha: RationalLike, beta: RationalLike) -> "BlockVec":
        return cls({n: (alpha, beta)})

    def get(self, n: int) -> Tuple[Fraction, Fraction]:
        return self._blocks.get(n, (Fraction(0), Fraction(0)))

    def blocks(self):
        return self._blocks.items()

    def support(self) -> Tuple[int, ...]:
        return tuple(sorted(self._blocks))

    def is_zero(self) -> bool:
        return not self._blocks

    def __add__(self, other: "BlockVec") -> "BlockVec":
        out = dict(self._blocks)
        for n, (a, b) in other._blocks.items():
            a0, b0 = out.get(n, (Fraction(0), Fraction(0)))
            out[n] = (a0 + a, b0 + b)
        return BlockVec(out)

    def __sub__(self, other: "BlockVec") -> "BlockVec":
        return self + other.scale(-1)

    def scale(self, c: RationalLike) -> "BlockVec":
        c = rat(c)
        return BlockVec({n: (c * a, c * b) for n, (a, b) in self._blocks.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, BlockVec) and self._blocks == other._blocks

    def __repr__(self) -> str:
        inside = ", ".join(f"{n}: ({a}, {b})" for n, (a, b) in sorted(self._blocks.items()))
        return "BlockVec({" + inside + "})"


class EpsilonSeq:
    """Positive rational weight sequence for the per-block norms.

    Unlisted indices default to 1, which matches blocks carrying no
    separation information.
    """

    def __init__(self, values: Union[Mapping[int, RationalLike], None] = None, default: RationalLike = 1):
        self._values = {int(n): rat(v) for n, v in (values or {}).items()}
        self._default = rat(default)
        for n, v in self._values.items():
            if v <= 0:
                raise ValueError(f"eps({n}) = {v} must be positive")
        if self._default <= 0:
            raise ValueError("default eps must be positive")

    def __call__(self, n: int) -> Fraction:
        return self._values.get(n, self._default)

    def items(self):
        return self._values.items()


def linf_to_l1_pair(u: RationalLike, v: RationalLike) -> Tuple[Fraction, Fraction]:
    """The corner isometry ((u-v)/2, (u+v)/2): its l1 norm is max(|u|, |v|)."""
    u, v = rat(u), rat(v)
    return (u - v) / 2, (u + v) / 2


def l1_to_linf_pair(a: RationalLike, b: RationalLike) -> Tuple[Fraction, Fraction]:
    """Exact inverse of the corner isometry."""
    a, b = rat(a), rat(b)
    return b + a, b - a


def block_norm(eps_n: RationalLike, v: Tuple[RationalLike, RationalLike]) -> Fraction:
    """The weighted two-dimensional block norm of (alpha, beta).

    Three exact cases depending on whether the weight is below, above or
    equal to 1; in every case the norm of (alpha, 0) is |alpha| and the
    norm of (0, beta) is |beta|.
    """
    e = rat(eps_n)
    if e <= 0:
        raise ValueError("block weight must be positive")
    a, b = rat(v[0]), rat(v[1])
    if e < 1:
        return max(abs(e * a + b), abs(a - b))
    if e > 1:
        return max(abs(a + b), abs(a / e - b))
    return max(abs(a + b), abs(a - b))


def block_sum_norm(x: BlockVec, eps: EpsilonSeq) -> Fraction:
    """Exact weighted sum 2**-(n+1) * block_norm over the support of x."""
    total = Fraction(0)
    for n, v in x.blocks():
        total += two_pow(n + 1) * block_norm(eps(n), v)
    return total
