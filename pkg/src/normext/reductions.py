"""Reduction pipelines between the choice oracles and the extension
engines.

Three constructions are realized as exact instance builders plus
decoders:

* a separation instance is turned into a functional on an l1 subspace
  whose norm-preserving extensions reveal a separating set through
  their signs on designated probe vectors;
* a nested-interval instance is turned into a one-step extension
  problem whose admissible values are exactly the interval of the
  instance, scaled by the probe mass;
* a rational parameter is turned into a two-dimensional extension
  problem whose dual weights reveal its sign.

The first construction runs through a weighted block space that embeds
isometrically into l1; all of its data (the per-block weights, the
embedding, the distance function of the diagonal-free subspace) is
computed exactly from the finite presentations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple

from .exactreal import NoStabilizationError, RationalLike, rat, two_pow
from .functionals import DualVector, FunctionalPresentation, GeneratorSystem
from .hahnbanach import (
    Chooser,
    FullExtension,
    LLPOOracle,
    OneStepExtension,
    chooser_mid,
    extend_2d_l1,
    extend_full_l1,
    one_step_extend,
)
from .oracles import CCInstance, SEPInstance, llpo_solve
from .spaces import (
    BlockVec,
    EpsilonSeq,
    FinVec,
    L1Point,
    l1_norm,
    l1_to_linf_pair,
    linf_to_l1_pair,
)

ZERO = Fraction(0)
ONE = Fraction(1)


class FuelError(Exception):
    """The iteration budget does not cover the instance data."""


def sep_delta(sep: SEPInstance, n: int) -> Fraction:
    """Signed weight 2**-(k+1) of the first enumeration stage naming n.

    Positive when n is enumerated by p, negative when by q, zero when n
    is never enumerated; exact because the enumerations stabilize.
    """
    kp = sep.p.first_index(n)
    if kp is not None:
        return two_pow(kp + 1)
    kq = sep.q.first_index(n)
    if kq is not None:
        return -two_pow(kq + 1)
    return ZERO


def eps_from_delta(delta: RationalLike) -> Fraction:
    """The block weight (1 - delta) / (1 + delta)."""
    d = rat(delta)
    if d <= -1 or d >= 1:
        raise ValueError("delta must lie in (-1, 1)")
    return (1 - d) / (1 + d)


@dataclass(frozen=True)
class SeparationWeights:
    """Per-block data derived from a separation instance."""

    sep: SEPInstance
    delta: Dict[int, Fraction]
    eps: EpsilonSeq


def separation_weights(sep: SEPInstance) -> SeparationWeights:
    sep.check_disjoint()
    constrained = sorted(sep.p.range() | sep.q.range())
    delta = {n: sep_delta(sep, n) for n in constrained}
    eps = EpsilonSeq({n: eps_from_delta(d) for n, d in delta.items()})
    return SeparationWeights(sep, delta, eps)


def block_map(eps_n: RationalLike, v: Tuple[RationalLike, RationalLike]) -> Tuple[Fraction, Fraction]:
    """Linear map carrying the block norm onto the sup norm, exactly."""
    e = rat(eps_n)
    if e <= 0:
        raise ValueError("block weight must be positive")
    a, b = rat(v[0]), rat(v[1])
    if e < 1:
        return e * a + b, a - b
    if e > 1:
        return a + b, a / e - b
    return a + b, a - b


def block_map_inv(eps_n: RationalLike, v: Tuple[RationalLike, RationalLike]) -> Tuple[Fraction, Fraction]:
    """Exact two-sided inverse of block_map (determinants never vanish)."""
    e = rat(eps_n)
    if e <= 0:
        raise ValueError("block weight must be positive")
    c, d = rat(v[0]), rat(v[1])
    if e < 1:
        a = (c + d) / (1 + e)
        return a, c - e * a
    if e > 1:
        a = e * (c + d) / (e + 1)
        return a, c - a
    return (c + d) / 2, (c - d) / 2


def embed_l1(x: BlockVec, eps: EpsilonSeq) -> FinVec:
    """Isometric image of a block vector in l1 (block n at indices 2n, 2n+1)."""
    coords: Dict[int, Fraction] = {}
    for n, v in x.blocks():
        c, d = block_map(eps(n), v)
        s0, s1 = linf_to_l1_pair(c, d)
        w = two_pow(n + 1)
        if s0 != ZERO:
            coords[2 * n] = w * s0
        if s1 != ZERO:
            coords[2 * n + 1] = w * s1
    return FinVec(coords)


def embed_l1_inv(y: FinVec, eps: EpsilonSeq) -> BlockVec:
    """Exact inverse of embed_l1 on finitely supported vectors."""
    blocks: Dict[int, Tuple[Fraction, Fraction]] = {}
    for n in sorted({i // 2 for i in y.support()}):
        scale = 2 ** (n + 1)
        c, d = l1_to_linf_pair(scale * y.get(2 * n), scale * y.get(2 * n + 1))
        blocks[n] = block_map_inv(eps(n), (c, d))
    return BlockVec(blocks)


def base_functional(x: BlockVec) -> Fraction:
    """Weighted sum of the first block components, 2**-(n+1) * alpha_n."""
    return sum((two_pow(n + 1) * v[0] for n, v in x.blocks()), ZERO)


def alpha_subspace_distance(x: BlockVec, eps: EpsilonSeq) -> Fraction:
    """Block-sum distance from x to the subspace of vanishing second components.

    The infimum over the subspace is attained at the matching first
    components, leaving 2**-(n+1) * |beta_n| per block; the value does
    not depend on the weights since every block norm of (0, beta) is
    |beta|.
    """
    return sum((two_pow(n + 1) * abs(v[1]) for n, v in x.blocks()), ZERO)


# ---------------------------------------------------------------------------
# separation -> full extension on l1

@dataclass(frozen=True)
class SepExtensionInstance:
    tag: str
    system: GeneratorSystem
    functional: FunctionalPresentation
    probes: Tuple[FinVec, ...]
    weights: SeparationWeights
    fuel: int


def build_sep_extension_instance(sep: SEPInstance, fuel: int) -> SepExtensionInstance:
    """Functional on the embedded generators whose extensions decode separators.

    The generators are the isometric images of the per-block unit
    vectors, carrying the values 2**-(n+1) with bound 1; the probes are
    the images of the per-block second-component units.
    """
    weights = separation_weights(sep)
    constrained = sep.p.range() | sep.q.range()
    if constrained and fuel <= max(constrained):
        raise FuelError(
            f"fuel {fuel} does not cover enumerated value {max(constrained)}"
        )
    if fuel < 1:
        raise FuelError("fuel must be at least 1")
    eps = weights.eps
    gens = tuple(embed_l1(BlockVec.single(n, 1, 0), eps) for n in range(fuel))
    probes = tuple(embed_l1(BlockVec.single(n, 0, 1), eps) for n in range(fuel))
    values = {n: two_pow(n + 1) for n in range(fuel)}
    functional = FunctionalPresentation(values, 1)
    return SepExtensionInstance(
        tag="sep-to-hbt",
        system=GeneratorSystem(gens),
        functional=functional,
        probes=probes,
        weights=weights,
        fuel=fuel,
    )


def probe_values(dual: DualVector, probes: Tuple[FinVec, ...]) -> Dict[int, Fraction]:
    return {n: dual.pair_finite(p) for n, p in enumerate(probes)}


def decode_separating_set(values: Mapping[int, Fraction]) -> frozenset:
    """Numbers whose probe value is <= 0; ties go into the set."""
    return frozenset(n for n, v in values.items() if rat(v) <= 0)


@dataclass(frozen=True)
class SepReduction:
    instance: SepExtensionInstance
    extension: FullExtension
    values: Dict[int, Fraction]
    decoded: frozenset
    separates: bool


def run_sep_reduction(
    sep: SEPInstance,
    fuel: int = 12,
    precision: int = 20,
    chooser: Chooser = chooser_mid,
) -> SepReduction:
    inst = build_sep_extension_instance(sep, fuel)
    ext = extend_full_l1(inst.functional, inst.system, fuel, precision, chooser)
    values = probe_values(ext.dual, inst.probes)
    decoded = decode_separating_set(values)
    separates = sep.p.range() <= decoded and not (decoded & sep.q.range())
    return SepReduction(inst, ext, values, decoded, separates)


# ---------------------------------------------------------------------------
# nested intervals -> one-step extension on l1

@dataclass(frozen=True)
class CCExtensionInstance:
    tag: str
    system: GeneratorSystem
    functional: FunctionalPresentation
    point: L1Point
    stages: Tuple[Tuple[Fraction, Fraction], ...]
    fuel: int


def build_cc_extension_instance(cc: CCInstance, fuel: Optional[int] = None) -> CCExtensionInstance:
    """One-step instance whose admissible probe values recover the interval.

    Generator u_n ties the probe chain value into [a_n, b_n]; generator
    v_n propagates it along the chain.  The point to extend by is the
    geometric combination of the chain coordinates.
    """
    if cc.lower.stabilized_at is None or cc.upper.stabilized_at is None:
        raise NoStabilizationError("no stabilization certificate")
    stab = max(cc.lower.stabilized_at, cc.upper.stabilized_at)
    if fuel is None:
        fuel = stab + 1
    if fuel <= stab:
        raise FuelError(f"fuel {fuel} below stabilization stage {stab}")
    stages = tuple(cc.stage(n) for n in range(fuel))
    gens = []
    values = {}
    for n, (a, b) in enumerate(stages):
        alpha = (a - b) / 2
        beta = (a + b) / 2
        u = {2 * n: ONE}
        if alpha != ZERO:
            u[2 * n + 1] = alpha
        gens.append(FinVec(u))
        values[n] = beta
    for n in range(fuel):
        gens.append(FinVec({2 * n: ONE, 2 * n + 2: -ONE}))
        values[fuel + n] = ZERO
    point = L1Point.from_term_series(
        term=lambda n: (2 * n, two_pow(n + 1)),
        tail_bound=lambda m: two_pow(m),
    )
    return CCExtensionInstance(
        tag="cc-to-hbt1",
        system=GeneratorSystem(tuple(gens)),
        functional=FunctionalPresentation(values, 1),
        point=point,
        stages=stages,
        fuel=fuel,
    )


def decode_cc_point(ext: OneStepExtension) -> Fraction:
    """Recover the chain value from the recorded probe value.

    The probe is a positive combination of chained coordinates, so any
    norm-1 extension is forced to assign it (chain value) * (probe
    mass); dividing by the exact mass undoes the truncation.
    """
    mass = l1_norm(ext.probe)
    if mass == ZERO:
        raise ValueError("probe carries no mass")
    return ext.value_on_probe() / mass


def cc_dual_witness(
    stages: Tuple[Tuple[Fraction, Fraction], ...], y: Fraction
) -> Tuple[Fraction, ...]:
    """Second dual coordinates (beta_n - y) / alpha_n certifying the decode.

    Degenerate stages with a_n = b_n force y = beta_n and contribute a
    zero witness coordinate.
    """
    out = []
    for a, b in stages:
        alpha = (a - b) / 2
        beta = (a + b) / 2
        out.append(ZERO if alpha == ZERO else (beta - y) / alpha)
    return tuple(out)


@dataclass(frozen=True)
class CCReduction:
    instance: CCExtensionInstance
    extension: OneStepExtension
    decoded: Fraction
    witness: Tuple[Fraction, ...]
    in_all_stages: bool
    witness_valid: bool


def run_cc_reduction(
    cc: CCInstance,
    fuel: Optional[int] = None,
    precision: int = 20,
    chooser: Chooser = chooser_mid,
) -> CCReduction:
    inst = build_cc_extension_instance(cc, fuel)
    # probing past the chain adds unconstrained coordinates, so clamp
    probe_precision = min(precision, inst.fuel)
    ext = one_step_extend(
        inst.functional, inst.system, inst.point,
        chooser=chooser, precision=probe_precision,
    )
    y = decode_cc_point(ext)
    witness = cc_dual_witness(inst.stages, y)
    in_all = all(a <= y <= b for a, b in inst.stages)
    valid = all(abs(w) <= 1 for w in witness)
    return CCReduction(inst, ext, y, witness, in_all, valid)


# ---------------------------------------------------------------------------
# sign detection -> two-dimensional extension

@dataclass(frozen=True)
class LLPOExtensionInstance:
    tag: str
    x: FinVec
    functional: FunctionalPresentation
    r: Fraction


def build_llpo_extension_instance(r: RationalLike) -> LLPOExtensionInstance:
    """Line through (1, r) with the functional a -> a * (1 + |r|), norm 1."""
    r = rat(r)
    x = FinVec({0: ONE, 1: r})
    functional = FunctionalPresentation({0: 1 + abs(r)}, 1)
    return LLPOExtensionInstance("llpo-to-hbt2d", x, functional, r)


def decode_llpo_answer(w: DualVector) -> int:
    """1 when the second weight is witnessed above -1, else 0.

    The first weight of any valid norm-1 extension equals 1 exactly; the
    two semidecisions on the second weight are exact comparisons here,
    with the first one preferred when both succeed.
    """
    if w.coord(0) != 1:
        raise ValueError("invalid extension: first dual weight differs from 1")
    if w.coord(1) > -1:
        return 1
    return 0


@dataclass(frozen=True)
class LLPOReduction:
    instance: LLPOExtensionInstance
    dual: DualVector
    answer: int
    consistent: bool


def run_llpo_reduction(r: RationalLike, llpo: LLPOOracle = llpo_solve) -> LLPOReduction:
    inst = build_llpo_extension_instance(r)
    dual = extend_2d_l1(inst.functional, inst.x, llpo)
    answer = decode_llpo_answer(dual)
    consistent = (answer == 1 and inst.r >= 0) or (answer == 0 and inst.r <= 0)
    return LLPOReduction(inst, dual, answer, consistent)
