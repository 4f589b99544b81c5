"""JSON encodings for scalars, vectors, oracle instances and requests.

Rationals travel as exact strings ("num/den", plain integers allowed),
intervals as [lo, hi] pairs, vectors as index-to-value objects.  Nothing
in this module ever renders a float.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .exactreal import MonotoneCut, RationalInterval, rat
from .functionals import DualVector, FunctionalPresentation
from .oracles import (
    BitStream,
    CCInstance,
    Enumeration,
    LLPOInstance,
    SEPInstance,
    TreeInstance,
)
from .spaces import BlockVec, FinVec


class SchemaError(Exception):
    """The JSON document does not match the expected instance schema."""


def fmt_rational(v: Fraction) -> str:
    v = rat(v)
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def parse_rational(obj) -> Fraction:
    if isinstance(obj, bool):
        raise SchemaError(f"not a rational: {obj!r}")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        try:
            return Fraction(obj)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"not a rational: {obj!r}") from exc
    raise SchemaError(f"not a rational: {obj!r}")


def fmt_interval(iv: RationalInterval) -> list:
    return [fmt_rational(iv.lo), fmt_rational(iv.hi)]


def parse_interval(obj) -> RationalInterval:
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise SchemaError("interval must be a [lo, hi] pair")
    return RationalInterval(parse_rational(obj[0]), parse_rational(obj[1]))


def fmt_finvec(v: FinVec) -> dict:
    return {str(i): fmt_rational(c) for i, c in sorted(v.items())}


def parse_finvec(obj) -> FinVec:
    if not isinstance(obj, Mapping):
        raise SchemaError("vector must be an object of index: rational")
    try:
        return FinVec({int(i): parse_rational(c) for i, c in obj.items()})
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def fmt_blockvec(v: BlockVec) -> dict:
    return {
        str(n): [fmt_rational(a), fmt_rational(b)] for n, (a, b) in sorted(v.blocks())
    }


def parse_blockvec(obj) -> BlockVec:
    if not isinstance(obj, Mapping):
        raise SchemaError("block vector must be an object of n: [alpha, beta]")
    blocks = {}
    for n, pair in obj.items():
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise SchemaError(f"block {n} must be an [alpha, beta] pair")
        blocks[int(n)] = (parse_rational(pair[0]), parse_rational(pair[1]))
    return BlockVec(blocks)


def fmt_functional(f: FunctionalPresentation) -> dict:
    return {
        "values": {str(i): fmt_rational(v) for i, v in sorted(f.values.items())},
        "bound": fmt_rational(f.bound),
    }


def parse_functional(obj) -> FunctionalPresentation:
    if not isinstance(obj, Mapping) or "values" not in obj or "bound" not in obj:
        raise SchemaError("functional needs 'values' and 'bound'")
    values = {int(i): parse_rational(v) for i, v in obj["values"].items()}
    return FunctionalPresentation(values, parse_rational(obj["bound"]))


def fmt_dualvector(w: DualVector) -> dict:
    out = {
        "entries": {str(i): fmt_rational(v) for i, v in sorted(w.entries.items())},
        "bound": fmt_rational(w.bound),
    }
    if w.tail != 0:
        out["tail"] = fmt_rational(w.tail)
    return out


def _parse_bitstream(obj) -> BitStream:
    if not isinstance(obj, Mapping) or "prefix" not in obj:
        raise SchemaError("bit stream needs a 'prefix' list")
    prefix = obj["prefix"]
    if not isinstance(prefix, (list, tuple)):
        raise SchemaError("'prefix' must be a list of bits")
    return BitStream(tuple(int(b) for b in prefix), bool(obj.get("zeroTail", True)))


def _parse_cut(obj, side: str) -> MonotoneCut:
    if not isinstance(obj, Mapping) or "values" not in obj:
        raise SchemaError(f"{side} cut needs a 'values' list")
    values = [parse_rational(v) for v in obj["values"]]
    stab = obj.get("stab")
    try:
        return MonotoneCut(side, values, None if stab is None else int(stab))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def parse_oracle_instance(obj):
    """Dispatch an oracle instance document on its 'type' field."""
    if not isinstance(obj, Mapping) or "type" not in obj:
        raise SchemaError("instance needs a 'type' field")
    kind = obj["type"]
    if kind == "llpo":
        if "p0" not in obj or "p1" not in obj:
            raise SchemaError("llpo instance needs 'p0' and 'p1'")
        return LLPOInstance(_parse_bitstream(obj["p0"]), _parse_bitstream(obj["p1"]))
    if kind == "cc":
        if "lower" not in obj or "upper" not in obj:
            raise SchemaError("cc instance needs 'lower' and 'upper'")
        try:
            return CCInstance(
                _parse_cut(obj["lower"], "lower"), _parse_cut(obj["upper"], "upper")
            )
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
    if kind == "sep":
        if "p" not in obj or "q" not in obj:
            raise SchemaError("sep instance needs 'p' and 'q'")
        return SEPInstance(
            Enumeration(tuple(int(v) for v in obj["p"])),
            Enumeration(tuple(int(v) for v in obj["q"])),
        )
    if kind == "wkl":
        return _parse_tree(obj)
    raise SchemaError(f"unknown instance type {kind!r}")


def _parse_tree(obj) -> TreeInstance:
    if "nodes" not in obj:
        raise SchemaError("wkl instance needs a 'nodes' list")
    nodes = obj["nodes"]
    if not isinstance(nodes, (list, tuple)):
        raise SchemaError("'nodes' must be a list of 0/1 strings")
    node_set = set()
    for s in nodes:
        if not isinstance(s, str) or set(s) - {"0", "1"}:
            raise SchemaError(f"bad tree node {s!r}")
        node_set.add(s)
    node_set.add("")
    cap = max(len(s) for s in node_set)
    pairs = obj.get("viability", [])
    table = {}
    for pair in pairs:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise SchemaError("viability entries must be [depth, bound] pairs")
        table[int(pair[0])] = int(pair[1])

    def contains(s: str) -> bool:
        if len(s) > cap:
            raise SchemaError(
                f"tree presented only to depth {cap}, queried at {len(s)}"
            )
        return s in node_set

    def viability(d: int) -> int:
        bound = table.get(d, d)
        if max(d, bound) > cap:
            raise SchemaError(
                f"viability depth {max(d, bound)} beyond presented depth {cap}"
            )
        return bound

    return TreeInstance(contains=contains, viability=viability)


def parse_extension_request(obj) -> dict:
    """Normalize an extension request document.

    Fields: space (l1 | l1_2 | linf_2 | rn), generators, values, bound,
    optional extendBy, dim, chooser, fuel, precision.
    """
    if not isinstance(obj, Mapping):
        raise SchemaError("extension request must be an object")
    space = obj.get("space")
    if space not in ("l1", "l1_2", "linf_2", "rn"):
        raise SchemaError(f"unknown space {space!r}")
    gens = obj.get("generators")
    if not isinstance(gens, (list, tuple)) or not gens:
        raise SchemaError("request needs a nonempty 'generators' list")
    request = {
        "space": space,
        "generators": tuple(parse_finvec(g) for g in gens),
        "functional": parse_functional(
            {"values": obj.get("values", {}), "bound": obj.get("bound", "1")}
        ),
        "extend_by": tuple(parse_finvec(v) for v in obj.get("extendBy", ())),
        "chooser": obj.get("chooser", "mid"),
        "fuel": int(obj.get("fuel", 4)),
        "precision": int(obj.get("precision", 20)),
        "dim": int(obj["dim"]) if "dim" in obj else None,
    }
    if request["chooser"] not in ("mid", "left", "right"):
        raise SchemaError(f"unknown chooser {request['chooser']!r}")
    return request


def parse_reduction_request(obj) -> dict:
    if not isinstance(obj, Mapping):
        raise SchemaError("reduction request must be an object")
    kind = obj.get("reduction")
    if kind not in ("sep-to-hbt", "cc-to-hbt1", "llpo-to-hbt2d"):
        raise SchemaError(f"unknown reduction {kind!r}")
    request = {
        "reduction": kind,
        "chooser": obj.get("chooser", "mid"),
        "fuel": int(obj["fuel"]) if "fuel" in obj else None,
        "precision": int(obj.get("precision", 20)),
    }
    if request["chooser"] not in ("mid", "left", "right"):
        raise SchemaError(f"unknown chooser {request['chooser']!r}")
    inst = obj.get("instance")
    if kind == "llpo-to-hbt2d":
        if not isinstance(inst, Mapping) or "r" not in inst:
            raise SchemaError("llpo-to-hbt2d needs an instance with field 'r'")
        request["r"] = parse_rational(inst["r"])
        return request
    parsed = parse_oracle_instance(inst)
    if kind == "sep-to-hbt" and not isinstance(parsed, SEPInstance):
        raise SchemaError("sep-to-hbt needs a sep instance")
    if kind == "cc-to-hbt1" and not isinstance(parsed, CCInstance):
        raise SchemaError("cc-to-hbt1 needs a cc instance")
    request["instance"] = parsed
    return request
