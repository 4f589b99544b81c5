"""Command line front end: run extension engines, reduction pipelines
and the verification suites on JSON instance files.

Exit codes: 0 success, 1 invariant failure, 2 input error, 3 promise
violation.  Reports carry exact rationals; decimal previews are marked
approximate.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .exactreal import NoStabilizationError
from .functionals import GeneratorSystem
from .hahnbanach import (
    CHOOSERS,
    NormViolationError,
    conjugate_2d_linf,
    extend_2d_l1,
    extend_findim,
    extend_full_l1,
    one_step_extend,
)
from .jsonio import (
    SchemaError,
    fmt_dualvector,
    fmt_finvec,
    fmt_functional,
    fmt_rational,
    parse_extension_request,
    parse_reduction_request,
)
from .oracles import LoopStepError, PromiseViolationError, llpo_solve
from .reductions import FuelError, run_cc_reduction, run_llpo_reduction, run_sep_reduction
from .verify import SUITES, run_suites

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_INPUT = 2
EXIT_PROMISE = 3


@dataclass
class RunConfig:
    command: str
    instance_path: Optional[str] = None
    precision: Optional[int] = None
    fuel: Optional[int] = None
    chooser: Optional[str] = None
    output_format: str = "text"
    seed: int = 0
    suite: Optional[str] = None

    def validate(self):
        if self.precision is not None and self.precision < 0:
            raise SchemaError("precision must be >= 0")
        if self.fuel is not None and self.fuel < 1:
            raise SchemaError("fuel must be >= 1")


def decimal_preview(v: Fraction, digits: int = 10) -> str:
    """Ten-digit decimal rendering, explicitly approximate."""
    sign = "-" if v < 0 else ""
    v = abs(v)
    scaled = v.numerator * 10 ** digits // v.denominator
    whole, frac = divmod(scaled, 10 ** digits)
    return f"{sign}{whole}.{str(frac).zfill(digits)}"


def render_value(v: Fraction) -> str:
    return f"{fmt_rational(v)} (~{decimal_preview(v)} approx)"


def _verdict(check: str, expected, got, ok: bool) -> dict:
    return {"check": check, "expected": str(expected), "got": str(got), "ok": bool(ok)}


def _load_instance(path: str):
    try:
        with open(path) as handle:
            return json.load(handle)
    except OSError as exc:
        raise SchemaError(f"cannot read instance file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from exc


def _emit(report: dict, fmt: str, out) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2), file=out)
        return
    if fmt == "csv":
        print("suite,instance-id,check,expected,got,verdict", file=out)
        for v in report.get("verdicts", []):
            row = [
                report.get("command", ""),
                str(report.get("instance", "")),
                v["check"],
                v["expected"],
                v["got"],
                "pass" if v["ok"] else "fail",
            ]
            print(",".join(item.replace(",", ";") for item in row), file=out)
        return
    for line in report.get("lines", []):
        print(line, file=out)
    for v in report.get("verdicts", []):
        mark = "ok" if v["ok"] else "FAIL"
        print(f"  [{mark}] {v['check']}: expected {v['expected']}, got {v['got']}", file=out)


def cmd_extend(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    req = parse_extension_request(_load_instance(cfg.instance_path))
    chooser_name = cfg.chooser or req["chooser"]
    chooser = CHOOSERS[chooser_name]
    precision = cfg.precision if cfg.precision is not None else req["precision"]
    fuel = cfg.fuel if cfg.fuel is not None else req["fuel"]
    gens = req["generators"]
    f = req["functional"]
    system = GeneratorSystem(gens)
    space = req["space"]
    verdicts: List[dict] = []
    lines: List[str] = []
    result: dict = {}

    if space == "l1" and req["extend_by"]:
        fn, sys_k = f, system
        steps = []
        for vec in req["extend_by"]:
            ext = one_step_extend(fn, sys_k, vec, chooser=chooser)
            steps.append(
                {
                    "bounds": [fmt_rational(ext.bounds.lo), fmt_rational(ext.bounds.hi)],
                    "chosen": fmt_rational(ext.value_on_probe()),
                }
            )
            fn, sys_k = ext.functional, ext.system
        result = {"steps": steps, "functional": fmt_functional(fn)}
        lines.append(f"one-step extensions: {len(steps)}")
        for i, s in enumerate(steps):
            lines.append(
                f"  step {i}: bounds [{s['bounds'][0]}, {s['bounds'][1]}]"
                f" chosen {s['chosen']}"
            )
    elif space == "l1":
        full = extend_full_l1(f, system, fuel, precision, chooser)
        result = {"dual": fmt_dualvector(full.dual), "complete": full.complete}
        lines.append(
            "dual vector w: "
            + ", ".join(
                f"w{i}={fmt_rational(full.dual.coord(i))}" for i in range(2 * fuel)
            )
        )
        sup = max(abs(full.dual.coord(i)) for i in range(2 * fuel))
        verdicts.append(_verdict("sup|w| <= 1", "<= 1", fmt_rational(sup), sup <= 1))
        for j, g in enumerate(gens):
            got = full.dual.pair_finite(g)
            want = f.value(j)
            verdicts.append(
                _verdict(f"agreement on generator {j}", fmt_rational(want),
                         fmt_rational(got), got == want)
            )
        verdicts.append(_verdict("all generators covered", True, full.complete, full.complete))
    elif space == "rn":
        if req["dim"] is None:
            raise SchemaError("space 'rn' needs a 'dim' field")
        ext = extend_findim(f, system, req["dim"], chooser=chooser)
        result = {"functional": fmt_functional(ext.functional),
                  "one_step_calls": ext.one_step_calls}
        ws = [ext.functional.value(i) for i in range(req["dim"])]
        lines.append("w: (" + ", ".join(fmt_rational(w) for w in ws) + ")")
        lines.append(f"one-step calls: {ext.one_step_calls}")
        sup = max(abs(w) for w in ws)
        verdicts.append(
            _verdict("norm bound preserved", f"<= {fmt_rational(f.bound)}",
                     fmt_rational(sup), sup <= f.bound)
        )
        for j, g in enumerate(gens):
            got = sum((v * ext.functional.value(i) for i, v in g.items()), Fraction(0))
            want = f.value(j)
            verdicts.append(
                _verdict(f"agreement on generator {j}", fmt_rational(want),
                         fmt_rational(got), got == want)
            )
    else:  # l1_2 or linf_2
        x = gens[0]
        if space == "l1_2":
            w = extend_2d_l1(f, x, llpo=llpo_solve)
            pair = sum((v * w.coord(i) for i, v in x.items()), Fraction(0))
            norm = max(abs(w.coord(0)), abs(w.coord(1)))
            result = {"dual": fmt_dualvector(w)}
            lines.append(f"w=({fmt_rational(w.coord(0))}, {fmt_rational(w.coord(1))})")
            lines.append(f"norm={fmt_rational(norm)} exact")
        else:
            conj = conjugate_2d_linf(f, x)
            g0, g1 = conj.functional.value(0), conj.functional.value(1)
            pair = g0 * x.get(0) + g1 * x.get(1)
            norm = abs(g0) + abs(g1)
            result = {"functional": fmt_functional(conj.functional),
                      "l1_dual": fmt_dualvector(conj.l1_dual)}
            lines.append(f"w=({fmt_rational(g0)}, {fmt_rational(g1)})")
            lines.append(f"norm={fmt_rational(norm)} exact")
        want = f.value(0)
        verdicts.append(
            _verdict("agreement on generator 0", fmt_rational(want),
                     fmt_rational(pair), pair == want)
        )
        verdicts.append(
            _verdict("norm preserved", fmt_rational(f.bound), fmt_rational(norm),
                     norm <= f.bound)
        )

    ok = all(v["ok"] for v in verdicts)
    report = {
        "command": "extend",
        "instance": cfg.instance_path,
        "space": space,
        "chooser": chooser_name,
        "result": result,
        "verdicts": verdicts,
        "ok": ok,
        "lines": lines,
    }
    _emit(report, cfg.output_format, out)
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_reduce(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    req = parse_reduction_request(_load_instance(cfg.instance_path))
    chooser_name = cfg.chooser or req["chooser"]
    chooser = CHOOSERS[chooser_name]
    precision = cfg.precision if cfg.precision is not None else req["precision"]
    kind = req["reduction"]
    verdicts: List[dict] = []
    lines: List[str] = []

    if kind == "sep-to-hbt":
        fuel = cfg.fuel if cfg.fuel is not None else (req["fuel"] or 12)
        red = run_sep_reduction(req["instance"], fuel=fuel, precision=precision,
                                chooser=chooser)
        decoded = sorted(red.decoded)
        result = {
            "built": {
                "functional": fmt_functional(red.instance.functional),
                "generators": [fmt_finvec(g) for g in red.instance.system.gens],
                "probes": [fmt_finvec(p) for p in red.instance.probes],
            },
            "extension": fmt_dualvector(red.extension.dual),
            "decoded": decoded,
            "probe_values": {str(n): fmt_rational(v) for n, v in sorted(red.values.items())},
        }
        lines.append(f"B={decoded}")
        verdicts.append(_verdict("separates", True, red.separates, red.separates))
    elif kind == "cc-to-hbt1":
        fuel = cfg.fuel if cfg.fuel is not None else req["fuel"]
        red = run_cc_reduction(req["instance"], fuel=fuel, precision=precision,
                               chooser=chooser)
        result = {
            "built": {
                "functional": fmt_functional(red.instance.functional),
                "generators": [fmt_finvec(g) for g in red.instance.system.gens],
            },
            "extension": {
                "probe": fmt_finvec(red.extension.probe),
                "bounds": [fmt_rational(red.extension.bounds.lo),
                           fmt_rational(red.extension.bounds.hi)],
                "chosen": fmt_rational(red.extension.value_on_probe()),
            },
            "decoded": fmt_rational(red.decoded),
        }
        lines.append(f"y={render_value(red.decoded)}")
        verdicts.append(
            _verdict("a_n <= y <= b_n at every stage", True, red.in_all_stages,
                     red.in_all_stages)
        )
        verdicts.append(
            _verdict("dual witness |w_n1| <= 1", True, red.witness_valid,
                     red.witness_valid)
        )
    else:
        red = run_llpo_reduction(req["r"])
        result = {
            "built": {
                "x": fmt_finvec(red.instance.x),
                "functional": fmt_functional(red.instance.functional),
            },
            "extension": fmt_dualvector(red.dual),
            "answer": red.answer,
        }
        lines.append(f"answer={red.answer}")
        lines.append(
            f"w=({fmt_rational(red.dual.coord(0))}, {fmt_rational(red.dual.coord(1))})"
        )
        verdicts.append(
            _verdict("answer names a true disjunct", True, red.consistent,
                     red.consistent)
        )

    ok = all(v["ok"] for v in verdicts)
    report = {
        "command": "reduce",
        "instance": cfg.instance_path,
        "reduction": kind,
        "chooser": chooser_name,
        "result": result,
        "verdicts": verdicts,
        "ok": ok,
        "lines": lines,
    }
    _emit(report, cfg.output_format, out)
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_verify(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    names = [cfg.suite] if cfg.suite else None
    try:
        results = run_suites(names, seed=cfg.seed)
    except KeyError as exc:
        raise SchemaError(str(exc)) from exc
    all_ok = all(r.passed for r in results)
    if cfg.output_format == "json":
        payload = {
            "command": "verify",
            "seed": cfg.seed,
            "suites": [
                {
                    "suite": r.suite,
                    "checks": r.checks,
                    "failures": r.failures,
                    "elapsed_s": round(r.elapsed, 3),
                    "ok": r.passed,
                }
                for r in results
            ],
            "ok": all_ok,
        }
        print(json.dumps(payload, indent=2), file=out)
    elif cfg.output_format == "csv":
        print("suite,instance-id,check,expected,got,verdict", file=out)
        for r in results:
            print(f"{r.suite},summary,checks={r.checks},,,"
                  f"{'pass' if r.passed else 'fail'}", file=out)
            for f in r.failures:
                row = [f["suite"], f["instance"], f["check"], f["expected"],
                       f["got"], "fail"]
                print(",".join(item.replace(",", ";") for item in row), file=out)
    else:
        for r in results:
            mark = "PASS" if r.passed else "FAIL"
            print(f"{mark} {r.suite}: {r.checks} checks in {r.elapsed:.1f}s", file=out)
            for f in r.failures[:10]:
                print(f"  FAIL {f['instance']} {f['check']}: expected"
                      f" {f['expected']}, got {f['got']}", file=out)
    return EXIT_OK if all_ok else EXIT_INVARIANT


def cmd_demo(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    from .oracles import Enumeration, SEPInstance, cc_instance_from_stages

    print("separation -> extension -> separating set", file=out)
    sep = SEPInstance(Enumeration((0, 3)), Enumeration((1, 4)))
    red = run_sep_reduction(sep, fuel=6, precision=20)
    print(f"  p enumerates {{0, 3}}, q enumerates {{1, 4}}", file=out)
    print(f"  decoded B = {sorted(red.decoded)}  (separates: {red.separates})", file=out)

    print("nested intervals -> one-step extension -> chosen point", file=out)
    cc = cc_instance_from_stages([(Fraction(0), Fraction(1)),
                                  (Fraction(1, 4), Fraction(3, 4))], 1)
    red = run_cc_reduction(cc)
    print(f"  intervals [0,1] then [1/4,3/4], midpoint chooser", file=out)
    print(f"  decoded y = {render_value(red.decoded)}", file=out)

    print("sign of r -> two-dimensional extension -> answer", file=out)
    for r in (Fraction(1, 2), Fraction(-1, 2)):
        red = run_llpo_reduction(r)
        print(
            f"  r={fmt_rational(r)}: w=({fmt_rational(red.dual.coord(0))},"
            f" {fmt_rational(red.dual.coord(1))}) -> answer {red.answer}",
            file=out,
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="normext",
        description="exact norm-preserving extension engines and reductions",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, needs_instance in (
        ("extend", True), ("reduce", True), ("verify", False), ("demo", False)
    ):
        p = sub.add_parser(name)
        if needs_instance:
            p.add_argument("--instance", required=True, help="JSON instance file")
        p.add_argument("--precision", type=int, default=None)
        p.add_argument("--fuel", type=int, default=None)
        p.add_argument("--chooser", choices=("mid", "left", "right"), default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        if name == "verify":
            p.add_argument("--suite", choices=sorted(SUITES), default=None)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        instance_path=getattr(args, "instance", None),
        precision=args.precision,
        fuel=args.fuel,
        chooser=args.chooser,
        output_format=args.format,
        seed=args.seed,
        suite=getattr(args, "suite", None),
    )
    handlers = {
        "extend": cmd_extend,
        "reduce": cmd_reduce,
        "verify": cmd_verify,
        "demo": cmd_demo,
    }
    try:
        cfg.validate()
        return handlers[cfg.command](cfg)
    except SchemaError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FuelError as exc:
        print(f"fuel insufficient: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PromiseViolationError, NoStabilizationError, NormViolationError) as exc:
        print(f"promise violation: {exc}", file=sys.stderr)
        return EXIT_PROMISE
    except LoopStepError as exc:
        cause = exc.__cause__
        if isinstance(cause, (PromiseViolationError, NormViolationError)):
            print(f"promise violation: {exc}", file=sys.stderr)
            return EXIT_PROMISE
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
