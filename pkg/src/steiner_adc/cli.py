"""Command-line interface.

Exit codes: 0 pass, 1 fail, 2 inconclusive (search budget or cap hit),
64 usage error, 65 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import constructions, identities, io, nerve, shapes
from .core import StructureError, validate_complex
from .steiner_check import (DEFAULT_BUDGET, SearchBudgetExceeded, is_total_order,
                            loop_witness, unital)

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_DATAERR = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class _Stdin:
    used = False


def _read_adc(path):
    if path == "-":
        if _Stdin.used:
            raise UsageError("stdin ('-') can only be read once")
        _Stdin.used = True
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as err:
            raise io.ParseError(f"cannot read {path}: {err.strerror}", path) from None
    return io.parse_adc(text)


def _emit_json(obj):
    sys.stdout.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def _cmd_shape(args):
    kind = args.kind
    if kind in ("unit", "two-loop"):
        if args.arg is not None:
            raise UsageError(f"shape {kind} takes no argument")
        A = shapes.unit() if kind == "unit" else shapes.two_loop()
    elif kind == "theta":
        if args.arg is None:
            raise UsageError("shape theta needs an expression")
        A = shapes.theta(args.arg)
    else:
        if args.arg is None:
            raise UsageError(f"shape {kind} needs a dimension")
        try:
            n = int(args.arg)
        except ValueError:
            raise UsageError(f"dimension must be an integer, got {args.arg!r}") from None
        if kind == "globe" and n > shapes.MAX_SIZE:
            raise ValueError(f"globe dimension must be in [0, {shapes.MAX_SIZE}]")
        A = {"cube": shapes.cube, "oriental": shapes.oriental, "globe": shapes.globe}[kind](n)
    sys.stdout.write(io.serialize_adc(A))
    return EXIT_PASS


def _cmd_op(args):
    op = args.op
    if op == "suspend":
        if len(args.inputs) != 1:
            raise UsageError("op suspend takes one complex")
        A = constructions.suspend(_read_adc(args.inputs[0]))
    elif op == "dual":
        if len(args.inputs) != 1 or args.tau is None:
            raise UsageError("op dual takes --tau and one complex")
        tau = constructions.DualitySelector.parse(args.tau)
        A = constructions.dual(_read_adc(args.inputs[0]), tau)
    else:
        if len(args.inputs) != 2:
            raise UsageError(f"op {op} takes two complexes")
        A, B = (_read_adc(p) for p in args.inputs)
        A = constructions.tensor(A, B) if op == "tensor" else constructions.wedge(A, B)
    sys.stdout.write(io.serialize_adc(A))
    return EXIT_PASS


def check_report(A) -> dict:
    bad = validate_complex(A)
    un = unital(A)
    witness = loop_witness(A)
    report = {
        "complex_ok": not bad,
        "unital": not un,
        "loop_free": witness is None,
        "total_order": is_total_order(A) if witness is None else None,
        "strong_steiner": not bad and not un and witness is None,
        "violations": [str(v) for v in bad + un],
        "loop_witness": witness,
    }
    return report


def _cmd_check(args):
    report = check_report(_read_adc(args.input))
    _emit_json(report)
    return EXIT_PASS if report["strong_steiner"] else EXIT_FAIL


def _chain_json(x):
    return {lab: c for lab, c in x.items()}


def _cmd_nerve(args):
    A = _read_adc(args.input)
    if args.max_dim < 0 or args.cap < 0:
        raise UsageError("--max-dim and --cap must be non-negative")
    E = nerve.enumerate_cells(A, args.max_dim, args.cap, budget=args.budget)
    out = {"counts": list(E.counts), "truncated": E.truncated, "cap": E.cap}
    if args.list:
        out["cells"] = [{"dim": c.dim,
                         "table": [[_chain_json(m), _chain_json(p)] for m, p in c.table]}
                        for c in E.all_cells()]
    _emit_json(out)
    return EXIT_INCONCLUSIVE if E.truncated else EXIT_PASS


def _int_params(params, count, suite):
    if len(params) != count:
        raise UsageError(f"verify {suite} takes {count} integer parameter(s)")
    try:
        return [int(p) for p in params]
    except ValueError:
        raise UsageError(f"verify {suite}: parameters must be integers") from None


def _adc_params(params, count, suite):
    if len(params) != count:
        raise UsageError(f"verify {suite} takes {count} complex file(s)")
    return [_read_adc(p) for p in params]


def _ranged(suite, value, lo, hi):
    if not lo <= value <= hi:
        raise UsageError(f"verify {suite}: parameter {value} outside [{lo}, {hi}]")
    return value


SUITES = {
    "cube-order": lambda p, b: identities.verify_cube_order(
        _ranged("cube-order", *_int_params(p, 1, "cube-order"), 1, 6)),
    "cube-aut": lambda p, b: identities.verify_cube_aut_trivial(
        _ranged("cube-aut", *_int_params(p, 1, "cube-aut"), 1, 6), b),
    "aut-trivial": lambda p, b: identities.verify_aut_trivial(
        *_adc_params(p, 1, "aut-trivial"), b),
    "oriental-cube-retract": lambda p, b: identities.verify_oriental_cube_retract(
        _ranged("oriental-cube-retract", *_int_params(p, 1, "oriental-cube-retract"), 1, 6)),
    "wedge-retract": lambda p, b: identities.verify_wedge_retract(
        *_int_params(p, 2, "wedge-retract")),
    "cone-quotient": lambda p, b: identities.verify_cone_quotient(
        _ranged("cone-quotient", *_int_params(p, 1, "cone-quotient"), 1, 5)),
    "suspension-quotient": lambda p, b: identities.verify_suspension_quotient(
        _ranged("suspension-quotient", *_int_params(p, 1, "suspension-quotient"), 1, 5)),
    "sigma-pushout": lambda p, b: identities.verify_sigma_pushout(
        *_adc_params(p, 1, "sigma-pushout"), b),
    "gray-cylinder": lambda p, b: identities.verify_gray_cylinder(
        *_adc_params(p, 1, "gray-cylinder"), b),
    "dual-monoidal": lambda p, b: identities.verify_dual_monoidal(
        *_adc_params(p, 2, "dual-monoidal"), b),
    "nerve-globe": lambda p, b: identities.verify_nerve_globe(
        _ranged("nerve-globe", *_int_params(p, 1, "nerve-globe"), 0, 4)),
}


def _cmd_verify(args):
    budget = args.budget if args.budget is not None else DEFAULT_BUDGET
    if args.suite == "battery":
        if args.params:
            raise UsageError("verify battery takes no parameters")
        caught = identities.mutation_battery()
        _emit_json({"suite": "battery", "mutations": caught})
        return EXIT_PASS if all(caught.values()) else EXIT_FAIL
    run = SUITES.get(args.suite)
    if run is None:
        raise UsageError(f"unknown suite {args.suite!r}; choose from "
                         + ", ".join(sorted(SUITES) + ["battery"]))
    if args.suite == "wedge-retract":
        n, m = _int_params(args.params, 2, "wedge-retract")
        if n < 1 or m < 1 or n + m > 7:
            raise UsageError("verify wedge-retract needs n, m >= 1 and n + m <= 7")
    rep = run(args.params, budget)
    _emit_json(rep.to_dict())
    return {identities.PASS: EXIT_PASS, identities.FAIL: EXIT_FAIL}.get(rep.status,
                                                                       EXIT_INCONCLUSIVE)


def _cmd_export(args):
    sys.stdout.write(io.export_dot(_read_adc(args.input)))
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="steiner-adc", description="Strong Steiner complexes and their nerves.")
    p.add_argument("--budget", type=int, default=None,
                   help="node budget for searches and cell budget for nerve enumeration")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("shape", help="emit a canonical shape as JSON")
    s.add_argument("kind", choices=["cube", "oriental", "globe", "theta", "unit", "two-loop"])
    s.add_argument("arg", nargs="?")
    s.set_defaults(func=_cmd_shape)

    s = sub.add_parser("op", help="tensor, wedge, suspend or dualise complexes")
    s.add_argument("op", choices=["tensor", "wedge", "suspend", "dual"])
    s.add_argument("--tau", help="odd, even, total or a bitmask over degrees")
    s.add_argument("inputs", nargs="+")
    s.set_defaults(func=_cmd_op)

    s = sub.add_parser("check", help="report the strong Steiner conditions")
    s.add_argument("input")
    s.set_defaults(func=_cmd_check)

    s = sub.add_parser("nerve", help="count (and list) nerve cells")
    s.add_argument("input")
    s.add_argument("--max-dim", type=int, required=True)
    s.add_argument("--cap", type=int, default=8)
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=_cmd_nerve)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("suite")
    s.add_argument("params", nargs="*")
    s.set_defaults(func=_cmd_verify)

    s = sub.add_parser("export", help="export a complex in another format")
    s.add_argument("format", choices=["dot"])
    s.add_argument("input")
    s.set_defaults(func=_cmd_export)
    return p


def main(argv=None) -> int:
    _Stdin.used = False
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("steiner-adc: a subcommand is required")
        if args.budget is not None and args.budget < 1:
            raise UsageError("--budget must be positive")
        return args.func(args)
    except UsageError as err:
        print(err, file=sys.stderr)
        return EXIT_USAGE
    except (io.ParseError, shapes.ThetaSyntaxError, StructureError, ValueError) as err:
        print(f"steiner-adc: bad input: {err}", file=sys.stderr)
        return EXIT_DATAERR
    except SearchBudgetExceeded as err:
        print(f"steiner-adc: {err}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


def run():
    sys.exit(main())
