"""Command-line front end.

Exit codes: 0 ok, 2 usage or input error, 3 cross-validation failure,
4 capacity exceeded. ``DYADIC_BESOV_PRECISION`` overrides the default
float precision (64 bits).
"""
import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import _mp
from .besov import INF, BesovParams, besov_norm
from .counterexample import (
    CounterexampleConfig,
    EpsilonSpec,
    build_blocks,
    cross_validate,
    materialize,
    sweep,
    write_rows,
)
from .dyadic import MAX_RESOLUTION, decompose, reconstruct
from .errors import CapacityError, DomainError, ValidationError
from .padic import INFINITY, cell_of, digits, padic_distance, padic_norm, valuation
from .serialization import (
    blocks_from_json,
    blocks_to_json,
    dumps,
    function_from_json,
    function_to_json,
    load_json,
    save_json,
)

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_CAPACITY = 0, 2, 3, 4
PRECISION_ENV = "DYADIC_BESOV_PRECISION"


class UsageError(Exception):
    pass


def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational like 3/8, got {text!r}")


def _index(text):
    if text.strip().lower() == "inf":
        return INF
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer or 'inf', got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("index must be >= 1")
    return v


def _range(text):
    try:
        lo, _, hi = text.partition(":")
        lo, hi = int(lo), int(hi or lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return range(lo, hi + 1)


def _default_precision():
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return _mp.DEFAULT_PRECISION
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{PRECISION_ENV} must be an integer, got {raw!r}")


def cmd_padic(args, out):
    p = args.prime
    if args.valuation is not None:
        g = valuation(args.valuation, p)
        print("inf" if g == INFINITY else g, file=out)
    elif args.norm is not None:
        print(padic_norm(args.norm, p), file=out)
    elif args.distance is not None:
        print(padic_distance(args.distance[0], args.distance[1], p), file=out)
    elif args.digits is not None:
        d = digits(args.digits, p, args.count)
        print(f"gamma={d.valuation} digits={','.join(map(str, d.digits))}", file=out)
    else:
        c = cell_of(args.cell, args.level)
        print(f"level={c.level} index={c.index}", file=out)


def cmd_norms(args, out):
    f = function_from_json(load_json(args.input))
    report = besov_norm(f, BesovParams(args.s, args.p, args.q, args.homogeneous), args.precision)
    if args.format == "json":
        out.write(report.dumps() + "\n")
    else:
        d = report.to_json()
        out.write("exact,exact_power,float,path\n")
        out.write(f"{d['exact'] or ''},{d['exact_power']},{d['float']},{d['path']}\n")


def cmd_decompose(args, out):
    f = function_from_json(load_json(args.input))
    obj = blocks_to_json(decompose(f))
    if args.output:
        save_json(obj, args.output)
    else:
        out.write(dumps(obj))


def cmd_reconstruct(args, out):
    f = reconstruct(blocks_from_json(load_json(args.input)))
    obj = function_to_json(f)
    if args.output:
        save_json(obj, args.output)
    else:
        out.write(dumps(obj))


def cmd_counterexample(args, out):
    eps = EpsilonSpec(args.exponent, args.precision)
    config = CounterexampleConfig(args.j0, args.q, args.alpha, eps)
    if args.materialize and config.j1 + 1 > MAX_RESOLUTION:
        raise CapacityError(
            f"materialization needs resolution {config.j1 + 1} > {MAX_RESOLUTION}; "
            "drop --materialize and use the closed-form row"
        )
    report = cross_validate(config, args.precision) if args.cross_validate else None
    rows = sweep([args.j0], config.q, eps, config.alpha, args.precision)
    if args.format == "json":
        obj = rows[0].to_json()
        if report is not None:
            obj["cross_validation"] = report.to_json()
        out.write(json.dumps(obj, indent=2) + "\n")
    else:
        out.write(write_rows(rows, "csv"))
    if report is not None:
        print("OK", file=sys.stderr)
    if args.materialize:
        save_json(function_to_json(materialize(build_blocks(config))), args.materialize)


def cmd_sweep(args, out):
    rows = sweep(args.j0, args.q, EpsilonSpec(args.exponent, args.precision), args.alpha, args.precision)
    text = write_rows(rows, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


def build_parser(default_precision=_mp.DEFAULT_PRECISION):
    parser = argparse.ArgumentParser(
        prog="dyadic-besov",
        description="Exact harmonic analysis on the 2-adic integers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default="csv"):
        sp.add_argument("--precision", type=int, default=default_precision,
                        help=f"float precision in bits (default {default_precision}; env {PRECISION_ENV})")
        sp.add_argument("--format", choices=("csv", "json"), default=fmt_default,
                        help=f"output format (default {fmt_default})")

    sp = sub.add_parser("padic", help="p-adic valuation, norm, distance, digits, cells")
    sp.add_argument("--prime", type=int, default=2, help="prime p (default 2)")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--valuation", type=_rational, metavar="X")
    g.add_argument("--norm", type=_rational, metavar="X")
    g.add_argument("--distance", type=_rational, nargs=2, metavar=("X", "Y"))
    g.add_argument("--digits", type=_rational, metavar="X")
    g.add_argument("--cell", type=_rational, metavar="X", help="cell of X at --level (p = 2)")
    sp.add_argument("--count", type=int, default=8, help="number of digits (default 8)")
    sp.add_argument("--level", type=int, default=0, help="cell level for --cell (default 0)")
    sp.set_defaults(func=cmd_padic)

    sp = sub.add_parser("norms", help="Besov norm of a function file")
    sp.add_argument("--input", required=True)
    sp.add_argument("--s", type=_rational, required=True)
    sp.add_argument("--p", type=_index, required=True)
    sp.add_argument("--q", type=_index, required=True)
    sp.add_argument("--homogeneous", action="store_true")
    common(sp, "json")
    sp.set_defaults(func=cmd_norms)

    sp = sub.add_parser("decompose", help="write the Littlewood-Paley blocks of a function file")
    sp.add_argument("--input", required=True)
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("reconstruct", help="rebuild a function file from a block file")
    sp.add_argument("--input", required=True)
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_reconstruct)

    sp = sub.add_parser("counterexample", help="one member of the counterexample family")
    sp.add_argument("--j0", type=int, required=True)
    sp.add_argument("--q", type=_index, default=INF, help="integer > 2 or inf (default inf)")
    sp.add_argument("--exponent", type=_rational, default=Fraction(0), help="decay a of eps_j (default 0)")
    sp.add_argument("--alpha", type=_rational, default=Fraction(1), help="default 1")
    sp.add_argument("--materialize", metavar="OUT.json", help="write the dense function file")
    sp.add_argument("--cross-validate", action="store_true", help="check closed forms against the dense path")
    common(sp)
    sp.set_defaults(func=cmd_counterexample)

    sp = sub.add_parser("sweep", help="closed-form rows over a range of j0")
    sp.add_argument("--j0", type=_range, required=True, metavar="LO:HI")
    sp.add_argument("--q", type=_index, default=INF)
    sp.add_argument("--exponent", type=_rational, default=Fraction(0))
    sp.add_argument("--alpha", type=_rational, default=Fraction(1))
    sp.add_argument("--output")
    common(sp)
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        parser = build_parser(_default_precision())
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        if getattr(args, "precision", _mp.DEFAULT_PRECISION) < _mp.MIN_PRECISION:
            raise ValueError(f"precision must be at least {_mp.MIN_PRECISION} bits")
        args.func(args, out)
    except ValidationError as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ValueError, TypeError, DomainError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
