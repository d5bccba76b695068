"""Command-line front end.

Exit codes: 0 success or match, 1 mathematical mismatch, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .basis import WeightCharacter, pairing, parse_weight
from .exactfield import CyclotomicRational
from .newton import (
    char_series,
    hodge_polygon,
    newton_polygon,
    np_of_blocks,
    serre_coefficients,
)
from .recipe import predict_slopes, verify_theorem
from .reference import reproduce_example
from .upmatrix import GeneratorConstants, block_diagonal, build_truncation, valuation_matrix


class UsageError(Exception):
    pass


def _weight(text: str) -> WeightCharacter:
    try:
        wc = parse_weight(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if wc.n1 % 2 == 0 or wc.n2 % 2 == 0:
        raise argparse.ArgumentTypeError(f"weight {text!r} needs odd n1 and n2")
    return wc


def _even_size(text: str) -> int:
    n = int(text)
    if n < 2 or n % 2:
        raise argparse.ArgumentTypeError(f"size must be even and >= 2, got {text}")
    return n


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def _gc(args) -> GeneratorConstants:
    if getattr(args, "d2", None) is None:
        return GeneratorConstants()
    try:
        return GeneratorConstants.with_d2(CyclotomicRational.coerce(args.d2))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --d2 {args.d2!r}: {exc}") from None


def _fault(text: str):
    r, c = (int(x) for x in text.split(","))
    return r, c


def cmd_basis(args, out) -> int:
    bp = pairing(args.weight, args.pairs)
    json.dump(bp.to_json(args.weight), out)
    out.write("\n")
    return 0


def cmd_matrix(args, out) -> int:
    U = build_truncation(args.weight, args.size, _gc(args))
    if args.valuations:
        cells = [[str(v) for v in row] for row in valuation_matrix(U)]
    else:
        cells = [[str(x) for x in row] for row in U.entries]
    if args.format == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(cells)
        out.write(buf.getvalue())
    elif args.format == "json":
        json.dump(
            {
                "weight": [args.weight.n1, args.weight.n2],
                "size": args.size,
                "basis": [list(m) for m in U.ordered],
                "valuations" if args.valuations else "entries": cells,
            },
            out,
        )
        out.write("\n")
    else:
        width = max(len(c) for row in cells for c in row)
        for row in cells:
            out.write(" ".join(c.rjust(width) for c in row) + "\n")
    return 0


def _slopes_for(args):
    gc = _gc(args)
    if args.method == "charpoly":
        from .cache import cached_char_series

        cs = cached_char_series(args.weight, args.size, gc, args.cache_dir)
        return newton_polygon(cs).slopes
    U = build_truncation(args.weight, args.size, gc)
    if args.method == "blocks":
        return np_of_blocks(block_diagonal(U))
    try:
        return newton_polygon(serre_coefficients(U, args.size)).slopes
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_slopes(args, out) -> int:
    sm = _slopes_for(args)
    if args.format == "json":
        json.dump({"weight": [args.weight.n1, args.weight.n2], "size": args.size,
                   "method": args.method, "slopes": sm.to_json()}, out)
        out.write("\n")
    else:
        out.write(sm.pretty() + "\n")
    return 0


def cmd_predict(args, out) -> int:
    pred = predict_slopes(args.weight, args.pairs)
    if args.format == "json":
        json.dump(pred.to_json(), out)
        out.write("\n")
    else:
        for lead, part, sm in pred.per_pair:
            out.write(f"({lead[0]},{lead[1]}) {part.value}: {sm.pretty()}\n")
        out.write(pred.total.pretty() + "\n")
    return 0


def cmd_verify(args, out) -> int:
    report = verify_theorem(args.weight, args.size)
    if args.format == "json":
        data = report.to_json()
        data["per_pair"] = predict_slopes(args.weight, args.size // 2).to_json()["pairs"]
        json.dump(data, out)
        out.write("\n")
    else:
        out.write(f"weight {args.weight}, N={args.size}, stable below {report.cutoff}\n")
        out.write(f"  computed  {report.computed_stable.pretty()}\n")
        out.write(f"  blocks    {report.blocks_stable.pretty()}\n")
        out.write(f"  predicted {report.predicted_stable.pretty()}\n")
        out.write(f"  {'MATCH' if report.match else 'MISMATCH'}; "
                  f"{len(report.invariant_failures)} invariant failures\n")
    return 0 if report.ok else 1


def cmd_hodge(args, out) -> int:
    U = build_truncation(args.weight, args.size, _gc(args))
    hp = hodge_polygon(U, args.convention)
    npoly = newton_polygon(char_series(U))
    width = min(hp.width, npoly.width)
    rows = [(k, hp.ordinate(k), npoly.ordinate(k)) for k in range(width + 1)]
    touching = [k for k, h, n in rows if h == n]
    above = [k for k, h, n in rows if h > n]
    if args.format == "json":
        json.dump({
            "weight": [args.weight.n1, args.weight.n2],
            "size": args.size,
            "convention": args.convention,
            "hodge": [str(h) for _, h, _ in rows],
            "newton": [str(n) for _, _, n in rows],
            "touching": touching,
            "skipped_rows": list(hp.skipped_rows),
        }, out)
        out.write("\n")
    else:
        for k, h, n in rows:
            out.write(f"{k:3d} {str(h):>8} {str(n):>8}\n")
        out.write(f"touching at {touching}\n")
    return 1 if above else 0


def cmd_reproduce(args, out) -> int:
    code, lines = reproduce_example(_gc(args), args.inject_fault)
    for line in lines:
        out.write(line + "\n")
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slopeforge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_weight(p):
        p.add_argument("--weight", type=_weight, required=True, help="odd n1,n2")

    def add_d2(p):
        p.add_argument("--d2", default=None, help="unit value of d2 (rational or a+b*z)")

    p = sub.add_parser("basis", help="leader/partner pairs as JSON")
    add_weight(p)
    p.add_argument("--pairs", type=_positive, default=5)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("matrix", help="exact truncation or its valuations")
    add_weight(p)
    p.add_argument("--size", type=_even_size, required=True)
    p.add_argument("--valuations", action="store_true")
    add_d2(p)
    p.add_argument("--format", choices=("csv", "json", "pretty"), default="pretty")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("slopes", help="Newton polygon slopes of a truncation")
    add_weight(p)
    p.add_argument("--size", type=_even_size, required=True)
    p.add_argument("--method", choices=("charpoly", "blocks", "serre"), default="charpoly")
    add_d2(p)
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--format", choices=("json", "pretty"), default="pretty")
    p.set_defaults(func=cmd_slopes)

    p = sub.add_parser("predict", help="slopes predicted from the classical table")
    add_weight(p)
    p.add_argument("--pairs", type=_positive, required=True)
    p.add_argument("--format", choices=("json", "pretty"), default="pretty")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("verify", help="compare computed and predicted stable slopes")
    add_weight(p)
    p.add_argument("--size", type=_even_size, required=True)
    p.add_argument("--format", choices=("json", "pretty"), default="pretty")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hodge", help="Hodge versus Newton polygon")
    add_weight(p)
    p.add_argument("--size", type=_even_size, required=True)
    p.add_argument("--convention", choices=("rowmin", "smith"), default="rowmin")
    add_d2(p)
    p.add_argument("--format", choices=("json", "pretty"), default="pretty")
    p.set_defaults(func=cmd_hodge)

    p = sub.add_parser("reproduce-example", help="rebuild the 10x10 [1,1] example")
    add_d2(p)
    p.add_argument("--inject-fault", type=_fault, default=None, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"slopeforge: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
