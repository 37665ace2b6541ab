"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error,
3 interval budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .classify import (
    DiffSpec,
    classify,
    classify_symmetric,
    conditions,
    difference_digits,
    kraft_classify,
    lr_blocks,
)
from .digits import DigitSet, delta, diam, interval_ratio, is_full_interval, minkowski_diff, minkowski_sum
from .errors import CantorvalError, DepthTooLarge
from .geometry import cover, encode_number, member
from .render import RenderSpec, render_svg
from .verify import sweep

EXIT_OK, EXIT_INCONSISTENT, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_digits(text: str) -> list[int]:
    """``"-4,0,2"`` to ``[-4, 0, 2]``; whitespace is rejected."""
    if not text or any(c.isspace() for c in text):
        raise argparse.ArgumentTypeError(f"malformed digit list {text!r}")
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed digit list {text!r}") from None


def _label(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _digit_set(args) -> DigitSet:
    a = DigitSet(args.p, args.digits)
    if not a.in_range:
        raise CantorvalError(f"digits of {a} must lie strictly between -{args.p} and {args.p}")
    return a


def _interval_json(pairs, p: int) -> list[list[dict]]:
    return [[encode_number(lo, p), encode_number(hi, p)] for lo, hi in pairs]


def _interval_text(pairs, bracket: str) -> str:
    if not pairs:
        return "(none)"
    o, c = bracket
    return " u ".join(f"{o}{_label(lo)}, {_label(hi)}{c}" for lo, hi in pairs)


def cmd_classify(args) -> int:
    spec = DiffSpec(args.l1, args.r1, args.l2, args.r2, args.p)
    t = classify(spec)
    cond = conditions(spec)
    digits = difference_digits(spec)
    left, right = lr_blocks(spec)
    payload = {
        "spec": dict(zip(("l1", "r1", "l2", "r2", "p"), spec.as_tuple())),
        "type": t.value,
        "conditions": cond.as_dict(),
        "digits": list(digits.digits),
        "blocks": {"L": [left.lo, left.hi], "R": [right.lo, right.hi]},
    }
    flags = " ".join(f"{k}={int(v)}" for k, v in cond.as_dict().items())
    _emit(args, payload, f"{t.value}\n  conditions: {flags}\n  digits: {digits}")
    return EXIT_OK


def cmd_classify_sym(args) -> int:
    t = classify_symmetric(args.l1, args.l2, args.p)
    _emit(args, {"l1": args.l1, "l2": args.l2, "p": args.p, "type": t.value}, t.value)
    return EXIT_OK


def cmd_kraft(args) -> int:
    t = kraft_classify(args.l, args.p)
    digits = difference_digits((args.l, args.l, args.l, args.l, args.p))
    payload = {"l": args.l, "p": args.p, "type": t.value, "digits": list(digits.digits)}
    _emit(args, payload, f"{t.value}\n  digits: {digits}")
    return EXIT_OK


def cmd_digits(args) -> int:
    a = DigitSet(args.p, args.digits)
    if args.minus is not None:
        a = minkowski_diff(a, DigitSet(args.p, args.minus))
    elif args.plus is not None:
        a = minkowski_sum(a, DigitSet(args.p, args.plus))
    payload = {"p": a.base, "digits": list(a.digits), "diam": diam(a)}
    lines = [f"digits: {a}", f"diam: {diam(a)}"]
    if len(a) > 1:
        ratio = interval_ratio(a)
        payload.update(delta=delta(a), ratio=_label(ratio), full_interval=is_full_interval(a))
        lines += [f"delta: {delta(a)}", f"ratio: {_label(ratio)}", f"full interval: {is_full_interval(a)}"]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_cover(args) -> int:
    a = _digit_set(args)
    pairs = cover(a, args.depth).pairs()
    _emit(args, _interval_json(pairs, a.base), _interval_text(pairs, "[]"))
    return EXIT_OK


def cmd_gaps(args) -> int:
    a = _digit_set(args)
    pairs = cover(a, args.depth).gaps()
    _emit(args, _interval_json(pairs, a.base), _interval_text(pairs, "()"))
    return EXIT_OK


def cmd_member(args) -> int:
    if args.den == 0:
        raise CantorvalError("denominator must be nonzero")
    a = _digit_set(args)
    m = member(Fraction(args.num, args.den), a)
    d = m.as_dict()
    if m:
        text = f"In  prefix={list(m.prefix)} cycle={list(m.cycle)}"
    else:
        text = f"Out  exclusion depth {m.exclusion_depth} ({m.reason})"
    _emit(args, d, text)
    return EXIT_OK


def cmd_sweep(args) -> int:
    report = sweep(
        args.p_max,
        base_depth=args.base_depth,
        probe_depth=args.probe_depth,
        verify=args.verify,
        workers=args.workers,
    )
    summary = report.summary()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            for row in report.rows:
                fh.write(json.dumps(row.as_dict()) + "\n")
            fh.write(json.dumps(summary) + "\n")
    if args.json:
        if not args.out:
            for row in report.rows:
                print(json.dumps(row.as_dict()))
        print(json.dumps(summary))
    else:
        tallies = ", ".join(f"{k} {v}" for k, v in summary["tallies"].items())
        print(f"{summary['rows']} specs: {tallies}")
        print(f"inconsistent {summary['inconsistent']}, skipped {summary['skipped']}")
        for row in report.inconsistent:
            print(f"  inconsistent: {row.spec.as_tuple()} predicted {row.predicted.value}")
    return EXIT_OK if report.ok else EXIT_INCONSISTENT


def cmd_render(args) -> int:
    a = _digit_set(args)
    svg = render_svg(RenderSpec(a, args.steps, width=args.width))
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
    _emit(args, {"out": args.out, "steps": args.steps}, f"wrote {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cantorval", description="Topology of differences of base-p Cantor sets.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    # --json is accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="type of C(l1,r1,p) - C(l2,r2,p)")
    for name in ("l1", "r1", "l2", "r2", "p"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("classify-sym", parents=[common], help="type of C(l1,p) - C(l2,p) for symmetric sets")
    for name in ("l1", "l2", "p"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_classify_sym)

    p = sub.add_parser("kraft", parents=[common], help="type of C(l,p) - C(l,p) from l/p")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_kraft)

    p = sub.add_parser("digits", parents=[common], help="digit-set algebra and the interval test")
    p.add_argument("--digits", type=parse_digits, required=True)
    p.add_argument("--p", type=int, required=True)
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--minus", type=parse_digits)
    grp.add_argument("--plus", type=parse_digits)
    p.set_defaults(func=cmd_digits)

    for name, func, text in (("cover", cmd_cover, "depth-n cover"), ("gaps", cmd_gaps, "gaps of the depth-n cover")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--digits", type=parse_digits, required=True)
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--depth", type=int, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("member", parents=[common], help="decide num/den in A_p")
    p.add_argument("--num", type=int, required=True)
    p.add_argument("--den", type=int, required=True)
    p.add_argument("--digits", type=parse_digits, required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("sweep", parents=[common], help="classify every spec up to p-max")
    p.add_argument("--p-max", type=int, required=True)
    p.add_argument("--base-depth", type=int, default=3)
    p.add_argument("--probe-depth", type=int, default=6)
    p.add_argument("--verify", action="store_true", help="check each type against cover signatures")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", help="JSONL output path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("render", parents=[common], help="SVG of the first construction steps")
    p.add_argument("--digits", type=parse_digits, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--width", type=int, default=1000)
    p.set_defaults(func=cmd_render)
    return parser


_DIGIT_FLAGS = ("--digits", "--minus", "--plus")


def _glue_digit_lists(argv: list[str]) -> list[str]:
    # argparse reads "-4,0,2" as an option; bind it to its flag instead
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _DIGIT_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_digit_lists(argv))
    try:
        return args.func(args)
    except DepthTooLarge as exc:
        print(f"cantorval: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CantorvalError, ValueError) as exc:
        print(f"cantorval: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
