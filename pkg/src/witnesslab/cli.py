"""Command-line front end.

Exit status: 0 on success, 1 when a verification case fails, 2 on bad
usage or unreadable input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import complexity, witnesses
from .automata import AutomatonError, Dfa, complement, determinize
from .minimize import minimize_refine
from .serialize import from_json, to_dot, to_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SPEC_HELP = (
    "witness spec such as 'U[n=5;letters=abc;finals=4]' or 'V[n=5;letters=dcba]'. "
    "Keys: n (>=3), letters (2-4 letters in role order: cycle, transposition, "
    "singular, identity), finals (comma list, default n-1), trans=p,q and sing=r,s "
    "(dialect parameters)"
)


class UsageError(Exception):
    pass


def _range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi) if sep else int(lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(a, b + 1)


def load_operand(source: str):
    """A witness spec string, ``-`` for JSON on stdin, or a JSON file path."""
    text = source.strip()
    if text[:2] in ("U[", "V["):
        return witnesses.build_witness(witnesses.parse_spec(text))
    if text == "-":
        return from_json(sys.stdin.read())
    path = Path(source)
    if not path.is_file():
        raise UsageError(f"{source!r} is neither a witness spec nor a readable file")
    return from_json(path.read_text())


def cmd_build(args) -> int:
    d = witnesses.build_witness(witnesses.parse_spec(args.spec))
    sys.stdout.write(to_dot(d, args.spec) if args.dot else to_json(d))
    return EXIT_OK


def cmd_export(args) -> int:
    machine = load_operand(args.source)
    text = to_dot(machine) if args.format == "dot" else to_json(machine)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


APPLY_OPS = [k.value for k in complexity.OperationKind] + ["complement", "determinize", "minimize"]


def cmd_apply(args) -> int:
    left = load_operand(args.left)
    right = load_operand(args.right) if args.right else None
    if args.op in ("complement", "determinize", "minimize"):
        left = left if isinstance(left, Dfa) else determinize(left)
        result = {"complement": complement, "determinize": lambda d: d, "minimize": minimize_refine}[args.op](left)
    else:
        kind = complexity.OperationKind(args.op)
        if kind.unary and right is not None:
            raise UsageError(f"{args.op} takes one operand")
        if not kind.unary and right is None:
            raise UsageError(f"{args.op} takes two operands")
        result = complexity.construct(kind, left, right)
    print(f"constructed: {result.n} states ({type(result).__name__})", file=sys.stderr)
    if args.minimize:
        raw = result if isinstance(result, Dfa) else determinize(result)
        result = minimize_refine(raw)
        print(f"determinized: {raw.n} states; minimal: {result.n} states", file=sys.stderr)
    sys.stdout.write(to_json(result))
    return EXIT_OK


def cmd_verify(args) -> int:
    names = args.kinds or ([] if args.lemma_exception else ["all"])
    kinds = complexity.parse_kinds(names)
    report = complexity.verify_sweep(kinds, args.m_range, args.n_range, jobs=args.jobs)
    if args.lemma_exception:
        report.cases.extend(complexity.verify_lemma_exception().cases)
    print(report.to_table())
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            report.to_csv(fh)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_monoid(args) -> int:
    d = witnesses.build_witness(witnesses.parse_spec(args.spec))
    try:
        print(witnesses.transition_monoid_size(d, args.cap))
    except witnesses.MonoidCapExceeded as exc:
        print(f"exceeded cap {exc.cap}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="witnesslab", description="State complexity of witness languages.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a witness DFA", description=SPEC_HELP)
    p.add_argument("spec", help=SPEC_HELP)
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT instead of JSON")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("apply", help="apply an operation to one or two automata")
    p.add_argument("op", choices=APPLY_OPS, metavar="OP", help="one of: " + ", ".join(APPLY_OPS))
    p.add_argument("left", help="witness spec, JSON file, or - for stdin")
    p.add_argument("right", nargs="?", help="second operand for binary operations")
    p.add_argument("--minimize", action="store_true", help="determinize and minimize the result")
    p.set_defaults(func=cmd_apply)

    kind_names = ["all", *complexity.FAMILIES, *(k.value for k in complexity.OperationKind)]
    p = sub.add_parser("verify", help="check measured complexities against the bound formulas")
    p.add_argument("kinds", nargs="*", metavar="KIND", help="families or kinds (default: all): " + ", ".join(kind_names))
    p.add_argument("--m-range", type=_range, help="left sizes as A..B (default per family)")
    p.add_argument("--n-range", type=_range, help="right sizes as A..B (default per family)")
    p.add_argument("--csv", help="also write the report as CSV to this path")
    p.add_argument("--lemma-exception", action="store_true", help="add the m=n=4 single-final-state rows (202/116)")
    p.add_argument("--jobs", type=int, default=1, help="worker threads")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("monoid", help="size of the transition monoid of a witness")
    p.add_argument("spec", help=SPEC_HELP)
    p.add_argument("--cap", type=int, default=None, help="stop once more than CAP maps are found")
    p.set_defaults(func=cmd_monoid)

    p = sub.add_parser("export", help="re-emit an automaton as JSON or DOT")
    p.add_argument("source", help="witness spec, JSON file, or - for stdin")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("-o", "--output", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, AutomatonError, ValueError, OSError) as exc:
        print(f"witnesslab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
