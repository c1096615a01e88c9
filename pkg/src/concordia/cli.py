"""Command-line interface.

Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 uncertified atom,
4 pair budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import cabling, fulltwist, poset, surgery, verify
from .alexander import genus
from .cfk import expr_v_sequence, tau_additive
from .errors import BudgetExceededError, KnotExprError, UncertifiedAtomError
from .knotexpr import KnotExpr, parse

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_UNCERTIFIED = 3
EXIT_BUDGET = 4


@dataclass(frozen=True)
class InvariantReport:
    expression: str
    nu_plus: int
    tau: int
    v_sequence: list
    genus_bound: Optional[int]


def invariant_report(expr: KnotExpr) -> InvariantReport:
    vs = expr_v_sequence(expr)
    return InvariantReport(
        expression=str(expr),
        nu_plus=vs.nu_plus,
        tau=tau_additive(expr),
        v_sequence=vs.as_list(),
        genus_bound=sum(abs(c) * genus(a) for c, a in expr),
    )


def parse_range(text: str) -> range:
    """'A..B' (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        v = int(text)
        return range(v, v + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or A..B, got {text!r}") from None


def _csv_cell(v) -> str:
    if isinstance(v, list):
        return ";".join(_csv_cell(x) for x in v)
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _render(payload, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: _csv_cell(v) for k, v in r.items()})
    return buf.getvalue()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- subcommands ---------------------------------------------------------------


def cmd_invariants(args) -> int:
    reports = [asdict(invariant_report(parse(t))) for t in args.expr]
    payload = reports[0] if len(reports) == 1 else reports
    _emit(_render(payload, reports, args.format), args.out)
    return EXIT_OK


def cmd_obstruct_fulltwist(args) -> int:
    src, dst = parse(args.source), parse(args.target)
    rows = [fulltwist.obstruct_full_twist(src, dst, n).as_dict() for n in args.linking]
    admissible = [r["n"] for r in rows if r["verdict"] == "consistent"]
    payload = {"from": str(src), "to": str(dst), "reports": rows, "admissible": admissible}
    _emit(_render(payload, rows, args.format), args.out)
    return EXIT_OK


def cmd_cable_bounds(args) -> int:
    companion = parse(args.companion)
    rows = cabling.cable_table(companion, args.p, args.q)
    payload = {"companion": str(companion), "rows": rows}
    _emit(_render(payload, rows, args.format), args.out)
    return EXIT_OK


def cmd_surgery_d(args) -> int:
    expr = parse(args.expr)
    p, q = args.p, args.q
    surgery.SpinCIndex(p, q, 0)
    rows = [{"i": i, "d": str(surgery.d_surgery(expr, p, q, i))} for i in range(p)]
    payload = {"expression": str(expr), "p": p, "q": q, "rows": rows}
    _emit(_render(payload, rows, args.format), args.out)
    return EXIT_OK


def cmd_poset(args) -> int:
    gens = [parse(g) for g in args.generators]
    u = poset.build_universe(gens, args.max_coeff, budget=args.budget)
    dot, js = poset.hasse_dot(u), poset.universe_json(u)
    if args.out:
        out = Path(args.out)
        out.write_text(dot)
        out.with_suffix(".json").write_text(js)
    else:
        sys.stdout.write(dot if args.format == "dot" else js)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    results = verify.run_all(names)
    payload = {"passed": all(r.passed for r in results), "suites": [r.as_dict() for r in results]}
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    for r in results:
        if not r.passed:
            print(f"{r.name}: {r.failure}", file=sys.stderr)
            return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="concordia", description="nu+ computations for knot concordance")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, formats=("json", "csv")):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
        return p

    p = common(sub.add_parser("invariants", help="nu+, tau and V_k of expressions"))
    p.add_argument("expr", nargs="+")
    p.set_defaults(func=cmd_invariants)

    p = common(sub.add_parser("obstruct-fulltwist", help="test positive full-twists over a linking range"))
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--linking", type=parse_range, default=range(0, 5))
    p.set_defaults(func=cmd_obstruct_fulltwist)

    p = common(sub.add_parser("cable-bounds", help="nu+ of cables over a (p,q) table"))
    p.add_argument("companion")
    p.add_argument("--p", type=parse_range, default=range(2, 4))
    p.add_argument("--q", type=parse_range, default=range(1, 14))
    p.set_defaults(func=cmd_cable_bounds)

    p = common(sub.add_parser("surgery-d", help="correction terms of p/q-surgery"))
    p.add_argument("expr")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, default=1)
    p.set_defaults(func=cmd_surgery_d)

    p = common(sub.add_parser("poset", help="Hasse diagram of a finite universe"), ("json", "dot"))
    p.add_argument("generators", nargs="*")
    p.add_argument("--max-coeff", type=int, default=1)
    p.add_argument("--budget", type=int, default=poset.DEFAULT_BUDGET)
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("verify", help="run built-in verification suites")
    p.add_argument("suite", choices=[*verify.SUITES, "all"])
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UncertifiedAtomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNCERTIFIED
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (KnotExprError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
