"""Command-line front end.

Exit codes: 0 success, 1 a verification or audit came back negative,
2 usage error, 3 unreadable or malformed input file.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from secdom.constructions import construct_optimal, witness_payload
from secdom.domination import certificate, parse_vertex_set
from secdom.errors import (
    InvalidSizeError,
    NotApplicableError,
    ParseError,
    UnsupportedFamilyError,
)
from secdom.formulas import gamma_s_formula
from secdom.graphs import Family, FamilyInstance, Graph, build_family, parse_graph
from secdom.solver import brute_force_gamma_s, enumerate_secure_sets, solve_gamma_s
from secdom.structure import (
    audit_111111,
    audit_forbidden_pattern,
    audit_type1_blocks,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_IO = 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _family(args: argparse.Namespace) -> Family:
    try:
        return Family.parse(args.family)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _graph_source(args: argparse.Namespace) -> tuple[Graph, FamilyInstance | None]:
    has_family = args.family is not None or args.n is not None
    if has_family and args.graph is not None:
        raise UsageError("give either --family/--n or --graph, not both")
    if args.graph is not None:
        try:
            return parse_graph(_read(args.graph)), None
        except ParseError as exc:
            raise InputError(f"{args.graph}: {exc}") from None
    if args.family is None or args.n is None:
        raise UsageError("a graph source is required: --family and --n, or --graph")
    inst = FamilyInstance(_family(args), args.n)
    return build_family(inst), inst


def _emit(out: TextIO, fmt: str, tsv_lines: list[str], payload: object) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, separators=(",", ":"), ensure_ascii=False) + "\n")
    else:
        for line in tsv_lines:
            out.write(line + "\n")


def cmd_gamma(args: argparse.Namespace, out: TextIO) -> int:
    g, inst = _graph_source(args)
    method = args.method or ("formula" if inst is not None else "solver")
    if method == "formula":
        if inst is None:
            raise UsageError("--method formula needs --family and --n")
        if args.witness:
            raise UsageError("--witness needs --method solver or oracle")
        res = gamma_s_formula(inst)
        _emit(out, args.format, [str(res.value)],
              {"value": res.value, "method": method, "case": res.case_label})
        return EXIT_OK
    result = brute_force_gamma_s(g) if method == "oracle" else solve_gamma_s(g)
    payload = {"value": result.optimum, "method": method}
    lines = [str(result.optimum)]
    if args.witness:
        payload["witness"] = list(result.witness.members)
        lines.append(" ".join(map(str, result.witness.members)))
    _emit(out, args.format, lines, payload)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    g, _ = _graph_source(args)
    try:
        s = parse_vertex_set(_read(args.set), g.vertex_count)
    except (ParseError, UnicodeDecodeError) as exc:
        raise InputError(f"{args.set}: {exc}") from None
    cert = certificate(g, s)
    payload = {"secure": cert.ok}
    lines = ["true" if cert.ok else "false"]
    if not cert.ok:
        payload["unguarded"] = cert.unguarded
        lines.append(f"unguarded\t{cert.unguarded}")
    _emit(out, args.format, lines, payload)
    return EXIT_OK if cert.ok else EXIT_NEGATIVE


def cmd_construct(args: argparse.Namespace, out: TextIO) -> int:
    inst = FamilyInstance(_family(args), args.n)
    payload = witness_payload(inst, construct_optimal(inst))
    out.write(json.dumps(payload, separators=(",", ":")) + "\n")
    return EXIT_OK


def cmd_table(args: argparse.Namespace, out: TextIO) -> int:
    fam = _family(args)
    lo = fam.min_n if args.from_n is None else args.from_n
    if args.to_n < lo:
        raise UsageError("--to must not be below --from")
    rows = []
    all_match = True
    for n in range(lo, args.to_n + 1):
        inst = FamilyInstance(fam, n)
        formula = gamma_s_formula(inst)
        try:
            built: int | None = len(construct_optimal(inst))
        except UnsupportedFamilyError:
            built = None
        checked: int | None = None
        if args.check == "solver":
            checked = solve_gamma_s(build_family(inst)).optimum
        elif args.check == "oracle":
            checked = brute_force_gamma_s(build_family(inst)).optimum
        if checked is None:
            flag = "-"
        else:
            flag = "MATCH" if checked == formula.value else "MISMATCH"
            all_match &= checked == formula.value
        rows.append({"n": n, "formula": formula.value, "case": formula.case_label,
                     "construct": built, args.check: checked, "flag": flag})
    cols = ["n", "formula", "case", "construct", args.check, "flag"]

    def cell(v: object) -> str:
        return "-" if v is None else str(v)

    lines = ["\t".join(cols)] + ["\t".join(cell(r[c]) for c in cols) for r in rows]
    _emit(out, args.format, lines, {"family": fam.value, "check": args.check, "rows": rows})
    return EXIT_OK if all_match else EXIT_NEGATIVE


def cmd_enumerate(args: argparse.Namespace, out: TextIO) -> int:
    g, _ = _graph_source(args)
    if not 0 <= args.size <= g.vertex_count:
        raise UsageError(f"--size must lie in 0..{g.vertex_count}")
    sets = enumerate_secure_sets(g, args.size)
    _emit(out, args.format, [" ".join(map(str, s.members)) for s in sets],
          {"size": args.size, "count": len(sets), "sets": [list(s.members) for s in sets]})
    return EXIT_OK


def _parse_sizes(text: str) -> range:
    try:
        if ":" in text:
            a, b = text.split(":", 1)
            return range(int(a), int(b) + 1)
        k = int(text)
        return range(k, k + 1)
    except ValueError:
        raise UsageError(f"--sizes expects K or A:B, got {text!r}") from None


def cmd_audit(args: argparse.Namespace, out: TextIO) -> int:
    inst = FamilyInstance(_family(args), args.n)
    if args.rule == "type1-blocks":
        violations = audit_type1_blocks(inst)
    else:
        sizes = _parse_sizes(args.sizes) if args.sizes else range(0, inst.vertex_count + 1)
        if args.rule == "111111":
            violations = audit_111111(inst, sizes)
        else:
            if not args.pattern:
                raise UsageError("--rule pattern needs --pattern")
            violations = audit_forbidden_pattern(inst, sizes, args.pattern)
    if args.report:
        try:
            with open(args.report, "w", encoding="utf-8") as fh:
                for v in violations:
                    fh.write(v.to_json() + "\n")
        except OSError as exc:
            raise InputError(f"cannot write {args.report}: {exc.strerror}") from None
    _emit(out, args.format, [str(len(violations))], {"violations": len(violations)})
    return EXIT_OK if not violations else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="secdom", description="Secure domination toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def source(p: argparse.ArgumentParser) -> None:
        p.add_argument("--family", help="p2xpn, p2xcn, m2n, p3xpn or p3xcn")
        p.add_argument("--n", type=int, help="number of copies")
        p.add_argument("--graph", help="edge-list file")

    def fmt(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("tsv", "json"), default="tsv")

    p = sub.add_parser("gamma", help="secure domination number")
    source(p)
    fmt(p)
    p.add_argument("--method", choices=("formula", "solver", "oracle"))
    p.add_argument("--witness", action="store_true", help="also print an optimal set")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("verify", help="check that a set is secure dominating")
    source(p)
    fmt(p)
    p.add_argument("--set", required=True, help="file of whitespace-separated vertex ids")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="print the tile construction as JSON")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("table", help="closed form against construction and exact search")
    p.add_argument("--family", required=True)
    p.add_argument("--from", dest="from_n", type=int)
    p.add_argument("--to", dest="to_n", type=int, required=True)
    p.add_argument("--check", choices=("solver", "oracle", "none"), default="none")
    fmt(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("enumerate", help="all secure dominating sets of one size")
    source(p)
    fmt(p)
    p.add_argument("--size", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("audit", help="exhaustive structural audits")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rule", choices=("pattern", "111111", "type1-blocks"), default="pattern")
    p.add_argument("--pattern", help="copy-type string such as 1010")
    p.add_argument("--sizes", help="set size K or range A:B (default: all)")
    p.add_argument("--report", help="write violations as JSON lines to this file")
    fmt(p)
    p.set_defaults(func=cmd_audit)
    return parser


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (UsageError, InvalidSizeError, NotApplicableError, UnsupportedFamilyError) as exc:
        err.write(f"secdom: {exc}\n")
        return EXIT_USAGE
    except InputError as exc:
        err.write(f"secdom: {exc}\n")
        return EXIT_IO


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
