"""Command-line front end.

    critgroup group  --km 3 --cn 3            # closed form and SNF, compared
    critgroup trees  --family complete --size 5
    critgroup snf    --matrix a.txt --witness
    critgroup sweep  --m-range 3..6 --n-range 3..10 --jobs 4

Exit codes: 0 success, 2 closed form and SNF disagree, 64 usage error,
65 bad input data. Big integers are written as decimal strings in JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Sequence

from .critical_group import (
    AbelianGroup,
    DisconnectedGraphError,
    critical_group,
    spanning_tree_count,
)
from .knc_closed_form import ClosedFormConsistencyError, critical_group_closed, tree_number_closed
from .multigraph import (
    EdgeListParseError,
    Multigraph,
    complete_graph,
    cycle_graph,
    km_cn,
    parse_edge_list,
    path_graph,
)
from .zmatrix import MatrixParseError, format_matrix, parse_matrix, smith_normal_form

EXIT_OK = 0
EXIT_DISAGREE = 2
EXIT_USAGE = 64
EXIT_DATA = 65

FAMILIES = {"complete": complete_graph, "cycle": cycle_graph, "path": path_graph}


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for disagreement here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def max_dim() -> int:
    raw = os.environ.get("CRITGROUP_MAX_DIM", "4096")
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"CRITGROUP_MAX_DIM={raw!r} is not an integer", EXIT_USAGE) from None


def _guard(order: int) -> None:
    cap = max_dim()
    if order > cap:
        raise CliError(f"matrix order {order} exceeds CRITGROUP_MAX_DIM={cap}", EXIT_DATA)


# ---------------------------------------------------------------------------
# graph sources


@dataclass(frozen=True)
class GraphSource:
    descriptor: dict[str, Any]
    graph: Multigraph
    km_cn: tuple[int, int] | None = None


def resolve_source(args: argparse.Namespace) -> GraphSource:
    given = [
        name for name, present in (
            ("--km/--cn", args.km is not None or args.cn is not None),
            ("--file", args.file is not None),
            ("--family/--size", args.family is not None or args.size is not None),
        ) if present
    ]
    if len(given) != 1:
        raise CliError("give exactly one graph source: --km M --cn N, --file PATH, "
                       "or --family F --size K", EXIT_USAGE)
    if args.km is not None or args.cn is not None:
        if args.km is None or args.cn is None:
            raise CliError("--km and --cn must be given together", EXIT_USAGE)
        m, n = args.km, args.cn
        if m < 1 or n < 1:
            raise CliError("--km and --cn must be positive", EXIT_USAGE)
        _guard(m * n)
        return GraphSource({"family": "km_cn", "m": m, "n": n}, km_cn(m, n), (m, n))
    if args.file is not None:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise CliError(f"cannot read {args.file}: {exc.strerror}", EXIT_DATA) from None
        try:
            graph = parse_edge_list(text)
        except EdgeListParseError as exc:
            raise CliError(f"{args.file}: {exc}", EXIT_DATA) from None
        if graph.vertex_count == 0:
            raise CliError(f"{args.file}: graph has no vertices", EXIT_DATA)
        _guard(graph.vertex_count)
        return GraphSource({"file": args.file}, graph)
    if args.family is None or args.size is None:
        raise CliError("--family and --size must be given together", EXIT_USAGE)
    if args.size < 1:
        raise CliError("--size must be positive", EXIT_USAGE)
    _guard(args.size)
    graph = FAMILIES[args.family](args.size)
    return GraphSource({"family": args.family, "size": args.size}, graph)


# ---------------------------------------------------------------------------
# records


def _record(descriptor, method, group: AbelianGroup, tree_count: int, agreement=None) -> dict:
    return {
        "graph": descriptor,
        "method": method,
        "invariant_factors": [str(d) for d in group.invariant_factors],
        "group_display": str(group),
        "tree_count": str(tree_count),
        "agreement": agreement,
    }


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def evaluate(source: GraphSource, method: str | None) -> tuple[dict, dict]:
    """Compute the record for ``source``; the second value carries per-method details."""
    if method is None:
        method = "both" if source.km_cn else "snf"
    if method in ("formula", "both") and source.km_cn is None:
        raise CliError(f"--method {method} needs a K_m x C_n source (--km/--cn)", EXIT_USAGE)

    details: dict[str, Any] = {}
    if method in ("formula", "both"):
        m, n = source.km_cn
        try:
            closed = critical_group_closed(m, n)
            details["formula_trees"] = tree_number_closed(m, n)
        except ClosedFormConsistencyError as exc:
            raise CliError(f"closed form failed its consistency checks: {exc}", EXIT_DISAGREE) from None
        details["formula_group"] = closed.group
    if method in ("snf", "both"):
        try:
            details["snf_group"] = critical_group(source.graph)
            details["matrix_tree"] = spanning_tree_count(source.graph)
        except DisconnectedGraphError as exc:
            raise CliError(str(exc), EXIT_DATA) from None

    if method == "formula":
        return _record(source.descriptor, method, details["formula_group"], details["formula_trees"]), details
    agreement = None
    if method == "both":
        agreement = (
            details["formula_group"].invariant_factors == details["snf_group"].invariant_factors
        ) and details["formula_trees"] == details["matrix_tree"] == details["snf_group"].order
    return _record(source.descriptor, method, details["snf_group"], details["matrix_tree"], agreement), details


def cmd_group(args) -> int:
    record, details = evaluate(resolve_source(args), args.method)
    if args.json:
        sys.stdout.write(dump_json(record))
    else:
        print(record["group_display"])
        if record["agreement"] is not None:
            if not record["agreement"]:
                print(f"formula: {details['formula_group']}")
                print(f"snf: {details['snf_group']}")
            print(f"agreement: {str(record['agreement']).lower()}")
    return EXIT_DISAGREE if record["agreement"] is False else EXIT_OK


def cmd_trees(args) -> int:
    record, details = evaluate(resolve_source(args), args.method)
    if args.json:
        sys.stdout.write(dump_json(record))
    elif record["agreement"] is None:
        print(record["tree_count"])
    else:
        print(f"formula: {details['formula_trees']}")
        print(f"matrix-tree: {details['matrix_tree']}")
        print(f"agreement: {str(record['agreement']).lower()}")
    return EXIT_DISAGREE if record["agreement"] is False else EXIT_OK


def cmd_snf(args) -> int:
    try:
        with open(args.matrix, encoding="utf-8") as fh:
            a = parse_matrix(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read {args.matrix}: {exc.strerror}", EXIT_DATA) from None
    except MatrixParseError as exc:
        raise CliError(f"{args.matrix}: {exc}", EXIT_DATA) from None
    _guard(max(a.rows, a.cols))
    dec = smith_normal_form(a)
    verified = dec.verify(a)
    if args.json:
        out: dict[str, Any] = {"diag": [str(d) for d in dec.diag]}
        if args.witness:
            out["left"] = [[str(x) for x in row] for row in dec.left.to_rows()]
            out["right"] = [[str(x) for x in row] for row in dec.right.to_rows()]
            out["verified"] = verified
        sys.stdout.write(dump_json(out))
    else:
        print(" ".join(str(d) for d in dec.diag))
        if args.witness:
            print("left:")
            sys.stdout.write(format_matrix(dec.left))
            print("right:")
            sys.stdout.write(format_matrix(dec.right))
            print(f"verified: left*A*right == diag and both unimodular: {str(verified).lower()}")
    if not verified:
        raise AssertionError("Smith decomposition failed its own verification")
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep


def parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise CliError(f"bad range {text!r}; expected A..B", EXIT_USAGE) from None
    if a < 1 or b < a:
        raise CliError(f"bad range {text!r}; need 1 <= A <= B", EXIT_USAGE)
    return range(a, b + 1)


def sweep_cell(m: int, n: int) -> dict:
    """Compare closed form and SNF on ``K_m x C_n``; one sweep line."""
    graph = km_cn(m, n)
    snf_group = critical_group(graph)
    cofactor = spanning_tree_count(graph)
    cell = {"m": m, "n": n, "snf_group": str(snf_group), "matrix_tree": str(cofactor)}
    try:
        closed = critical_group_closed(m, n)
        trees = tree_number_closed(m, n)
    except ClosedFormConsistencyError as exc:
        cell.update(status="ERROR", error=str(exc))
        return cell
    ok = (
        closed.group.invariant_factors == snf_group.invariant_factors
        and trees == cofactor == snf_group.order
    )
    cell.update(status="OK" if ok else "MISMATCH", formula_group=str(closed.group),
                formula_trees=str(trees), branch=closed.branch)
    return cell


def _sweep_cell_args(mn):
    return sweep_cell(*mn)


def cmd_sweep(args) -> int:
    ms, ns = parse_range(args.m_range), parse_range(args.n_range)
    _guard(ms[-1] * ns[-1])
    if args.jobs < 1:
        raise CliError("--jobs must be positive", EXIT_USAGE)
    grid = [(m, n) for m in ms for n in ns]
    if args.jobs == 1:
        cells = [sweep_cell(m, n) for m, n in grid]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            cells = list(pool.map(_sweep_cell_args, grid))
    cells.sort(key=lambda c: (c["m"], c["n"]))
    agree = sum(c["status"] == "OK" for c in cells)
    if args.json:
        sys.stdout.write(dump_json({"cells": cells, "agree": agree, "total": len(cells)}))
    else:
        for c in cells:
            line = f"m={c['m']} n={c['n']} {c['status']} group={c['snf_group']} trees={c['matrix_tree']}"
            if c["status"] == "MISMATCH":
                line += f" formula_group={c['formula_group']} formula_trees={c['formula_trees']}"
            elif c["status"] == "ERROR":
                line += f" error={c['error']}"
            print(line)
        print(f"{agree}/{len(cells)} cells agree")
    return EXIT_OK if agree == len(cells) else EXIT_DISAGREE


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="critgroup", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_flags(p):
        p.add_argument("--km", type=int, metavar="M", help="K_m factor of K_m x C_n")
        p.add_argument("--cn", type=int, metavar="N", help="C_n factor of K_m x C_n")
        p.add_argument("--file", metavar="PATH", help="edge-list file")
        p.add_argument("--family", choices=sorted(FAMILIES))
        p.add_argument("--size", type=int, metavar="K")
        p.add_argument("--method", choices=("formula", "snf", "both"),
                       help="default: both for K_m x C_n, snf otherwise")
        p.add_argument("--json", action="store_true")

    graph_flags(sub.add_parser("group", help="critical group"))
    graph_flags(sub.add_parser("trees", help="spanning-tree count"))

    p = sub.add_parser("snf", help="Smith normal form of a matrix file")
    p.add_argument("--matrix", required=True, metavar="PATH")
    p.add_argument("--witness", action="store_true", help="also print the transforms")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("sweep", help="closed form vs SNF over a grid of K_m x C_n")
    p.add_argument("--m-range", required=True, metavar="A..B")
    p.add_argument("--n-range", required=True, metavar="C..D")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    return parser


COMMANDS = {"group": cmd_group, "trees": cmd_trees, "snf": cmd_snf, "sweep": cmd_sweep}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"critgroup: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
