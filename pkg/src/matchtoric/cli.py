"""Command-line front end.

Exit codes: 0 ok, 1 mismatch against a known value, 2 invalid input,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import List, Optional

from . import classify, colorings, graphs, reproduce
from .errors import BudgetExceeded
from .toric import fibers, markov
from .toric.points import lattice_points, normalize_kind

log = logging.getLogger("matchtoric")

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _add_graph_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="named graph: G1..G8, K23, K5, W6, C6, P5, K_{1,1,3}, ...")
    src.add_argument("--graph6", help="graph6 string")
    src.add_argument("--file", help="file of graph6 strings, one per line")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "tsv", "text"), default="json")
    p.add_argument("--out", help="write the report here instead of stdout")


def _graphs(args) -> List[graphs.SimpleGraph]:
    try:
        if args.graph:
            return [graphs.paper_graph(args.graph)]
        if args.graph6:
            return [graphs.from_graph6(args.graph6)]
        with open(args.file) as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
        if not lines:
            raise InputError(f"{args.file} holds no graphs")
        return [graphs.from_graph6(ln) for ln in lines]
    except (ValueError, OSError) as exc:
        raise InputError(str(exc)) from exc


def _render(records: List[dict], fmt: str) -> str:
    if fmt == "json":
        body = records[0] if len(records) == 1 else records
        return json.dumps(body, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    keys = list(records[0].keys()) if records else []
    if fmt == "tsv":
        lines = ["\t".join(keys)]
        for rec in records:
            lines.append("\t".join(json.dumps(rec.get(k), sort_keys=True, ensure_ascii=False) for k in keys))
        return "\n".join(lines) + "\n"
    chunks = []
    for rec in records:
        chunks.append("\n".join(f"{k}: {json.dumps(rec[k], sort_keys=True, ensure_ascii=False)}" for k in keys))
    return "\n\n".join(chunks) + "\n"


def _emit(args, records: List[dict]) -> None:
    text = _render(records, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_omega(args) -> int:
    kind = normalize_kind(args.kind)
    records = []
    for G in _graphs(args):
        t0 = time.perf_counter()
        rec = {"command": "omega", "graph6": graphs.to_graph6(G), "kind": kind}
        if args.blocks:
            if kind != "matching":
                raise InputError("--blocks applies to the matching polytope only")
            rec["omega"] = markov.omega_via_blocks(G, args.budget_pairs)
            rec["via_blocks"] = True
        else:
            rep = markov.omega(lattice_points(G, kind), args.budget_pairs)
            rec.update(rep.to_json())
        log.info("%s: omega %s in %.2fs", rec["graph6"], rec["omega"], time.perf_counter() - t0)
        records.append(rec)
    _emit(args, records)
    return EXIT_OK


def cmd_verify(args) -> int:
    kind = normalize_kind(args.kind)
    records = []
    for G in _graphs(args):
        rep = fibers.verify_omega_le(lattice_points(G, kind), args.r, args.max_degree)
        rec = {"command": "verify", "graph6": graphs.to_graph6(G), "kind": kind}
        rec.update(rep.to_json())
        records.append(rec)
    _emit(args, records)
    return EXIT_OK


def cmd_equiv(args) -> int:
    try:
        f = colorings.load_coloring(args.f)
        g = colorings.load_coloring(args.g)
    except colorings.ImproperColoring as exc:
        raise InputError(f"improper coloring: {exc}") from exc
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read coloring: {exc}") from exc
    try:
        res = colorings.decide_equiv_r(f, g, args.r, args.budget_states)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    rec = {"command": "equiv", **res.to_json()}
    if args.certificate and res.certificate is not None:
        with open(args.certificate, "w") as fh:
            json.dump(res.certificate.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    _emit(args, [rec])
    return EXIT_OK


def cmd_classify(args) -> int:
    records = []
    if args.d is not None:
        rows = classify.classify_small(args.d, max_points=args.max_points, max_pairs=args.budget_pairs)
        violations = classify.check_small_table(args.d, rows)
        records = [r.to_json() for r in rows]
        for v in violations:
            log.error("mismatch: %s", v)
        _emit(args, records)
        return EXIT_MISMATCH if violations else EXIT_OK
    for G in _graphs(args):
        records.append(classify.predicted_omega(G).to_json())
    _emit(args, records)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    try:
        sb = reproduce.run_suite(args.suite)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    for c in sb.checks:
        if not c.passed:
            log.error("mismatch in %s: expected %r, got %r", c.name, c.expected, c.got)
    rec = sb.to_json()
    if args.format == "json":
        _emit(args, [rec])
    else:
        _emit(args, [dict(suite=sb.suite, **c.to_json()) for c in sb.checks])
    return EXIT_OK if sb.passed else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="matchtoric",
        description="Toric ideals of matching polytopes and edge-coloring equivalence.",
    )
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    p.add_argument("--threads", type=_positive, default=1,
                   help="worker count (accepted for compatibility; engines run single-threaded)")
    sub = p.add_subparsers(dest="command", required=True)

    o = sub.add_parser("omega", help="exact maximal degree of minimal generators")
    _add_graph_source(o)
    o.add_argument("--kind", default="matching", help="matching | perfect-matching | stable-set")
    o.add_argument("--blocks", action="store_true", help="take the maximum over blocks")
    o.add_argument("--budget-pairs", type=_positive, default=None,
                   help="abort after this many critical pairs per Groebner run (default: unlimited)")
    _add_output(o)
    o.set_defaults(func=cmd_omega)

    v = sub.add_parser("verify", help="check fiber connectivity under exchanges of size <= r")
    _add_graph_source(v)
    v.add_argument("--kind", default="matching")
    v.add_argument("-r", type=_positive, required=True)
    v.add_argument("--max-degree", type=_positive, default=None, help="highest degree checked (default r+2)")
    _add_output(v)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("equiv", help="decide f ~_r g for two colorings given as JSON files")
    e.add_argument("f")
    e.add_argument("g")
    e.add_argument("-r", type=_positive, required=True)
    e.add_argument("--budget-states", type=_positive, default=colorings.DEFAULT_STATE_BUDGET)
    e.add_argument("--certificate", help="write the certificate here when equivalent")
    _add_output(e)
    e.set_defaults(func=cmd_equiv)

    c = sub.add_parser("classify", help="structural prediction, or a table of all graphs on d vertices")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph")
    src.add_argument("--graph6")
    src.add_argument("--file")
    src.add_argument("-d", type=int, help="tabulate all graphs on d <= 7 vertices")
    c.add_argument("--max-points", type=_positive, default=40,
                   help="skip exact omega above this many matchings (default 40)")
    c.add_argument("--budget-pairs", type=_positive, default=None)
    _add_output(c)
    c.set_defaults(func=cmd_classify)

    r = sub.add_parser("reproduce", help="run a suite of computations with known answers")
    r.add_argument("suite", choices=sorted(reproduce.SUITES))
    _add_output(r)
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        print(json.dumps({"status": "budget_exceeded", "message": str(exc), "partial": exc.partial},
                         sort_keys=True, default=str))
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
