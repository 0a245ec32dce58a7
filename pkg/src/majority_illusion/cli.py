"""Command-line entry point.

Exit codes: 0 success / property holds, 1 property fails or nothing found,
2 error, 3 not refuted.  Errors go to stderr as ``error: <kind>: <message>``.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import io
from .cnf import dpll_sat, generate_2p2n, generate_3cnf, parse_dimacs, serialize_dimacs
from .elimination import VARIANTS, attach_pump, encode_2p2n
from .errors import IllusionError, PreconditionError
from .generators import random_labelled_network, random_network
from .harness import run_corpus
from .network import LabelledNetwork, SocialNetwork, illusion_report
from .plurality import plurality_illusion_report
from .solvers import (
    CnfExport,
    decode_model,
    eliminate_exhaustive,
    eliminate_greedy,
    export_illusion_cnf,
    parse_solver_model,
    solve_one_illusion,
    solve_q_illusion_bruteforce,
)
from .thresholds import as_fraction, at_least_fraction, format_fraction
from .verification import encode_q

EXIT_OK, EXIT_NO, EXIT_ERROR, EXIT_NOT_REFUTED = 0, 1, 2, 3


class UsageError(IllusionError):
    kind = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- helpers ---------------------------------------------------------------


def _emit(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "out", None):
        io.write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj, schema: Optional[str] = None):
    if schema is not None:
        io.validate(obj, schema)
    _emit(args, json.dumps(obj, indent=2, sort_keys=True))


def _read_text(path) -> str:
    with open(path) as fh:
        return fh.read()


def _labelled(net, what: str) -> LabelledNetwork:
    if not isinstance(net, LabelledNetwork):
        raise PreconditionError(f"{what} needs a labelled network")
    return net


def _plain(net) -> SocialNetwork:
    return net.network if isinstance(net, LabelledNetwork) else net


def _tag(colour, palette_size):
    return None if colour is None else io.format_label(int(colour), palette_size)


def _report_dict(net: LabelledNetwork, q, plurality: bool) -> dict:
    lab = net.labelling
    if plurality:
        report = plurality_illusion_report(net.network, lab)
    else:
        report = illusion_report(net)
    n = net.node_count
    holds = at_least_fraction(report.illuded_count, n, q)
    return {
        "global_winner": _tag(report.global_winner, lab.palette_size),
        "local_winners": [_tag(c, lab.palette_size) for c in report.local_winners],
        "under_illusion": sorted(report.under_illusion),
        "illuded_count": report.illuded_count,
        "node_count": n,
        "fraction": format_fraction(report.fraction),
        "q": format_fraction(q),
        "q_illusion": holds,
        "plurality": plurality,
    }


def _report_table(rep: dict) -> str:
    lines = [f"{'node':>6}  local  illuded"]
    under = set(rep["under_illusion"])
    for i, w in enumerate(rep["local_winners"]):
        lines.append(f"{i:>6}  {'-' if w is None else w!s:>5}  {'yes' if i in under else 'no'}")
    lines.append(f"global winner: {rep['global_winner'] if rep['global_winner'] is not None else '-'}")
    lines.append(f"illuded: {rep['illuded_count']}/{rep['node_count']} (q = {rep['q']}): "
                 f"{'illusion' if rep['q_illusion'] else 'no illusion'}")
    return "\n".join(lines)


# -- subcommands -----------------------------------------------------------


def cmd_analyze(args) -> int:
    net = _labelled(io.read_network(args.network, args.labels), "analyze")
    q = as_fraction(args.q)
    if not args.plurality:
        net._require_binary()
    rep = _report_dict(net, q, args.plurality)
    if args.format == "table":
        _emit(args, _report_table(rep))
    else:
        _emit_json(args, rep, "report")
    return EXIT_OK if rep["q_illusion"] else EXIT_NO


def cmd_search(args) -> int:
    sn = _plain(io.read_network(args.network, args.labels))
    q = as_fraction(args.q)
    if args.method == "backtrack":
        if q != 1:
            raise PreconditionError("method backtrack only decides q = 1; use brute or cnf")
        lab = solve_one_illusion(sn)
    elif args.method == "brute":
        lab = solve_q_illusion_bruteforce(sn, q)
    else:
        export = export_illusion_cnf(sn, q)
        model = dpll_sat(export.formula)
        lab = None if model is None else decode_model(export, model)
    if lab is None:
        _emit(args, "none")
        return EXIT_NO
    _emit_json(args, io.labelling_to_json(lab), "labelling")
    return EXIT_OK


def cmd_eliminate(args) -> int:
    net = _labelled(io.read_network(args.network, args.labels), "eliminate")
    solve = eliminate_exhaustive if args.method == "exhaustive" else eliminate_greedy
    plan = solve(net, as_fraction(args.q), args.k, args.mode)
    if plan is None:
        _emit(args, "none")
        return EXIT_NO
    _emit_json(args, plan.to_dict(), "plan")
    return EXIT_OK


def cmd_encode(args) -> int:
    f = parse_dimacs(_read_text(args.formula))
    if args.target == "verify":
        enc = encode_q(f, as_fraction(args.q if args.q is not None else "1"))
    else:
        if args.variant is None:
            raise UsageError("--target eliminate needs --variant")
        enc = attach_pump(encode_2p2n(f, args.variant), as_fraction(args.q if args.q is not None else "1/2"))
    _emit_json(args, enc.to_dict(), "encoding")
    return EXIT_OK


def cmd_verify_reduction(args) -> int:
    f = parse_dimacs(_read_text(args.formula))
    if args.theorem == 1:
        q = args.q if args.q is not None else "1"
        variants = ()
    else:
        q = args.q if args.q is not None else "1/2"
        variants = VARIANTS if args.variant is None else (args.variant,)
    records = run_corpus([("cli", f)], args.theorem, q, variants, jobs=args.jobs)
    for rec in records:
        io.validate(rec, "verdict")
    _emit(args, "\n".join(json.dumps(r, sort_keys=True) for r in records))
    verdicts = {r["verdict"] for r in records}
    if "fail" in verdicts:
        return EXIT_NO
    if "not-refuted" in verdicts:
        return EXIT_NOT_REFUTED
    return EXIT_OK


def cmd_export_cnf(args) -> int:
    sn = _plain(io.read_network(args.network, args.labels))
    export = export_illusion_cnf(sn, as_fraction(args.q))
    mapping = export.variable_map()
    io.validate(mapping, "variable_map")
    text = serialize_dimacs(export.formula, comments=[f"illusion search, q = {format_fraction(as_fraction(args.q))}"])
    # write the map first so a failed DIMACS write leaves no half-finished pair
    io.write_atomic(args.map, json.dumps(mapping, indent=2, sort_keys=True) + "\n")
    _emit(args, text)
    return EXIT_OK


def cmd_ingest_model(args) -> int:
    with open(args.map) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise io.ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    io.validate(data, "variable_map")
    export = CnfExport.map_from_dict(data)
    lab = decode_model(export, parse_solver_model(_read_text(args.assignment)))
    _emit_json(args, io.labelling_to_json(lab), "labelling")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "graph":
        n = args.n if args.n is not None else 10
        if args.labelled:
            net = random_labelled_network(n, args.p, args.seed)
        else:
            net = random_network(n, args.p, args.seed)
        _emit_json(args, io.network_to_json(net), "network")
    elif args.kind == "3cnf":
        m = args.vars if args.vars is not None else 3
        n = args.clauses if args.clauses is not None else 3
        _emit(args, serialize_dimacs(generate_3cnf(m, n, args.seed), comments=[f"seed {args.seed}"]))
    else:
        m = args.vars if args.vars is not None else 3
        _emit(args, serialize_dimacs(generate_2p2n(m, args.seed), comments=[f"seed {args.seed}"]))
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="majority-illusion", description="Majority illusion analysis, search and reductions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def network_args(p):
        p.add_argument("network", help="network as JSON or an edge list")
        p.add_argument("--labels", help="'id label' sidecar for edge-list input")
        p.add_argument("--out", help="write output here (atomically) instead of stdout")

    p = sub.add_parser("analyze", help="illusion report for a labelled network")
    network_args(p)
    p.add_argument("--q", default="1")
    p.add_argument("--plurality", action="store_true")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("search", help="find a labelling that induces a q-illusion")
    network_args(p)
    p.add_argument("--q", default="1")
    p.add_argument("--method", choices=("backtrack", "brute", "cnf"), default="backtrack")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("eliminate", help="edge edits that break a q-illusion")
    network_args(p)
    p.add_argument("--q", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=("both", "add", "remove"), default="both")
    p.add_argument("--method", choices=("exhaustive", "greedy"), default="exhaustive")
    p.set_defaults(func=cmd_eliminate)

    p = sub.add_parser("encode", help="gadget encoding of a DIMACS formula")
    p.add_argument("formula")
    p.add_argument("--target", choices=("verify", "eliminate"), required=True)
    p.add_argument("--q")
    p.add_argument("--variant", choices=VARIANTS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("verify-reduction", help="round-trip check of one formula")
    p.add_argument("formula")
    p.add_argument("--theorem", type=int, choices=(1, 2), required=True)
    p.add_argument("--q")
    p.add_argument("--variant", choices=VARIANTS)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify_reduction)

    p = sub.add_parser("export-cnf", help="DIMACS whose models are q-illusion labellings")
    network_args(p)
    p.add_argument("--q", required=True)
    p.add_argument("--map", required=True, help="where to write the variable map JSON")
    p.set_defaults(func=cmd_export_cnf)

    p = sub.add_parser("ingest-model", help="labelling from a solver model and a variable map")
    p.add_argument("map")
    p.add_argument("assignment")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ingest_model)

    p = sub.add_parser("gen", help="seeded random artifacts")
    p.add_argument("kind", choices=("graph", "3cnf", "2p2n"))
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, help="graph node count")
    p.add_argument("--p", type=float, default=0.3, help="graph edge probability")
    p.add_argument("--labelled", action="store_true", help="attach a random labelling")
    p.add_argument("--vars", type=int)
    p.add_argument("--clauses", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be at least 1")
        return args.func(args)
    except IllusionError as exc:
        kind = exc.kind
        message = str(exc)
    except OSError as exc:
        kind, message = "io", f"{exc.strerror}: {exc.filename}" if exc.filename else str(exc)
    except (ValueError, KeyError, TypeError) as exc:
        kind, message = "input", str(exc)
    message = " ".join(message.split())
    print(f"error: {kind}: {message}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
