"""Command-line front end.

Exit status: 0 on success, 1 on usage or input errors, 2 when a computation
fails (budget exceeded, solver failure). ``distinguish`` reports its decision
in the output document, never in the exit status.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import distinguisher, generators, oracle
from .errors import BudgetExceededError, ExtractionError, PreconditionError
from .graph import TwoPartition, dump_graph, is_regular, load_partition, read_graph
from .metrics import clustering_metrics, set_metrics, two_cluster_objective
from .profile import resolve_profile
from .spectral import ResidualView, spectral_summary
from .sse import extract_partition, sse_high_rank_extract, sse_low_rank


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(doc, out=None):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _view(g, removed):
    return ResidualView(g, frozenset(removed or ()))


def cmd_gen(args):
    params = {k: getattr(args, k) for k in ("k", "s", "n", "d") if getattr(args, k) is not None}
    spec = generators.FamilySpec(args.family, params, args.seed)
    text = dump_graph(spec.build(), header=spec.header())
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_metrics(args):
    g = read_graph(args.graph)
    c = load_partition(Path(args.partition).read_text(encoding="utf-8"), g)
    parts = []
    for p in c.parts:
        entry = {"nodes": sorted(p), "size": len(p)}
        if len(p) < g.n:
            sm = set_metrics(g, p)
            entry.update(mu=sm.mu, phi=sm.phi, density=sm.density, modularity=sm.modularity)
        parts.append(entry)
    cm = clustering_metrics(g, c)
    doc = {
        "n": g.n,
        "m": g.m,
        "regular_degree": is_regular(g),
        "parts": parts,
        "clustering": {
            "internal": list(cm.internal),
            "degree_sums": list(cm.degree_sums),
            "cross": [[i, j, v] for (i, j), v in sorted(cm.cross.items())],
            "modularity": cm.modularity,
        },
    }
    if c.k == 2 and is_regular(g):
        sm = set_metrics(g, c.parts[0])
        doc["two_cluster_objective"] = two_cluster_objective(sm.mu, sm.density)
    _emit(doc, args.out)


def cmd_rank(args):
    g = read_graph(args.graph)
    summary = spectral_summary(_view(g, args.removed), args.tau)
    _emit({"eigenvalues": list(summary.eigenvalues), "tau": summary.tau, "rank": summary.rank}, args.out)


def cmd_sse(args):
    g = read_graph(args.graph)
    p = resolve_profile(args.profile)
    view = _view(g, args.removed)
    if args.target is not None:
        res = sse_low_rank(view, args.target, p)
        doc = {"set": sorted(res.set), "phi": res.phi, "method": res.method,
               "size_window": list(res.size_window), "candidates": res.candidates}
    elif args.band is not None:
        if args.removed:
            raise UsageError("--band searches the whole graph; drop --removed")
        res = oracle.sse_exact(g, *args.band)
        doc = {"set": sorted(res.witness), "phi": res.value, "method": "exhaustive",
               "size_window": list(args.band), "candidates": res.instances_enumerated}
    else:
        res = sse_high_rank_extract(view, p)
        doc = {"set": sorted(res.set), "phi": res.phi, "method": res.method,
               "size_window": list(res.size_window), "candidates": res.candidates}
    _emit(doc, args.out)


def _trace_doc(trace):
    return {
        "parts": [sorted(t) for t in trace.parts],
        "residual": sorted(trace.residual),
        "steps": [{"residual_size": s.residual_size, "rank": s.rank, "size_cap": s.size_cap,
                   "size": len(s.part), "phi": s.phi} for s in trace.steps],
        "final_rank": trace.final_rank,
        "final_threshold": trace.final_threshold,
    }


def cmd_extract(args):
    g = read_graph(args.graph)
    p = resolve_profile(args.profile)
    try:
        trace = extract_partition(g, p)
    except ExtractionError as exc:
        if exc.trace is not None:
            sys.stderr.write(json.dumps({"partial_trace": _trace_doc(exc.trace)}, sort_keys=True) + "\n")
        raise
    _emit(_trace_doc(trace), args.out)


def cmd_distinguish(args):
    g = read_graph(args.graph)
    p = resolve_profile(args.profile)
    opt = None
    if args.with_oracle:
        opt = oracle.opt_exact(g).value
    report = distinguisher.run(g, p, opt=opt, threads=args.threads)
    manifest = {"subcommand": "distinguish", "graph": args.graph, "profile": args.profile,
                "seed": p.seed, "out": args.out}
    doc = {
        "schema_version": distinguisher.SCHEMA_VERSION,
        "manifest": manifest,
        "decision": report.decision,
        "certificate": report.certificate,
        "best_f": report.best_f,
        "case": report.case,
        "rank_used": report.rank_used,
        "rank_threshold": report.rank_threshold,
        "tau": report.tau,
        "outside_promise": report.outside_promise,
        "profile": report.profile,
        "candidates": report.candidates,
        "extraction": report.extraction,
        "trace": report.guesses,
        "timings": report.timings,
    }
    if args.trace_csv:
        fields = ["dstar", "value", "status", "case", "s_range", "half_range", "best_f"]
        with open(args.trace_csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.DictWriter(fh, fieldnames=fields)
            w.writeheader()
            for row in report.guesses:
                w.writerow({k: ("" if row[k] is None else row[k]) for k in fields})
    _emit(doc, args.out)


def cmd_oracle(args):
    g = read_graph(args.graph)
    doc = {"n": g.n, "m": g.m}
    if args.band is not None:
        res = oracle.sse_exact(g, *args.band)
        doc["sse"] = {"value": res.value, "witness": sorted(res.witness), "count": res.instances_enumerated}
    if not args.skip_opt and g.n <= oracle.OPT_MAX_N:
        res = oracle.opt_exact(g)
        doc["opt"] = {"value": res.value, "witness": [sorted(p) for p in res.witness.parts],
                      "count": res.instances_enumerated}
    if g.n <= oracle.OPT2_MAX_N:
        res = oracle.opt2_exact(g)
        w = res.witness
        parts = [w.side_a, w.side_b] if isinstance(w, TwoPartition) else list(w.parts)
        doc["opt2"] = {"value": res.value, "witness": [sorted(p) for p in parts],
                       "count": res.instances_enumerated}
    if len(doc) == 2:
        raise BudgetExceededError(f"n={g.n} is beyond every oracle budget")
    _emit(doc, args.out)


def cmd_verify_bounds(args):
    _emit(distinguisher.verify_paper_bounds(resolve_profile(args.profile)), args.out)


def build_parser():
    parser = _Parser(prog="ssemod", description="Modularity clustering via small-set expansion.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a graph family as an edge list")
    p.add_argument("--family", required=True, choices=sorted(generators.FAMILIES))
    for name in ("k", "s", "n", "d"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("metrics", help="set and clustering metrics of a partition")
    p.add_argument("--graph", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("rank", help="walk-matrix spectrum and threshold rank")
    p.add_argument("--graph", required=True)
    p.add_argument("--tau", type=float, default=0.95)
    p.add_argument("--removed", type=int, nargs="*")
    p.add_argument("--out")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("sse", help="small-set expansion solvers")
    p.add_argument("--graph", required=True)
    p.add_argument("--profile", default="desk")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--target", type=int)
    mode.add_argument("--band", type=int, nargs=2, metavar=("LO", "HI"))
    mode.add_argument("--high-rank", action="store_true")
    p.add_argument("--removed", type=int, nargs="*")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sse)

    p = sub.add_parser("extract", help="repeated extraction of high-rank parts")
    p.add_argument("--graph", required=True)
    p.add_argument("--profile", default="desk")
    p.add_argument("--out")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("distinguish", help="HIGH/LOW decision with certificate")
    p.add_argument("--graph", required=True)
    p.add_argument("--profile", default="desk")
    p.add_argument("--out")
    p.add_argument("--trace-csv")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--with-oracle", action="store_true", help="flag runs outside the promise (n <= 13)")
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("oracle", help="exact optima by enumeration")
    p.add_argument("--graph", required=True)
    p.add_argument("--band", type=int, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--skip-opt", action="store_true", help="skip the full partition enumeration")
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify-bounds", help="recompute the per-case objective bounds")
    p.add_argument("--profile", default="paper")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify_bounds)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (BudgetExceededError, ExtractionError, PreconditionError, AssertionError) as exc:
        sys.stderr.write(f"ssemod {args.command}: computation failed: {exc}\n")
        return 2
    except (UsageError, ValueError, OSError) as exc:
        sys.stderr.write(f"ssemod {args.command}: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
