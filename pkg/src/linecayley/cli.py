"""Command-line front end.

One binary with subcommands; every randomized command takes an explicit
--seed, and identical command lines produce byte-identical output when
--no-meta suppresses timestamps and runtimes.

Exit codes: 0 success, 2 invalid input, 3 budget exceeded, 4 internal
invariant violation.
"""

import argparse
import json
import sys
import time
from datetime import datetime, timezone

from .autgroup import automorphism_group, dichotomy_check
from .bounds import (
    aut_union_bound,
    chernoff_report,
    monte_carlo_pipeline,
    sweep_all_line_subsets,
    theorem_qn_params,
    trial_rows,
)
from .cayley import ConnectionSet, build_graph, sample_connection_set
from .coloring import Coloring, exact_chromatic_number
from .distinguishing import chi_D_upper_certificate, is_distinguishing
from .errors import BudgetExceeded, InvariantViolation
from .geometry import line_universe


def _write_text(args, text):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, payload, start):
    if not args.no_meta:
        payload["meta"] = {
            "generated_at": datetime.now(timezone.utc).isoformat(),
            "runtime_ms": int((time.perf_counter() - start) * 1000),
        }
    _write_text(args, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _load_connection(args):
    if args.infile:
        with open(args.infile) as fh:
            return ConnectionSet.from_json_dict(json.load(fh))
    if args.seed is None:
        raise ValueError("either --in or --seed is required")
    return sample_connection_set(args.q, args.n, args.p, args.seed)


def cmd_lines(args):
    start = time.perf_counter()
    universe = line_universe(args.q, args.n)
    payload = {
        "q": args.q,
        "n": args.n,
        "count": len(universe),
        "lines": [list(rep) for rep in universe],
    }
    _emit_json(args, payload, start)
    return 0


def cmd_sample(args):
    start = time.perf_counter()
    if args.seed is None:
        raise ValueError("--seed is required")
    s = sample_connection_set(args.q, args.n, args.p, args.seed)
    _emit_json(args, s.to_json_dict(), start)
    return 0


def cmd_build(args):
    start = time.perf_counter()
    g = build_graph(_load_connection(args))
    if args.format == "dimacs":
        import io

        buf = io.StringIO()
        g.write_dimacs(buf)
        _write_text(args, buf.getvalue())
        return 0
    payload = {
        "q": g.q,
        "n": g.n,
        "num_vertices": g.num_vertices,
        "degree": g.degree,
        "num_edges": g.num_edges,
        "lines": [list(rep) for rep in g.connection.lines],
    }
    _emit_json(args, payload, start)
    return 0


def cmd_chi(args):
    start = time.perf_counter()
    g = build_graph(_load_connection(args))
    result = exact_chromatic_number(g, budget=args.budget_nodes)
    payload = {
        "lower": result.lower,
        "upper": result.upper,
        "exact": result.exact,
        "value": result.value if result.exact else None,
        "clique": list(result.clique) if result.clique else None,
        "coloring": result.coloring.to_json_dict() if result.coloring else None,
        "nodes": result.nodes,
    }
    _emit_json(args, payload, start)
    return 0


def cmd_aut(args):
    start = time.perf_counter()
    g = build_graph(_load_connection(args))
    aut = automorphism_group(g, node_budget=args.budget_nodes)
    if not aut.complete:
        payload = {
            "order": "unknown",
            "generators": [list(p) for p in aut.pool],
            "equals_K": None,
            "dichotomy": None,
            "witness": None,
            "complete": False,
            "nodes": aut.nodes,
        }
        _emit_json(args, payload, start)
        return 3
    _emit_json(args, dichotomy_check(g, aut), start)
    return 0


def cmd_distinguish(args):
    start = time.perf_counter()
    g = build_graph(_load_connection(args))
    aut = automorphism_group(g, node_budget=args.budget_nodes)
    if not aut.complete:
        _emit_json(args, {"complete": False, "nodes": aut.nodes}, start)
        return 3
    if args.coloring:
        with open(args.coloring) as fh:
            c = Coloring.from_json_dict(json.load(fh))
        report = is_distinguishing(c, aut.group)
        payload = report.to_json_dict()
        payload["coloring"] = c.to_json_dict()
    else:
        cert = chi_D_upper_certificate(g, aut.group)
        if cert is None:
            payload = {"certificate_found": False}
        else:
            report = is_distinguishing(cert, aut.group)
            payload = report.to_json_dict()
            payload["certificate_found"] = True
            payload["coloring"] = cert.to_json_dict()
    _emit_json(args, payload, start)
    return 0


def cmd_experiment(args):
    start = time.perf_counter()
    if args.sweep_all_subsets:
        rows = sweep_all_line_subsets(args.q, args.n, enum_limit=args.budget_enum)
        _emit_json(args, {"census": rows}, start)
        return 0
    if args.seed is None:
        raise ValueError("--seed is required")
    report = monte_carlo_pipeline(
        args.q,
        args.n,
        args.trials,
        args.seed,
        p=args.p,
        node_budget=args.budget_nodes,
        jobs=args.jobs,
    )
    if args.format == "csv":
        lines = trial_rows(report["records"], include_runtime=not args.no_meta)
        _write_text(args, "\n".join(lines) + "\n")
        return 0
    if args.no_meta:
        for record in report["records"]:
            del record["runtime_ms"]
    _emit_json(args, report, start)
    return 0


def cmd_bounds(args):
    start = time.perf_counter()
    if args.k is not None:
        payload = theorem_qn_params(args.k, args.n)
    else:
        if args.q is None or args.n is None:
            raise ValueError("either --k or both --q and --n are required")
        payload = {"union_bound": aut_union_bound(args.q, args.n)}
        if args.n >= 3:
            payload["chernoff"] = chernoff_report(
                args.q, args.n, trials=args.trials or 0, seed=args.seed
            )
    _emit_json(args, payload, start)
    return 0


def _add_common(sub, q=True, n=True, sample=False, infile=False, budgets=False):
    if q:
        sub.add_argument("--q", type=int, required=True, help="odd prime field size")
    if n:
        sub.add_argument("--n", type=int, required=True, help="dimension")
    if sample:
        sub.add_argument("--p", type=float, default=0.5, help="per-line probability")
        sub.add_argument("--seed", type=int, default=None, help="random seed")
    if infile:
        sub.add_argument("--in", dest="infile", default=None, help="connection set JSON")
    if budgets:
        sub.add_argument("--budget-nodes", type=int, default=200000)
        sub.add_argument("--budget-enum", type=int, default=10**6)
    sub.add_argument("--out", default=None, help="output path (default stdout)")
    sub.add_argument("--no-meta", action="store_true", help="omit timestamps and runtimes")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="linecayley",
        description="Cayley graphs from random line unions: construction and verification",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("lines", help="list the line universe")
    _add_common(sub)
    sub.set_defaults(func=cmd_lines)

    sub = subs.add_parser("sample", help="sample a random connection set")
    _add_common(sub, sample=True)
    sub.set_defaults(func=cmd_sample)

    sub = subs.add_parser("build", help="materialize the Cayley graph")
    _add_common(sub, sample=True, infile=True)
    sub.add_argument("--format", choices=("json", "dimacs"), default="json")
    sub.set_defaults(func=cmd_build)

    sub = subs.add_parser("chi", help="chromatic number with certificates")
    _add_common(sub, sample=True, infile=True, budgets=True)
    sub.set_defaults(func=cmd_chi)

    sub = subs.add_parser("aut", help="automorphism group and dichotomy")
    _add_common(sub, sample=True, infile=True, budgets=True)
    sub.set_defaults(func=cmd_aut)

    sub = subs.add_parser("distinguish", help="distinguishing verdicts")
    _add_common(sub, sample=True, infile=True, budgets=True)
    sub.add_argument("--coloring", default=None, help="coloring JSON to test")
    sub.set_defaults(func=cmd_distinguish)

    sub = subs.add_parser("experiment", help="seeded Monte-Carlo trials")
    _add_common(sub, sample=True, budgets=True)
    sub.add_argument("--trials", type=int, default=20)
    sub.add_argument("--jobs", type=int, default=1)
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--sweep-all-subsets", action="store_true")
    sub.set_defaults(func=cmd_experiment)

    sub = subs.add_parser("bounds", help="closed-form bound evaluation")
    sub.add_argument("--q", type=int, default=None)
    sub.add_argument("--n", type=int, default=None)
    sub.add_argument("--k", type=int, default=None)
    sub.add_argument("--trials", type=int, default=0)
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--out", default=None)
    sub.add_argument("--no-meta", action="store_true")
    sub.set_defaults(func=cmd_bounds)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InvariantViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
