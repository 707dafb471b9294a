"""Command-line front end.

Exit codes: 0 ok, 1 usage, 2 parse, 3 state, 4 validation failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .engine import InferenceSession
from .errors import EngineStateError, ModelParseError, ValuationError
from .jointree import build
from .metrics import QuerySpec, parse_schedule, run_anytime, trace_csv
from .modelio import load_model
from .potential import Potential
from .semiring import get_semiring

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_STATE, EXIT_VALIDATION = 0, 1, 2, 3, 4

# exact reference only when the largest node table stays below this size
DESK_SCALE = 10 ** 6


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(args):
    model = load_model(args.model)
    if getattr(args, "semiring", None):
        model = model.with_semiring(get_semiring(args.semiring))
    return model


def _render(phi: Potential, normalize: bool) -> str:
    if not normalize or not phi.entries:
        return phi.to_text()
    total = sum((Fraction(v) for _, v in phi.entries), Fraction(0))
    lines = [phi.to_text().splitlines()[0] + " (normalized)"]
    for config, value in phi.entries:
        labels = ",".join(phi.domain.labels(config)) or "()"
        lines.append(f"{labels} : {float(Fraction(value) / total):.9f}")
    return "\n".join(lines) + "\n"


def cmd_solve(args):
    model = _load(args)
    session = InferenceSession(build(model.factors, args.query))
    sys.stdout.write(_render(session.inward(None), args.normalize))
    return EXIT_OK


def cmd_approx(args):
    model = _load(args)
    session = InferenceSession(build(model.factors, args.query))
    root = session.inward_approx(args.k)
    sys.stdout.write(_render(root, args.normalize))
    print(f"# attempts {session.attempts}", file=sys.stderr)
    return EXIT_OK


def cmd_anytime(args):
    model = _load(args)
    schedule = parse_schedule(args.schedule)
    tree = build(model.factors, args.query)
    exact = None
    estimate = None
    if not args.estimate and tree.max_node_size() <= DESK_SCALE:
        exact = InferenceSession(tree).inward(None)
    else:
        estimate = dict(m=tree.max_frame(), omega=tree.width(), c=1.0, n=len(model.factors))
        print("# epsilon column is the model-based estimate, not a measured error",
              file=sys.stderr)
    spec = QuerySpec(list(args.query), schedule, wall_clock=args.wall_clock)
    points, session = run_anytime(model.factors, spec, exact=exact, estimate=estimate)
    text = trace_csv(points)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.session_trace:
        Path(args.session_trace).write_text("\n".join(session.trace_lines()) + "\n",
                                            encoding="utf-8")
    if args.print_root:
        sys.stderr.write(_render(session.root_message(), args.normalize))
    return EXIT_OK


def cmd_info(args):
    model = _load(args)
    query = args.query or [model.factors[0].domain.names[0]] if model.factors else []
    tree = build(model.factors, query)
    m, omega = tree.max_frame(), tree.width()
    print(f"variables {len(model.variables)}")
    print(f"valuations {len(model.factors)}")
    print(f"semiring {model.semiring.name}")
    print(f"nodes {len(tree.nodes)}")
    print(f"edges {len(tree.edges())}")
    print(f"omega {omega}")
    print(f"treewidth {omega - 1}")
    print(f"m {m}")
    print(f"m^omega {m ** omega}")
    print(f"largest node table {tree.max_node_size()}")
    if args.outline:
        sys.stdout.write(tree.outline())
    return EXIT_OK


def cmd_validate(args):
    from .validation import validate
    ok = validate(seed=args.seed, count=args.count, workers=args.workers, out=sys.stdout)
    return EXIT_OK if ok else EXIT_VALIDATION


def _query(text):
    names = [q.strip() for q in text.split(",") if q.strip()]
    return names


def make_parser():
    ap = _Parser(prog="anytime-inference",
                 description="Anytime inference over semiring valuations on binary join trees.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def model_args(p, query_required=True):
        p.add_argument("--model", required=True, help=".net, .bif or .dnf file")
        p.add_argument("--query", type=_query, required=query_required,
                       help="comma-separated query variables (may be empty)")
        p.add_argument("--semiring", help="override the model semiring, e.g. arith-float")
        p.add_argument("--normalize", action="store_true", help="print normalized marginals")

    p = sub.add_parser("solve", help="exact marginal")
    model_args(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("anytime", help="inward then refine over a budget schedule")
    model_args(p)
    p.add_argument("--schedule", required=True,
                   help="budgets t0,t1,...; 'unlimited' (or +unlimited) for no bound")
    p.add_argument("--wall-clock", action="store_true", help="budgets are seconds")
    p.add_argument("--estimate", action="store_true",
                   help="report the model-based epsilon even when exact is computable")
    p.add_argument("--out", help="write the CSV trace here instead of stdout")
    p.add_argument("--session-trace", help="write per-call JSON records here")
    p.add_argument("--print-root", action="store_true", help="print the final root to stderr")
    p.set_defaults(func=cmd_anytime)

    p = sub.add_parser("approx", help="inward pass with at most k entries per product")
    model_args(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("validate", help="run the law and oracle suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=50, help="random instances per suite")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("info", help="join tree statistics")
    model_args(p, query_required=False)
    p.add_argument("--outline", action="store_true")
    p.set_defaults(func=cmd_info)
    return ap


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ModelParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except EngineStateError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_STATE
    except (ValuationError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
