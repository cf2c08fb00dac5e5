"""Command line interface.

Exit status is 0 on success, 1 on bad input and 2 when a strategy finds no
intersection; errors are reported as one JSON object on stderr.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import report
from .enumeration import (
    EnumerationConfig,
    EnumerationLimitError,
    approximation_set,
    brute_force_approximation_set,
    stoer_wagner_min_cut,
)
from .experiment import DEFAULT_TRIPLES, run_experiment
from .generators import GenerationError, GeneratorSpec
from .graph import GraphFormatError, read_graph
from .similarity import DEFAULT_RHO_MAX, sweep_rho_star
from .strategies import (
    StrategyFailed,
    strategy_average,
    strategy_best_similarity,
    strategy_first_intersection,
    strategy_optimum,
)

EXIT_INPUT = 1
EXIT_STRATEGY = 2

STRATEGY_NAMES = {
    "average": "Average",
    "first-intersection": "FirstIntersection",
    "best-similarity": "BestSimilarity",
    "optimum": "Optimum",
}


class InputError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--repetitions", type=int, default=None,
                   help="contraction trees per enumeration (default ceil(10 ln^2 n))")
    p.add_argument("--out", default=None, help="write the main output here instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--log-weights", action="store_true",
                   help="transform input weights with w -> ln(1 + w)")
    p.add_argument("--backend", choices=("compiled", "python"), default=None)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="smallcuts", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mincut", parents=[common], help="deterministic minimum cut")
    p.add_argument("file")

    p = sub.add_parser("enumerate", parents=[common], help="rho-approximation set")
    p.add_argument("file")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--exact", action="store_true", help="exhaustive enumeration")

    p = sub.add_parser("similarity", parents=[common], help="unexpected similarity sweep")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--rho-max", type=float, default=DEFAULT_RHO_MAX)
    p.add_argument("--exact", action="store_true")

    p = sub.add_parser("predict", parents=[common], help="apply one strategy to a triple")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("file3")
    p.add_argument("--strategy", choices=sorted(STRATEGY_NAMES), required=True)
    p.add_argument("--rho-max", type=float, default=DEFAULT_RHO_MAX)
    p.add_argument("--exact", action="store_true")

    p = sub.add_parser("experiment", parents=[common], help="run strategies over generated triples")
    p.add_argument("--spec", required=True, help="JSON generator spec")
    p.add_argument("--triples", type=int, default=None,
                   help=f"number of triples (default: spec file, else {DEFAULT_TRIPLES})")
    p.add_argument("--rho-max", type=float, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--aggregate-out", default=None, help="write the aggregate CSV here")
    return parser


def _graph(path, args):
    try:
        g = read_graph(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except GraphFormatError as exc:
        raise InputError(f"{path}: {exc}") from None
    return g.log_weights() if args.log_weights else g


def _cfg(args, rho=1.0) -> EnumerationConfig:
    return EnumerationConfig(rho=rho, repetitions=args.repetitions, seed=args.seed,
                             backend=args.backend)


def _emit(text: str, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_mincut(args):
    best = stoer_wagner_min_cut(_graph(args.file, args))
    if args.format == "json":
        return json.dumps({"weight": best.weight, "cut": best.cut.bits}) + "\n"
    return report._write(report.CUT_COLUMNS, [[best.cut.bits, report.fmt(best.weight)]])


def cmd_enumerate(args):
    g = _graph(args.file, args)
    if args.exact:
        s = brute_force_approximation_set(g, args.rho)
    else:
        s = approximation_set(g, _cfg(args, args.rho))
    return report.cuts_to_json(s) + "\n" if args.format == "json" else report.cuts_to_csv(s)


def cmd_similarity(args):
    g1, g2 = _graph(args.file1, args), _graph(args.file2, args)
    r = sweep_rho_star(g1, g2, _cfg(args), args.rho_max, exact=args.exact)
    return report.similarity_to_json(r) + "\n" if args.format == "json" else report.similarity_to_csv(r)


def cmd_predict(args):
    g1, g2, g3 = (_graph(f, args) for f in (args.file1, args.file2, args.file3))
    name = STRATEGY_NAMES[args.strategy]
    if name == "Average":
        o = strategy_average(g1, g2, g3)
    elif name == "Optimum":
        o = strategy_optimum(g3)
    else:
        fn = strategy_first_intersection if name == "FirstIntersection" else strategy_best_similarity
        o = fn(g1, g2, g3, _cfg(args), args.seed, rho_max=args.rho_max, exact=args.exact)
    if args.format == "json":
        return json.dumps(report.outcome_to_dict(o)) + "\n"
    return report.outcomes_to_csv([o])


def cmd_experiment(args):
    try:
        with open(args.spec, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"{args.spec}: {exc.strerror}") from None
    if not isinstance(data, dict):
        raise InputError("spec file must hold a JSON object")
    triples = data.pop("triples", DEFAULT_TRIPLES)
    rho_max = data.pop("rho_max", DEFAULT_RHO_MAX)
    spec = GeneratorSpec.from_dict(data)
    if args.triples is not None:
        triples = args.triples
    if args.rho_max is not None:
        rho_max = args.rho_max
    r = run_experiment(spec, triples, _cfg(args), rho_max, workers=args.workers)
    if args.format == "json":
        return report.experiment_to_json(r) + "\n"
    if args.aggregate_out:
        _emit(report.aggregates_to_csv(r), args.aggregate_out)
    else:
        sys.stderr.write(report.aggregates_table(r))
    return report.experiment_to_csv(r)


COMMANDS = {
    "mincut": cmd_mincut,
    "enumerate": cmd_enumerate,
    "similarity": cmd_similarity,
    "predict": cmd_predict,
    "experiment": cmd_experiment,
}


def _fail(kind: str, message: str, code: int, **extra) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message, **extra}) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _emit(COMMANDS[args.command](args), args.out)
    except StrategyFailed as exc:
        return _fail("strategy-failed", str(exc), EXIT_STRATEGY,
                     diagnostics=report.outcome_to_dict(exc.outcome))
    except (InputError, EnumerationLimitError, GenerationError, json.JSONDecodeError,
            ValueError, TypeError) as exc:
        return _fail("input", str(exc), EXIT_INPUT)
    return 0


if __name__ == "__main__":
    sys.exit(main())
