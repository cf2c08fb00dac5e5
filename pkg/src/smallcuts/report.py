"""CSV and JSON serialization of cut lists, similarity sweeps and experiments."""
from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction

from .enumeration import ApproximationSet
from .experiment import ExperimentReport
from .graph import canonicalize
from .similarity import SimilarityReport
from .strategies import StrategyOutcome

CUT_COLUMNS = ["cut_bits", "weight"]
SIMILARITY_COLUMNS = ["rho", "k", "l", "intersection", "es_num", "es_den", "u_sim", "fallback"]
EXPERIMENT_COLUMNS = ["triple_index", "strategy", "rho", "intersection_size", "u_sim",
                      "cut_bits", "weight_on_g3", "failed"]
AGGREGATE_COLUMNS = ["strategy", "sum_all", "pct_of_opt_all", "sum_high_sim",
                     "pct_of_opt_high_sim", "failures"]


def fmt(x) -> str:
    """Shortest exact text for a number; integral floats print without ``.0``."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if math.isfinite(x) and x.is_integer() and abs(x) < 2**53:
        return str(int(x))
    return repr(x)


def _opt_float(s: str) -> float | None:
    return None if s == "" else float(s)


def _opt_int(s: str) -> int | None:
    return None if s == "" else int(s)


def _write(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buf.getvalue()


def _read(text: str, columns) -> list[dict]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != columns:
        raise ValueError(f"expected columns {columns}, got {reader.fieldnames}")
    return list(reader)


# cut lists

def cuts_to_csv(s: ApproximationSet) -> str:
    return _write(CUT_COLUMNS, ([m.cut.bits, fmt(m.weight)] for m in s.members))


def read_cuts_csv(text: str) -> list[tuple[str, float]]:
    return [(canonicalize(r["cut_bits"]).bits, float(r["weight"]))
            for r in _read(text, CUT_COLUMNS)]


def cuts_to_json(s: ApproximationSet) -> str:
    return json.dumps({
        "rho": s.rho,
        "lambda": s.lam,
        "n": s.n,
        "cuts": [{"cut": m.cut.bits, "weight": m.weight} for m in s.members],
    }, indent=2)


# similarity sweeps

def similarity_to_csv(r: SimilarityReport) -> str:
    return _write(SIMILARITY_COLUMNS, (
        [fmt(row.rho), row.k, row.l, row.intersection, row.es.numerator,
         row.es.denominator, fmt(row.u_sim), fmt(row.fallback)]
        for row in r.rows))


def read_similarity_csv(text: str) -> list[dict]:
    return [{
        "rho": float(r["rho"]),
        "k": int(r["k"]),
        "l": int(r["l"]),
        "intersection": int(r["intersection"]),
        "es": Fraction(int(r["es_num"]), int(r["es_den"])),
        "u_sim": float(r["u_sim"]),
        "fallback": r["fallback"] == "1",
    } for r in _read(text, SIMILARITY_COLUMNS)]


def similarity_to_json(r: SimilarityReport) -> str:
    return json.dumps({
        "rho_star": r.rho_star,
        "max_u_sim": r.max_u_sim,
        "lambda1": r.set1.lam,
        "lambda2": r.set2.lam,
        "star_intersection": [c.bits for c in r.star_intersection],
        "rows": [{
            "rho": row.rho, "k": row.k, "l": row.l, "intersection": row.intersection,
            "es_num": row.es.numerator, "es_den": row.es.denominator,
            "u_sim": row.u_sim, "fallback": row.fallback,
        } for row in r.rows],
    }, indent=2)


# strategy outcomes and experiments

def outcome_row(index, o: StrategyOutcome) -> list[str]:
    return [
        "" if index is None else str(index),
        o.strategy,
        fmt(o.rho),
        fmt(o.intersection_size),
        fmt(o.u_sim),
        "" if o.cut is None else o.cut.bits,
        fmt(o.weight),
        fmt(o.failed),
    ]


def outcome_to_dict(o: StrategyOutcome) -> dict:
    return {
        "strategy": o.strategy,
        "rho": o.rho,
        "intersection_size": o.intersection_size,
        "u_sim": o.u_sim,
        "cut_bits": None if o.cut is None else o.cut.bits,
        "weight_on_g3": o.weight,
        "seed": o.seed,
        "failed": o.failed,
    }


def outcomes_to_csv(outcomes, index=None) -> str:
    return _write(EXPERIMENT_COLUMNS, (outcome_row(index, o) for o in outcomes))


def experiment_to_csv(r: ExperimentReport) -> str:
    return _write(EXPERIMENT_COLUMNS,
                  (outcome_row(t.index, o) for t in r.triples for o in t.outcomes))


def read_experiment_csv(text: str) -> list[dict]:
    return [{
        "triple_index": _opt_int(r["triple_index"]),
        "strategy": r["strategy"],
        "rho": _opt_float(r["rho"]),
        "intersection_size": _opt_int(r["intersection_size"]),
        "u_sim": _opt_float(r["u_sim"]),
        "cut_bits": r["cut_bits"] or None,
        "weight_on_g3": _opt_float(r["weight_on_g3"]),
        "failed": r["failed"] == "1",
    } for r in _read(text, EXPERIMENT_COLUMNS)]


def aggregates_to_csv(r: ExperimentReport) -> str:
    return _write(AGGREGATE_COLUMNS, (
        [a.strategy, fmt(a.sum_all), fmt(a.pct_of_opt_all), fmt(a.sum_high_sim),
         fmt(a.pct_of_opt_high_sim), a.failures]
        for a in r.aggregates))


def read_aggregates_csv(text: str) -> list[dict]:
    return [{
        "strategy": r["strategy"],
        "sum_all": float(r["sum_all"]),
        "pct_of_opt_all": float(r["pct_of_opt_all"]),
        "sum_high_sim": float(r["sum_high_sim"]),
        "pct_of_opt_high_sim": float(r["pct_of_opt_high_sim"]),
        "failures": int(r["failures"]),
    } for r in _read(text, AGGREGATE_COLUMNS)]


def experiment_to_json(r: ExperimentReport) -> str:
    return json.dumps({
        "median_u_sim": r.median_u_sim,
        "high_sim_triples": r.high_sim_count,
        "aggregates": [vars(a) for a in r.aggregates],
        "triples": [{
            "index": t.index,
            "u_sim": t.u_sim,
            "outcomes": [outcome_to_dict(o) for o in t.outcomes],
        } for t in r.triples],
    }, indent=2)


def aggregates_table(r: ExperimentReport) -> str:
    """Fixed-width table in the layout of the usual results tables."""
    n_all = len(r.triples)
    lines = [f"{'':<18} {'sum of all':>14} {'% of opt':>9} {'sum U>=med':>14} {'% of opt':>9} {'failed':>6}",
             f"{'':<18} {f'({n_all})':>14} {'':>9} {f'({r.high_sim_count})':>14}"]
    for a in r.aggregates:
        lines.append(f"{a.strategy:<18} {a.sum_all:>14.2f} {a.pct_of_opt_all:>8.2f}% "
                     f"{a.sum_high_sim:>14.2f} {a.pct_of_opt_high_sim:>8.2f}% {a.failures:>6}")
    return "\n".join(lines) + "\n"
