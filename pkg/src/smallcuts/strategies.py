"""Cut selection strategies for predicting a good cut of a third instance.

Each strategy sees two graphs, picks a cut, and is scored by that cut's
weight in the held-out graph.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .enumeration import EnumerationConfig, stoer_wagner_min_cut
from .graph import Cut, Graph, cut_weight
from .similarity import DEFAULT_RHO_MAX, SimilarityReport, sweep_rho_star

AVERAGE = "Average"
FIRST_INTERSECTION = "FirstIntersection"
BEST_SIMILARITY = "BestSimilarity"
OPTIMUM = "Optimum"
STRATEGIES = (AVERAGE, FIRST_INTERSECTION, BEST_SIMILARITY, OPTIMUM)


@dataclass(frozen=True)
class StrategyOutcome:
    strategy: str
    cut: Cut | None
    weight: float | None
    rho: float | None = None
    intersection_size: int | None = None
    u_sim: float | None = None
    seed: int | None = None

    @property
    def failed(self) -> bool:
        return self.cut is None


class StrategyFailed(RuntimeError):
    """No usable intersection below ``rho_max``; carries the diagnostics."""

    def __init__(self, outcome: StrategyOutcome, message: str):
        self.outcome = outcome
        super().__init__(message)


def _check_sizes(*graphs: Graph):
    if len({g.n for g in graphs}) != 1:
        raise ValueError("all graphs must have the same vertex count")


def _pick(cuts, seed: int) -> Cut:
    return cuts[int(np.random.default_rng(seed).integers(len(cuts)))]


def strategy_average(g1: Graph, g2: Graph, g3: Graph) -> StrategyOutcome:
    """Minimum cut of the edge-wise sum of the two known graphs."""
    _check_sizes(g1, g2, g3)
    cut = stoer_wagner_min_cut(g1 + g2).cut
    return StrategyOutcome(AVERAGE, cut, cut_weight(g3, cut))


def strategy_optimum(g3: Graph) -> StrategyOutcome:
    best = stoer_wagner_min_cut(g3)
    return StrategyOutcome(OPTIMUM, best.cut, best.weight)


def _report(g1, g2, cfg, rho_max, report, exact):
    if report is not None:
        return report
    return sweep_rho_star(g1, g2, cfg, rho_max, exact=exact)


def strategy_first_intersection(g1: Graph, g2: Graph, g3: Graph,
                                cfg: EnumerationConfig | None = None, seed: int = 0, *,
                                rho_max: float = DEFAULT_RHO_MAX,
                                report: SimilarityReport | None = None,
                                exact: bool = False) -> StrategyOutcome:
    """Random cut from the first non-empty intersection on the breakpoint grid."""
    _check_sizes(g1, g2, g3)
    report = _report(g1, g2, cfg, rho_max, report, exact)
    row = report.first_nonempty()
    if row is None:
        raise StrategyFailed(
            StrategyOutcome(FIRST_INTERSECTION, None, None, seed=seed, intersection_size=0),
            f"approximation sets do not intersect up to rho={rho_max}")
    cut = _pick(report.intersection_at(row.rho), seed)
    return StrategyOutcome(FIRST_INTERSECTION, cut, cut_weight(g3, cut), row.rho,
                           row.intersection, row.u_sim, seed)


def strategy_best_similarity(g1: Graph, g2: Graph, g3: Graph,
                             cfg: EnumerationConfig | None = None, seed: int = 0, *,
                             rho_max: float = DEFAULT_RHO_MAX,
                             report: SimilarityReport | None = None,
                             exact: bool = False) -> StrategyOutcome:
    """Random cut from the intersection at the similarity-maximizing rho."""
    _check_sizes(g1, g2, g3)
    report = _report(g1, g2, cfg, rho_max, report, exact)
    cuts = report.star_intersection
    if not cuts:
        raise StrategyFailed(
            StrategyOutcome(BEST_SIMILARITY, None, None, report.rho_star, 0, report.max_u_sim, seed),
            f"approximation sets do not intersect up to rho={rho_max}")
    cut = _pick(cuts, seed)
    return StrategyOutcome(BEST_SIMILARITY, cut, cut_weight(g3, cut), report.rho_star,
                           len(cuts), report.max_u_sim, seed)
