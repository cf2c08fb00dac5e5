"""Enumeration of near-minimum cuts.

The Monte Carlo path runs the recursive contraction tree with a reduction
factor of ``2 ** (1 / (2 * rho))`` and evaluates every cut once the
contracted graph is small.  A deterministic Stoer-Wagner minimum cut fixes
the threshold ``rho * lambda`` and an exhaustive enumerator serves as the
oracle for small graphs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .graph import ContractionState, Cut, Graph, WeightedCut, cut_weight, cut_weights

REL_TOL = 1e-9
ABS_TOL = 1e-12
# extra slack for the pruning done inside the contraction tree, where weights
# are summed in a different order than the final exact re-evaluation
_PRUNE_SLACK = 1e-7
EXHAUSTIVE_LIMIT = 20


class EnumerationLimitError(ValueError):
    """Raised when exhaustive enumeration is asked for too many vertices."""


def threshold(rho: float, lam: float) -> float:
    """Largest weight admitted into the rho-approximation set."""
    return rho * lam * (1.0 + REL_TOL) + ABS_TOL


def default_repetitions(n: int, c: float = 10.0) -> int:
    return max(1, math.ceil(c * math.log(n) ** 2))


def reduction_factor(rho: float) -> float:
    return 2.0 ** (1.0 / (2.0 * rho))


def base_size(rho: float) -> int:
    return max(2 * math.ceil(rho), 6)


@dataclass(frozen=True)
class EnumerationConfig:
    rho: float = 1.0
    repetitions: int | None = None
    repetition_constant: float = 10.0
    seed: int = 0
    weighted: bool = True
    backend: str | None = None

    def __post_init__(self):
        if not self.rho >= 1:
            raise ValueError(f"rho must be >= 1, got {self.rho}")
        if self.repetitions is not None and self.repetitions < 1:
            raise ValueError("repetitions must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def repetitions_for(self, n: int) -> int:
        if self.repetitions is not None:
            return self.repetitions
        return default_repetitions(n, self.repetition_constant)


@dataclass(frozen=True)
class ApproximationSet:
    """Cuts of weight at most ``rho * lam``, sorted by canonical mask."""

    rho: float
    lam: float
    n: int
    members: tuple[WeightedCut, ...] = field(default=())

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, cut: Cut):
        return cut.mask in self.masks_set

    @property
    def masks(self) -> list[int]:
        return [m.cut.mask for m in self.members]

    @property
    def masks_set(self) -> frozenset[int]:
        return frozenset(self.masks)

    @property
    def cuts(self) -> list[Cut]:
        return [m.cut for m in self.members]

    @property
    def threshold(self) -> float:
        return threshold(self.rho, self.lam)

    def restrict(self, rho: float) -> ApproximationSet:
        """Subset for a smaller ``rho`` by weight filtering."""
        if rho > self.rho * (1 + REL_TOL):
            raise ValueError(f"cannot widen a set built for rho={self.rho} to {rho}")
        limit = threshold(rho, self.lam)
        return ApproximationSet(rho, self.lam, self.n,
                                tuple(m for m in self.members if m.weight <= limit))


def _build_set(n: int, rho: float, lam: float, masks, weights) -> ApproximationSet:
    limit = threshold(rho, lam)
    members = sorted(
        (WeightedCut(Cut(m, n), float(w)) for m, w in zip(masks, weights) if w <= limit),
        key=lambda wc: wc.cut.mask,
    )
    return ApproximationSet(rho, lam, n, tuple(members))


def stoer_wagner_min_cut(g: Graph) -> WeightedCut:
    """Deterministic global minimum cut (Stoer-Wagner, O(n^3))."""
    n = g.n
    w = np.array(g.weights, dtype=np.float64)
    groups = [1 << i for i in range(n)]
    active = list(range(n))
    best = math.inf
    best_mask = 0
    while len(active) > 1:
        idx = np.array(active)
        k = len(active)
        used = np.zeros(k, dtype=bool)
        conn = w[idx[0], idx].copy()
        used[0] = True
        prev, last = 0, 0
        phase = 0.0
        for _ in range(1, k):
            cand = np.where(used, -np.inf, conn)
            sel = int(np.argmax(cand))
            prev, last = last, sel
            phase = conn[sel]
            used[sel] = True
            conn += w[idx[sel], idx]
        if phase < best:
            best = phase
            best_mask = groups[idx[last]]
        a, b = idx[prev], idx[last]
        w[a, :] += w[b, :]
        w[:, a] += w[:, b]
        w[a, a] = 0.0
        groups[a] |= groups[b]
        active.remove(b)
    full = (1 << n) - 1
    if best_mask & 1:
        best_mask ^= full
    cut = Cut(best_mask, n)
    return WeightedCut(cut, cut_weight(g, cut))


def brute_force_approximation_set(g: Graph, rho: float,
                                  limit: int = EXHAUSTIVE_LIMIT) -> ApproximationSet:
    """Exhaustive enumeration of all ``2**(n-1) - 1`` cuts.

    Weights come from a vectorized evaluation independent of the
    contraction kernels, so this is usable as an oracle for them.
    """
    n = g.n
    if n > limit:
        raise EnumerationLimitError(f"exhaustive enumeration refused for n={n} > {limit}")
    if rho < 1:
        raise ValueError(f"rho must be >= 1, got {rho}")
    masks, weights = all_cut_weights(g)
    lam = float(weights.min())
    return _build_set(n, rho, lam, masks.tolist(), weights.tolist())


def all_cut_weights(g: Graph, chunk: int = 1 << 15) -> tuple[np.ndarray, np.ndarray]:
    """Masks (vertex 0 excluded) and weights of every cut of ``g``."""
    n = g.n
    masks = np.arange(1, 1 << (n - 1), dtype=np.int64) << 1
    shifts = np.arange(n, dtype=np.int64)
    out = np.empty(len(masks))
    for start in range(0, len(masks), chunk):
        block = masks[start:start + chunk]
        bits = ((block[:, None] >> shifts) & 1).astype(np.float64)
        out[start:start + chunk] = ((bits @ g.weights) * (1.0 - bits)).sum(axis=1)
    return masks, out


def contract(s: ContractionState, target: int, seed: int, weighted: bool = True,
             backend: str | None = None) -> ContractionState:
    """Randomly contract edges until ``target`` super-vertices remain.

    Edges are picked with probability proportional to their current weight,
    or uniformly among positive-weight pairs when ``weighted`` is false.  If
    every remaining weight is zero an arbitrary pair is merged.
    """
    if not 2 <= target <= s.count:
        raise ValueError(f"target must lie in [2, {s.count}], got {target}")
    w, origins = _backend.contract_state(s.weights, s.origins, target, seed, weighted, backend)
    return ContractionState(np.array(w, dtype=np.float64).reshape(len(origins), len(origins)),
                            origins, s.n)


def recursive_contract(g: Graph, rho: float, seed: int, weighted: bool = True,
                       max_weight: float | None = None,
                       backend: str | None = None) -> list[WeightedCut]:
    """One run of the recursion tree.

    Returns every distinct cut seen at the leaves with its weight in ``g``.
    ``max_weight`` prunes leaf cuts heavier than it (checked with a small
    slack on the contracted weights).
    """
    if rho < 1:
        raise ValueError(f"rho must be >= 1, got {rho}")
    prune = math.inf if max_weight is None else max_weight * (1 + _PRUNE_SLACK) + _PRUNE_SLACK
    masks = _backend.recursive_contract(g.weights, reduction_factor(rho), base_size(rho),
                                        seed, weighted, prune, backend)
    weights = cut_weights(g, masks)
    return [WeightedCut(Cut(m, g.n), w) for m, w in zip(masks, weights)]


def approximation_set(g: Graph, cfg: EnumerationConfig) -> ApproximationSet:
    """Monte Carlo rho-approximation set.

    Runs ``cfg.repetitions`` independent trees seeded by
    ``mix_seed(cfg.seed, i)`` and unions the results together with the
    deterministic minimum cut.  Deterministic for a given graph and config.
    """
    n = g.n
    sw = stoer_wagner_min_cut(g)
    limit = threshold(cfg.rho, sw.weight)
    prune = limit * (1 + _PRUNE_SLACK) + _PRUNE_SLACK
    reduction, base = reduction_factor(cfg.rho), base_size(cfg.rho)
    found = {sw.cut.mask}
    for i in range(cfg.repetitions_for(n)):
        seed = _backend.mix_seed(cfg.seed, i)
        found.update(_backend.recursive_contract(g.weights, reduction, base, seed,
                                                 cfg.weighted, prune, cfg.backend))
    masks = sorted(found)
    weights = cut_weights(g, masks)
    lam = min(sw.weight, min(weights))
    return _build_set(n, cfg.rho, lam, masks, weights)
