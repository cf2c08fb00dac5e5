"""Random complete-graph generators, with and without planted small cuts."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .graph import Graph

UNIFORM = "uniform-random"
PLANTED_RANGE = "planted-range"
PLANTED_FIXED_COST = "planted-fixed-cost"
KINDS = (UNIFORM, PLANTED_RANGE, PLANTED_FIXED_COST)
DEFAULT_PLANTED_CUTS = 3


class GenerationError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    weight_range: tuple[int, int]
    small_range: tuple[int, int] | None = None
    planted_cut_count: int | None = None
    planted_cut_cost: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}; expected one of {KINDS}")
        if self.n < 2:
            raise ValueError("n must be at least 2")
        object.__setattr__(self, "weight_range", _range(self.weight_range, "weight_range"))
        planted = self.kind != UNIFORM
        if planted and self.planted_cut_count is None:
            object.__setattr__(self, "planted_cut_count", DEFAULT_PLANTED_CUTS)
        if not planted and self.planted_cut_count is not None:
            raise ValueError("planted_cut_count only applies to planted kinds")
        if planted and self.planted_cut_count < 1:
            raise ValueError("planted_cut_count must be positive")
        if (self.kind == PLANTED_RANGE) != (self.small_range is not None):
            raise ValueError("small_range is required for, and only for, planted-range")
        if self.small_range is not None:
            object.__setattr__(self, "small_range", _range(self.small_range, "small_range"))
        if (self.kind == PLANTED_FIXED_COST) != (self.planted_cut_cost is not None):
            raise ValueError("planted_cut_cost is required for, and only for, planted-fixed-cost")
        if self.planted_cut_cost is not None and self.planted_cut_cost < 0:
            raise ValueError("planted_cut_cost must be non-negative")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def planted(self) -> bool:
        return self.kind != UNIFORM

    @classmethod
    def from_dict(cls, d: dict) -> GeneratorSpec:
        known = {"kind", "n", "weight_range", "small_range", "planted_cut_count",
                 "planted_cut_cost", "seed"}
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown generator fields: {sorted(extra)}")
        return cls(**d)

    def to_dict(self) -> dict:
        d = asdict(self)
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in d.items() if v is not None}


def _range(r, name) -> tuple[int, int]:
    lo, hi = (int(x) for x in r)
    if lo < 0 or lo > hi:
        raise ValueError(f"{name} must satisfy 0 <= lo <= hi, got {r}")
    return lo, hi


def _symmetric(rng: np.random.Generator, n: int, lo: int, hi: int) -> np.ndarray:
    w = np.triu(rng.integers(lo, hi + 1, size=(n, n)), 1).astype(np.float64)
    return w + w.T


def crossing_pairs(mask: int, n: int) -> np.ndarray:
    """Boolean matrix of vertex pairs separated by the cut ``mask``."""
    side = (mask >> np.arange(n)) & 1
    return side[:, None] != side[None, :]


def planted_cuts(rng: np.random.Generator, n: int, count: int) -> list[int]:
    """Uniform canonical non-trivial cuts; repeats and crossings are allowed."""
    masks = []
    while len(masks) < count:
        bits = rng.integers(0, 2, size=n - 1)
        if bits.any():
            masks.append(sum(1 << (i + 1) for i, b in enumerate(bits) if b))
    return masks


def _fix_cut_costs(w: np.ndarray, crosses: list[np.ndarray], cost: float,
                   sweeps: int = 10_000, tol: float = 1e-13) -> np.ndarray:
    # iterative proportional scaling: planted cuts share edges, so one pass is not enough
    upper = np.triu(np.ones_like(w, dtype=bool), 1)
    crosses = [c & upper for c in crosses]
    w = np.triu(w, 1)
    for _ in range(sweeps):
        worst = 0.0
        for c in crosses:
            current = w[c].sum()
            if current == 0:
                if cost == 0:
                    continue
                raise GenerationError("a planted cut has no positive edge to scale")
            worst = max(worst, abs(current - cost) / max(cost, 1.0))
            w[c] *= cost / current
        if worst <= tol:
            break
    else:
        raise GenerationError("planted cut costs did not converge")
    return w + w.T


def _draw(spec: GeneratorSpec, rng: np.random.Generator, planted: list[int]) -> Graph:
    n = spec.n
    w = _symmetric(rng, n, *spec.weight_range)
    if not planted:
        return Graph(w)
    crosses = [crossing_pairs(m, n) for m in planted]
    if spec.kind == PLANTED_RANGE:
        any_cross = np.logical_or.reduce(crosses)
        small = _symmetric(rng, n, *spec.small_range)
        w = np.where(any_cross, small, w)
    else:
        w = _fix_cut_costs(w, crosses, float(spec.planted_cut_cost))
    return Graph(w)


def _check_feasible(spec: GeneratorSpec):
    if spec.kind == PLANTED_FIXED_COST and spec.planted_cut_cost == 0 and spec.weight_range[0] > 0:
        raise GenerationError("zero planted cost contradicts a positive weight range")


def generate(spec: GeneratorSpec) -> Graph:
    """One graph, deterministic in ``spec.seed``."""
    _check_feasible(spec)
    rng = np.random.default_rng(spec.seed)
    planted = planted_cuts(rng, spec.n, spec.planted_cut_count) if spec.planted else []
    return _draw(spec, rng, planted)


def generate_triple(spec: GeneratorSpec, triple_seed: int) -> tuple[Graph, Graph, Graph]:
    """Three graphs; for planted kinds they share one planted cut set."""
    _check_feasible(spec)
    structure, *children = np.random.SeedSequence(triple_seed).spawn(4)
    planted = (planted_cuts(np.random.default_rng(structure), spec.n, spec.planted_cut_count)
               if spec.planted else [])
    g1, g2, g3 = (_draw(spec, np.random.default_rng(c), planted) for c in children)
    return g1, g2, g3


def triple_planted_cuts(spec: GeneratorSpec, triple_seed: int) -> list[int]:
    """The planted cut masks used by :func:`generate_triple` for this seed."""
    structure = np.random.SeedSequence(triple_seed).spawn(4)[0]
    return planted_cuts(np.random.default_rng(structure), spec.n, spec.planted_cut_count)


def generate_similar_triple(spec: GeneratorSpec, triple_seed: int) -> tuple[Graph, Graph, Graph]:
    if not spec.planted:
        raise ValueError("similar triples need a planted generator kind")
    return generate_triple(spec, triple_seed)
