"""Expected intersection sizes, unexpected similarity and the rho sweep.

The expected intersection of two random approximation sets of sizes ``k``
and ``l`` is modelled by families of pairwise non-crossing cuts, counted
with Stirling numbers of the second kind.  All combinatorics use exact
integers; the ratio only becomes a float for reporting.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._backend import mix_seed
from .enumeration import (
    REL_TOL,
    ApproximationSet,
    EnumerationConfig,
    approximation_set,
    brute_force_approximation_set,
    threshold,
)
from .graph import Cut, Graph

MAX_TABLE_N = 10_000
DEFAULT_RHO_MAX = 3.0


class UndefinedSimilarityError(ZeroDivisionError):
    pass


def stirling2_table(n: int) -> list[list[int]]:
    """``S[a][b]`` for ``0 <= b <= a <= n`` via ``S(a, b) = b S(a-1, b) + S(a-1, b-1)``."""
    table = [[1]]
    for a in range(1, n + 1):
        prev = table[-1]
        row = [0] * (a + 1)
        for b in range(1, a + 1):
            row[b] = (b * prev[b] if b < a else 0) + prev[b - 1]
        table.append(row)
    return table


def binomial_row(n: int) -> list[int]:
    """``C(n, 0) .. C(n, n)`` using ``C(n, i+1) = C(n, i) (n - i) / (i + 1)``."""
    row = [1]
    for i in range(n):
        row.append(row[-1] * (n - i) // (i + 1))
    return row


@dataclass(frozen=True)
class CombinatoricsTables:
    n: int
    binomials: tuple[int, ...]
    stirlings: tuple[tuple[int, ...], ...]
    # inner[i][x] = sum_{j<x} S(i, j+1) S(n-i, x-j), for 1 <= i <= n-1, 1 <= x <= n
    inner: tuple[tuple[int, ...], ...]

    def stirling(self, a: int, b: int) -> int:
        if b < 0 or b > a:
            return 0
        return self.stirlings[a][b]

    @property
    def cut_count(self) -> int:
        return 2 ** (self.n - 1) - 1


@lru_cache(maxsize=32)
def build_tables(n: int) -> CombinatoricsTables:
    if n < 2:
        raise ValueError("tables need n >= 2")
    if n > MAX_TABLE_N:
        raise MemoryError(f"refusing to build O(n^3) tables for n={n}")
    S = stirling2_table(n)

    def s(a, b):
        return S[a][b] if 0 <= b <= a else 0

    inner = [()]
    for i in range(1, n):
        row = [0] * (n + 1)
        for x in range(1, n + 1):
            row[x] = sum(s(i, j + 1) * s(n - i, x - j) for j in range(x))
        inner.append(tuple(row))
    return CombinatoricsTables(n, tuple(binomial_row(n)), tuple(tuple(r) for r in S), tuple(inner))


def expected_intersection(t: CombinatoricsTables, k: int, l: int, *,
                          printed: bool = False) -> tuple[Fraction, bool]:
    """Expected ``|F1 & F2|`` for random sets of ``k`` and ``l`` non-crossing cuts.

    Averaging over all pairs of families, the count becomes a sum over the
    size ``i`` of one cut side::

        Es(k, l) = sum_i C(n,i) I(i,k) I(i,l)
                   / (S(n,k+1) S(n,l+1) (2^(k+1) - 2) (2^(l+1) - 2))

    with ``I(i, x) = sum_{j<x} S(i, j+1) S(n-i, x-j)``.  ``printed=True``
    uses ``S(i, l+1)`` in place of ``S(i, j+1)`` in the second factor.

    Returns ``(value, fallback)``.  When ``k + 1`` or ``l + 1`` exceeds ``n``
    no such family exists and the lower bound ``k l / (2^(n-1) - 1)`` is
    returned with ``fallback`` set; likewise if the sum vanishes.
    """
    n = t.n
    if k < 1 or l < 1:
        raise ValueError("set sizes must be positive")
    if k + 1 > n or l + 1 > n:
        return Fraction(k * l, t.cut_count), True
    if printed:
        second = [0] + [t.stirling(i, l + 1) * sum(t.stirling(n - i, l - j) for j in range(l))
                        for i in range(1, n)]
    else:
        second = [0] + [t.inner[i][l] for i in range(1, n)]
    num = sum(t.binomials[i] * t.inner[i][k] * second[i] for i in range(1, n))
    if num == 0:
        # only reachable with the printed reading, whose second factor can vanish
        return Fraction(k * l, t.cut_count), True
    den = (t.stirling(n, k + 1) * t.stirling(n, l + 1)
           * (2 ** (k + 1) - 2) * (2 ** (l + 1) - 2))
    return Fraction(num, den), False


def intersect_sets(a: ApproximationSet, b: ApproximationSet) -> list[Cut]:
    """Cuts present in both sets, by a linear merge of the sorted members."""
    if a.n != b.n:
        raise ValueError(f"sets over {a.n} and {b.n} vertices")
    xs, ys = a.masks, b.masks
    out = []
    i = j = 0
    while i < len(xs) and j < len(ys):
        if xs[i] == ys[j]:
            out.append(Cut(xs[i], a.n))
            i += 1
            j += 1
        elif xs[i] < ys[j]:
            i += 1
        else:
            j += 1
    return out


def unexpected_similarity(size: int, es: Fraction) -> float:
    if es == 0:
        raise UndefinedSimilarityError("expected intersection is zero")
    return float(Fraction(size) / es)


@dataclass(frozen=True)
class SimilarityRow:
    rho: float
    k: int
    l: int
    intersection: int
    es: Fraction
    u_sim: float
    fallback: bool

    @property
    def u_exact(self) -> Fraction:
        return Fraction(self.intersection) / self.es


@dataclass(frozen=True)
class SimilarityReport:
    rows: tuple[SimilarityRow, ...]
    rho_star: float
    max_u_sim: float
    star_intersection: tuple[Cut, ...]
    set1: ApproximationSet
    set2: ApproximationSet

    @property
    def rho_grid(self) -> list[float]:
        return [r.rho for r in self.rows]

    @property
    def star_row(self) -> SimilarityRow:
        return next(r for r in self.rows if r.rho == self.rho_star)

    def first_nonempty(self) -> SimilarityRow | None:
        return next((r for r in self.rows if r.intersection > 0), None)

    def intersection_at(self, rho: float) -> list[Cut]:
        return intersect_sets(self.set1.restrict(rho), self.set2.restrict(rho))


def rho_grid(a: ApproximationSet, b: ApproximationSet, rho_max: float) -> list[float]:
    """Distinct ratios ``w / lambda`` up to ``rho_max``, plus 1."""
    values = {1.0}
    cap = rho_max * (1 + REL_TOL)
    for s in (a, b):
        if s.lam > 0:
            values.update(r for r in (m.weight / s.lam for m in s.members) if 1.0 <= r <= cap)
    return sorted(values)


def _entry_index(s: ApproximationSet, grid: list[float]) -> dict[int, int]:
    """First grid index at which each member enters the set."""
    limits = [threshold(r, s.lam) for r in grid]
    return {m.cut.mask: bisect_left(limits, m.weight) for m in s.members}


def sweep_sets(a: ApproximationSet, b: ApproximationSet,
               rho_max: float = DEFAULT_RHO_MAX, *, printed: bool = False) -> SimilarityReport:
    """Evaluate the unexpected similarity at every breakpoint of two sets.

    ``a`` and ``b`` must have been enumerated for at least ``rho_max``.
    Ties in the maximum resolve to the smallest rho.
    """
    if a.n != b.n:
        raise ValueError(f"sets over {a.n} and {b.n} vertices")
    if rho_max < 1:
        raise ValueError("rho_max must be >= 1")
    grid = rho_grid(a, b, rho_max)
    g = len(grid)
    e1 = _entry_index(a, grid)
    e2 = _entry_index(b, grid)
    both = [max(e1[m], e2[m]) for m in e1.keys() & e2.keys()]
    k, l, inter = (np.cumsum(np.bincount(np.array(v, dtype=np.int64), minlength=g + 1))[:g]
                   for v in (list(e1.values()), list(e2.values()), both))
    tables = build_tables(a.n)
    rows = []
    best = None
    for idx, rho in enumerate(grid):
        es, fallback = expected_intersection(tables, int(k[idx]), int(l[idx]), printed=printed)
        row = SimilarityRow(rho, int(k[idx]), int(l[idx]), int(inter[idx]), es,
                            unexpected_similarity(int(inter[idx]), es), fallback)
        rows.append(row)
        if best is None or row.u_exact > best.u_exact:
            best = row
    star = tuple(intersect_sets(a.restrict(best.rho), b.restrict(best.rho)))
    return SimilarityReport(tuple(rows), best.rho, best.u_sim, star, a, b)


def sweep_rho_star(g1: Graph, g2: Graph, cfg: EnumerationConfig | None = None,
                   rho_max: float = DEFAULT_RHO_MAX, *, exact: bool = False,
                   printed: bool = False) -> SimilarityReport:
    """Find the rho maximizing the unexpected similarity of two graphs.

    Each graph is enumerated once at ``rho_max``; smaller sets are obtained
    by weight filtering.  ``exact`` switches to exhaustive enumeration.
    """
    if g1.n != g2.n:
        raise ValueError(f"graphs differ in vertex count ({g1.n} vs {g2.n})")
    cfg = cfg or EnumerationConfig()
    if exact:
        a = brute_force_approximation_set(g1, rho_max)
        b = brute_force_approximation_set(g2, rho_max)
    else:
        a = approximation_set(g1, _with_rho(cfg, rho_max, 0))
        b = approximation_set(g2, _with_rho(cfg, rho_max, 1))
    return sweep_sets(a, b, rho_max, printed=printed)


def _with_rho(cfg: EnumerationConfig, rho: float, stream: int) -> EnumerationConfig:
    return replace(cfg, rho=rho, seed=mix_seed(cfg.seed, stream))


def composed_cuts(x: Cut, y: Cut) -> tuple[int, int, int, int]:
    """Masks of ``X & Y``, ``X - Y``, ``Y - X`` and ``V - X - Y`` (possibly empty)."""
    if x.n != y.n:
        raise ValueError("cuts over different vertex counts")
    full = (1 << x.n) - 1
    return (x.mask & y.mask, x.mask & ~y.mask, y.mask & ~x.mask, full & ~(x.mask | y.mask))


def crossing(x: Cut, y: Cut) -> bool:
    return all(z != 0 for z in composed_cuts(x, y))
