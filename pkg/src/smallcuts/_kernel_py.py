"""Pure-Python contraction kernels.

This module is the reference for the compiled ``_kernel`` extension: both
consume the same random stream in the same order and perform the same
floating point operations in the same order, so results are bit-identical
across backends.  Keep the two files in lockstep.

Matrices are passed as lists of lists of floats; cuts as integer bit masks
with vertex ``i`` at bit ``i``.
"""
from __future__ import annotations

import math

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
INV_2_53 = 1.0 / 9007199254740992.0


def _finalize(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix_seed(master: int, index: int) -> int:
    """Derive the seed of repetition ``index`` from a master seed."""
    return _finalize((master + (index + 1) * GOLDEN) & MASK64)


class SplitMix64:
    """Minimal splitmix64 generator, mirrored in C by the compiled kernel."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return _finalize(self.state)

    def next_double(self) -> float:
        return (self.next_u64() >> 11) * INV_2_53


def _select_edge(w, rs, t, rng, weighted):
    if weighted:
        total = 0.0
        for a in range(t):
            total += rs[a]
        if total > 0.0:
            r = rng.next_double() * total
            i = -1
            acc = 0.0
            for a in range(t):
                if rs[a] > 0.0:
                    acc += rs[a]
                    i = a
                    if r < acc:
                        break
            row = w[i]
            s = 0.0
            for b in range(t):
                s += row[b]
            r = rng.next_double() * s
            j = -1
            acc = 0.0
            for b in range(t):
                if b != i and row[b] > 0.0:
                    acc += row[b]
                    j = b
                    if r < acc:
                        break
            if j >= 0:
                return i, j
    else:
        positive = 0
        for a in range(t):
            row = w[a]
            for b in range(a + 1, t):
                if row[b] > 0.0:
                    positive += 1
        if positive > 0:
            idx = int(rng.next_double() * positive)
            if idx >= positive:
                idx = positive - 1
            for a in range(t):
                row = w[a]
                for b in range(a + 1, t):
                    if row[b] > 0.0:
                        if idx == 0:
                            return a, b
                        idx -= 1
    # all remaining weight is zero: any pair preserves the zero-weight cuts
    pairs = t * (t - 1) // 2
    idx = int(rng.next_double() * pairs)
    if idx >= pairs:
        idx = pairs - 1
    for a in range(t):
        span = t - 1 - a
        if idx < span:
            return a, a + 1 + idx
        idx -= span
    raise AssertionError("unreachable")


def _merge(w, org, rs, t, u, v):
    """Merge super-vertex ``v`` into ``u`` and compact; returns the new count."""
    if u > v:
        u, v = v, u
    wu = w[u]
    wv = w[v]
    for x in range(t):
        if x != u and x != v:
            wu[x] += wv[x]
            w[x][u] = wu[x]
    org[u] |= org[v]
    last = t - 1
    if v != last:
        wl = w[last]
        for x in range(t):
            wv[x] = wl[x]
            w[x][v] = w[x][last]
        wv[v] = 0.0
        org[v] = org[last]
        rs[v] = rs[last]
    t = last
    wu[u] = 0.0
    s = 0.0
    for x in range(t):
        if x != u:
            s += wu[x]
    rs[u] = s
    return t


def _init_state(weights):
    t = len(weights)
    w = [[float(x) for x in row] for row in weights]
    rs = []
    for a in range(t):
        w[a][a] = 0.0
        s = 0.0
        for b in range(t):
            if b != a:
                s += w[a][b]
        rs.append(s)
    return w, rs


def contract_state(weights, origins, target, seed, weighted=True):
    """Contract a super-vertex graph down to ``target`` super-vertices.

    Returns ``(weights, origins)`` of the contracted graph as lists.
    """
    t = len(weights)
    if not 2 <= target <= t:
        raise ValueError(f"target must lie in [2, {t}], got {target}")
    w, rs = _init_state(weights)
    org = list(origins)
    rng = SplitMix64(seed)
    while t > target:
        u, v = _select_edge(w, rs, t, rng, weighted)
        t = _merge(w, org, rs, t, u, v)
    return [row[:t] for row in w[:t]], org[:t]


def _leaf(w, org, t, full, threshold, out):
    check = threshold != math.inf
    for s in range(1, 1 << (t - 1)):
        side = s << 1
        if check:
            weight = 0.0
            for a in range(t):
                ina = (side >> a) & 1
                row = w[a]
                for b in range(a + 1, t):
                    if ina != ((side >> b) & 1):
                        weight += row[b]
            if weight > threshold:
                continue
        mask = 0
        for a in range(1, t):
            if (side >> a) & 1:
                mask |= org[a]
        if mask & 1:
            mask ^= full
        out.add(mask)


def _recurse(w, org, rs, t, reduction, base, rng, weighted, full, threshold, out):
    if t <= base:
        _leaf(w, org, t, full, threshold, out)
        return
    target = math.ceil(t / reduction + 1.0)
    if target > t - 1:
        target = t - 1
    for _ in range(2):
        cw = [row[:t] for row in w[:t]]
        corg = org[:t]
        crs = rs[:t]
        ct = t
        while ct > target:
            u, v = _select_edge(cw, crs, ct, rng, weighted)
            ct = _merge(cw, corg, crs, ct, u, v)
        _recurse(cw, corg, crs, ct, reduction, base, rng, weighted, full, threshold, out)


def recursive_contract(weights, reduction, base, seed, weighted=True, threshold=math.inf):
    """One run of the recursion tree; returns the sorted canonical masks found.

    ``reduction`` divides the super-vertex count at each level, ``base`` is the
    count at or below which every cut of the contracted graph is emitted.
    Cuts whose contracted weight exceeds ``threshold`` are dropped.
    """
    n = len(weights)
    w, rs = _init_state(weights)
    org = [1 << i for i in range(n)]
    out: set[int] = set()
    _recurse(w, org, rs, n, reduction, base, SplitMix64(seed), weighted,
             (1 << n) - 1, threshold, out)
    return sorted(out)


def cut_weights(weights, masks):
    """Weights of cuts given as masks, summed over pairs ``i < j`` in order."""
    n = len(weights)
    result = []
    for m in masks:
        s = 0.0
        for i in range(n):
            bi = (m >> i) & 1
            row = weights[i]
            for j in range(i + 1, n):
                if bi != ((m >> j) & 1):
                    s += row[j]
        result.append(s)
    return result
