# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled contraction kernels.

Mirror of ``_kernel_py``: identical random stream consumption and identical
floating point operation order, so both backends return the same cuts.
Supports up to 64 vertices (cuts are uint64 masks).
"""
from libc.math cimport ceil, INFINITY
from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

import numpy as np

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef double INV_2_53 = 1.0 / 9007199254740992.0


cdef inline uint64_t _finalize(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline double _next_double(uint64_t* state) nogil:
    state[0] = state[0] + GOLDEN
    return <double>(_finalize(state[0]) >> 11) * INV_2_53


cdef struct Level:
    double* w      # row-major, stride n
    double* rs
    uint64_t* org
    int t


cdef void _select_edge(Level* L, int n, uint64_t* rng, bint weighted,
                       int* out_u, int* out_v) nogil:
    cdef int t = L.t
    cdef double* w = L.w
    cdef double* rs = L.rs
    cdef double total, r, acc, s
    cdef double* row
    cdef int a, b, i, j
    cdef long positive, idx, pairs, span
    if weighted:
        total = 0.0
        for a in range(t):
            total += rs[a]
        if total > 0.0:
            r = _next_double(rng) * total
            i = -1
            acc = 0.0
            for a in range(t):
                if rs[a] > 0.0:
                    acc += rs[a]
                    i = a
                    if r < acc:
                        break
            row = w + i * n
            s = 0.0
            for b in range(t):
                s += row[b]
            r = _next_double(rng) * s
            j = -1
            acc = 0.0
            for b in range(t):
                if b != i and row[b] > 0.0:
                    acc += row[b]
                    j = b
                    if r < acc:
                        break
            if j >= 0:
                out_u[0] = i
                out_v[0] = j
                return
    else:
        positive = 0
        for a in range(t):
            row = w + a * n
            for b in range(a + 1, t):
                if row[b] > 0.0:
                    positive += 1
        if positive > 0:
            idx = <long>(_next_double(rng) * positive)
            if idx >= positive:
                idx = positive - 1
            for a in range(t):
                row = w + a * n
                for b in range(a + 1, t):
                    if row[b] > 0.0:
                        if idx == 0:
                            out_u[0] = a
                            out_v[0] = b
                            return
                        idx -= 1
    pairs = (<long>t) * (t - 1) // 2
    idx = <long>(_next_double(rng) * pairs)
    if idx >= pairs:
        idx = pairs - 1
    for a in range(t):
        span = t - 1 - a
        if idx < span:
            out_u[0] = a
            out_v[0] = a + 1 + <int>idx
            return
        idx -= span


cdef void _merge(Level* L, int n, int u, int v) nogil:
    cdef double* w = L.w
    cdef int t = L.t
    cdef int x, last, tmp
    cdef double s
    if u > v:
        tmp = u
        u = v
        v = tmp
    for x in range(t):
        if x != u and x != v:
            w[u * n + x] += w[v * n + x]
            w[x * n + u] = w[u * n + x]
    L.org[u] |= L.org[v]
    last = t - 1
    if v != last:
        for x in range(t):
            w[v * n + x] = w[last * n + x]
            w[x * n + v] = w[x * n + last]
        w[v * n + v] = 0.0
        L.org[v] = L.org[last]
        L.rs[v] = L.rs[last]
    t = last
    w[u * n + u] = 0.0
    s = 0.0
    for x in range(t):
        if x != u:
            s += w[u * n + x]
    L.rs[u] = s
    L.t = t


cdef void _contract_to(Level* L, int n, int target, uint64_t* rng, bint weighted) nogil:
    cdef int u = 0, v = 0
    while L.t > target:
        _select_edge(L, n, rng, weighted, &u, &v)
        _merge(L, n, u, v)


cdef void _copy_level(Level* src, Level* dst, int n) nogil:
    memcpy(dst.w, src.w, n * n * sizeof(double))
    memcpy(dst.rs, src.rs, n * sizeof(double))
    memcpy(dst.org, src.org, n * sizeof(uint64_t))
    dst.t = src.t


cdef void _init_level(Level* L, const double[:, ::1] weights, int n):
    cdef int a, b
    cdef double s
    for a in range(n):
        for b in range(n):
            L.w[a * n + b] = weights[a, b]
        L.w[a * n + a] = 0.0
    for a in range(n):
        s = 0.0
        for b in range(n):
            if b != a:
                s += L.w[a * n + b]
        L.rs[a] = s
    L.t = n


cdef class _Tree:
    cdef int n
    cdef int depth
    cdef Level* levels
    cdef double reduction
    cdef int base
    cdef uint64_t rng
    cdef bint weighted
    cdef uint64_t full
    cdef double threshold
    cdef bint check
    cdef set out

    def __cinit__(self, int n):
        cdef int d
        self.n = n
        self.depth = n + 1
        self.levels = <Level*>malloc(self.depth * sizeof(Level))
        for d in range(self.depth):
            self.levels[d].w = <double*>malloc(n * n * sizeof(double))
            self.levels[d].rs = <double*>malloc(n * sizeof(double))
            self.levels[d].org = <uint64_t*>malloc(n * sizeof(uint64_t))
            self.levels[d].t = 0

    def __dealloc__(self):
        cdef int d
        if self.levels != NULL:
            for d in range(self.depth):
                free(self.levels[d].w)
                free(self.levels[d].rs)
                free(self.levels[d].org)
            free(self.levels)

    cdef void leaf(self, Level* L):
        cdef int t = L.t
        cdef int n = self.n
        cdef uint64_t s, side, mask
        cdef int a, b
        cdef uint64_t ina
        cdef double weight
        for s in range(1, (<uint64_t>1) << (t - 1)):
            side = s << 1
            if self.check:
                weight = 0.0
                for a in range(t):
                    ina = (side >> a) & 1
                    for b in range(a + 1, t):
                        if ina != ((side >> b) & 1):
                            weight += L.w[a * n + b]
                if weight > self.threshold:
                    continue
            mask = 0
            for a in range(1, t):
                if (side >> a) & 1:
                    mask |= L.org[a]
            if mask & 1:
                mask ^= self.full
            self.out.add(mask)

    cdef void recurse(self, int d):
        cdef Level* L = &self.levels[d]
        cdef Level* C
        cdef int t = L.t
        cdef int target, rep
        if t <= self.base:
            self.leaf(L)
            return
        target = <int>ceil(t / self.reduction + 1.0)
        if target > t - 1:
            target = t - 1
        C = &self.levels[d + 1]
        for rep in range(2):
            _copy_level(L, C, self.n)
            _contract_to(C, self.n, target, &self.rng, self.weighted)
            self.recurse(d + 1)


def recursive_contract(const double[:, ::1] weights, double reduction, int base,
                       uint64_t seed, bint weighted=True, double threshold=INFINITY):
    cdef int n = weights.shape[0]
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 vertices")
    cdef _Tree tree = _Tree(n)
    tree.reduction = reduction
    tree.base = base
    tree.rng = seed
    tree.weighted = weighted
    tree.full = ((<uint64_t>1) << n) - 1 if n < 64 else <uint64_t>0xFFFFFFFFFFFFFFFFULL
    tree.threshold = threshold
    tree.check = threshold != INFINITY
    tree.out = set()
    cdef int i
    _init_level(&tree.levels[0], weights, n)
    for i in range(n):
        tree.levels[0].org[i] = (<uint64_t>1) << i
    tree.recurse(0)
    return sorted(tree.out)


def contract_state(const double[:, ::1] weights, origins, int target, uint64_t seed,
                   bint weighted=True):
    cdef int n = weights.shape[0]
    if not 2 <= target <= n:
        raise ValueError(f"target must lie in [2, {n}], got {target}")
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 vertices")
    cdef _Tree tree = _Tree(n)
    cdef Level* L = &tree.levels[0]
    cdef int i, j, t
    cdef uint64_t rng = seed
    _init_level(L, weights, n)
    for i in range(n):
        L.org[i] = <uint64_t>origins[i]
    _contract_to(L, n, target, &rng, weighted)
    t = L.t
    out = np.empty((t, t), dtype=np.float64)
    cdef double[:, ::1] ov = out
    for i in range(t):
        for j in range(t):
            ov[i, j] = L.w[i * n + j]
    return out.tolist(), [int(L.org[i]) for i in range(t)]


def cut_weights(const double[:, ::1] weights, masks):
    cdef int n = weights.shape[0]
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 vertices")
    cdef uint64_t m, bi
    cdef int i, j
    cdef double s
    result = []
    for obj in masks:
        m = <uint64_t>obj
        s = 0.0
        for i in range(n):
            bi = (m >> i) & 1
            for j in range(i + 1, n):
                if bi != ((m >> j) & 1):
                    s += weights[i, j]
        result.append(s)
    return result
