"""Weighted complete graphs, cuts, contraction and the edge-list file format."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import total_ordering

import numpy as np

from . import _backend


class GraphFormatError(ValueError):
    """Raised when an edge-list file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class InvalidCutError(ValueError):
    """Raised for bit strings that do not describe a cut (one side empty)."""


class Graph:
    """Undirected complete graph with a symmetric non-negative weight matrix.

    Absent edges are zero-weight edges.  The matrix is copied and made
    read-only, so a Graph can be shared freely between workers.
    """

    __slots__ = ("weights",)

    def __init__(self, weights):
        w = np.array(weights, dtype=np.float64)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError(f"weight matrix must be square, got shape {w.shape}")
        if w.shape[0] < 2:
            raise ValueError("a graph needs at least 2 vertices")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if np.any(w < 0):
            raise ValueError("weights must be non-negative")
        if not np.array_equal(w, w.T):
            raise ValueError("weight matrix must be symmetric")
        if np.any(np.diag(w) != 0):
            raise ValueError("diagonal must be zero")
        w.setflags(write=False)
        self.weights = w

    @classmethod
    def from_edges(cls, n: int, edges) -> Graph:
        """Build from ``(u, v, w)`` triples; unlisted pairs get weight 0."""
        w = np.zeros((n, n))
        for u, v, x in edges:
            w[u, v] = w[v, u] = x
        return cls(w)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def m(self) -> int:
        return self.n * (self.n - 1) // 2

    def __eq__(self, other):
        return isinstance(other, Graph) and np.array_equal(self.weights, other.weights)

    def __hash__(self):
        return hash(self.weights.tobytes())

    def __repr__(self):
        return f"Graph(n={self.n})"

    def __add__(self, other: Graph) -> Graph:
        if other.n != self.n:
            raise ValueError("graphs differ in vertex count")
        return Graph(self.weights + other.weights)

    def relabel(self, perm) -> Graph:
        """Graph with vertex ``i`` renamed to ``perm[i]``."""
        perm = np.asarray(perm)
        inv = np.argsort(perm)
        return Graph(self.weights[np.ix_(inv, inv)])

    def log_weights(self) -> Graph:
        """Apply ``w -> ln(1 + w)`` edge-wise (zero stays zero)."""
        return Graph(np.log1p(self.weights))


@total_ordering
@dataclass(frozen=True)
class Cut:
    """A vertex bipartition stored as the canonical side, vertex ``i`` at bit ``i``.

    The canonical side never contains vertex 0.  Cuts order by their mask.
    """

    mask: int
    n: int

    def __post_init__(self):
        full = (1 << self.n) - 1
        if self.n < 2 or self.mask <= 0 or self.mask >= full or self.mask & ~full:
            raise InvalidCutError(f"mask {self.mask:#x} is not a cut of {self.n} vertices")
        if self.mask & 1:
            raise InvalidCutError("cut is not canonical (vertex 0 on the marked side)")

    def __lt__(self, other: Cut):
        return (self.n, self.mask) < (other.n, other.mask)

    @classmethod
    def from_vertices(cls, vertices, n: int) -> Cut:
        mask = 0
        for v in vertices:
            if not 0 <= v < n:
                raise InvalidCutError(f"vertex {v} outside 0..{n - 1}")
            mask |= 1 << v
        return canonicalize(mask, n)

    @classmethod
    def from_bits(cls, bits: str) -> Cut:
        return canonicalize(bits)

    @property
    def bits(self) -> str:
        return "".join("1" if self.mask >> i & 1 else "0" for i in range(self.n))

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(i for i in range(self.n) if self.mask >> i & 1)

    def complement_mask(self) -> int:
        return ((1 << self.n) - 1) ^ self.mask

    def __str__(self):
        return self.bits


@dataclass(frozen=True, order=True)
class WeightedCut:
    cut: Cut
    weight: float


def bits_to_mask(bits: str) -> int:
    if not bits or any(ch not in "01" for ch in bits):
        raise InvalidCutError(f"not a bit string: {bits!r}")
    return sum(1 << i for i, ch in enumerate(bits) if ch == "1")


def canonicalize(bits: str | int, n: int | None = None) -> Cut:
    """Return the cut with vertex 0 on the unmarked side.

    ``bits`` is either a ``'0110'`` style string (vertex 0 first) or an
    integer mask, in which case ``n`` is required.
    """
    if isinstance(bits, str):
        n = len(bits)
        mask = bits_to_mask(bits)
    else:
        if n is None:
            raise ValueError("n is required for integer masks")
        mask = int(bits)
    full = (1 << n) - 1
    if mask & ~full:
        raise InvalidCutError(f"mask {mask:#x} has bits beyond {n} vertices")
    if mask == 0 or mask == full:
        raise InvalidCutError("one side of the cut is empty")
    if mask & 1:
        mask ^= full
    return Cut(mask, n)


def cut_weight(g: Graph, c: Cut) -> float:
    """Total weight of edges with exactly one endpoint on the marked side."""
    if c.n != g.n:
        raise ValueError(f"cut over {c.n} vertices used with a graph of {g.n}")
    return _backend.cut_weights(g.weights, [c.mask])[0]


def cut_weights(g: Graph, masks) -> list[float]:
    """Bulk :func:`cut_weight` over integer masks; same summation order."""
    return _backend.cut_weights(g.weights, masks)


@dataclass
class ContractionState:
    """Super-vertex graph produced by edge contractions.

    ``origins[i]`` is the mask of original vertices merged into super-vertex ``i``.
    """

    weights: np.ndarray
    origins: list[int]
    n: int = field(default=0)

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        if self.n == 0:
            self.n = max(self.origins).bit_length()

    @classmethod
    def from_graph(cls, g: Graph) -> ContractionState:
        return cls(g.weights.copy(), [1 << i for i in range(g.n)], g.n)

    @property
    def count(self) -> int:
        return len(self.origins)

    def cut_for(self, side) -> Cut:
        """Original-vertex cut induced by a set of super-vertices."""
        mask = 0
        for s in side:
            mask |= self.origins[s]
        return canonicalize(mask, self.n)


def contract_edge(s: ContractionState, u: int, v: int) -> ContractionState:
    """Merge super-vertices ``u`` and ``v``; the merged vertex takes index ``min(u, v)``."""
    if u == v:
        raise ValueError("cannot contract a super-vertex with itself")
    k = s.count
    if not (0 <= u < k and 0 <= v < k):
        raise ValueError(f"super-vertex out of range 0..{k - 1}")
    u, v = min(u, v), max(u, v)
    w = s.weights.copy()
    w[u, :] += w[v, :]
    w[:, u] += w[:, v]
    w[u, u] = 0.0
    w = np.delete(np.delete(w, v, axis=0), v, axis=1)
    origins = list(s.origins)
    origins[u] |= origins[v]
    del origins[v]
    return ContractionState(w, origins, s.n)


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: ``n`` on the first line, then ``u v w`` lines."""
    n = None
    edges: dict[tuple[int, int], float] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1:
                raise GraphFormatError("expected the vertex count", lineno)
            try:
                n = int(parts[0])
            except ValueError:
                raise GraphFormatError(f"bad vertex count {parts[0]!r}", lineno) from None
            if n < 2:
                raise GraphFormatError("vertex count must be at least 2", lineno)
            continue
        if len(parts) != 3:
            raise GraphFormatError("expected 'u v w'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
            x = float(parts[2])
        except ValueError:
            raise GraphFormatError(f"malformed edge {line!r}", lineno) from None
        if not (0 <= u < v < n):
            raise GraphFormatError(f"need 0 <= u < v < {n}, got {u} {v}", lineno)
        if not math.isfinite(x) or x < 0:
            raise GraphFormatError(f"weight must be finite and non-negative, got {parts[2]}", lineno)
        if (u, v) in edges:
            raise GraphFormatError(f"duplicate edge {u} {v}", lineno)
        edges[u, v] = x
    if n is None:
        raise GraphFormatError("empty graph file")
    return Graph.from_edges(n, ((u, v, x) for (u, v), x in edges.items()))


def _fmt(x: float) -> str:
    return str(int(x)) if x.is_integer() and abs(x) < 2**53 else repr(x)


def write_graph(g: Graph) -> str:
    """Serialize in the edge-list format; zero-weight edges are left implicit."""
    lines = [str(g.n)]
    w = g.weights
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if w[u, v] != 0:
                lines.append(f"{u} {v} {_fmt(float(w[u, v]))}")
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())
