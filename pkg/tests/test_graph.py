import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smallcuts.graph import (
    ContractionState,
    Cut,
    Graph,
    GraphFormatError,
    InvalidCutError,
    canonicalize,
    contract_edge,
    cut_weight,
    parse_graph,
    write_graph,
)

from conftest import random_graph, unit_graph


def test_cut_weight_examples(k3, k4):
    assert cut_weight(k3, canonicalize("010")) == 4
    assert cut_weight(k3, canonicalize("001")) == 5
    assert cut_weight(k4, canonicalize("0011")) == 4


def test_cut_weight_dimension_mismatch(k3):
    with pytest.raises(ValueError):
        cut_weight(k3, canonicalize("0011"))


def test_canonicalize_examples():
    assert canonicalize("0110").bits == "0110"
    assert canonicalize("1001").bits == "0110"
    with pytest.raises(InvalidCutError):
        canonicalize("1111")
    with pytest.raises(InvalidCutError):
        canonicalize("0000")


def test_cut_rejects_noncanonical_mask():
    with pytest.raises(InvalidCutError):
        Cut(0b0011, 4)
    assert Cut.from_vertices([0], 3).bits == "011"


@given(st.integers(2, 40).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, 2**n - 2))))
def test_canonicalize_idempotent_and_complement_invariant(arg):
    n, mask = arg
    c = canonicalize(mask, n)
    assert canonicalize(c.mask, n) == c
    assert canonicalize(((1 << n) - 1) ^ mask, n) == c
    assert c.mask & 1 == 0


@settings(max_examples=50)
@given(st.integers(2, 12), st.integers(0, 2**32), st.data())
def test_cut_symmetry(n, seed, data):
    g = random_graph(n, seed, lo=0)
    mask = data.draw(st.integers(1, 2**n - 2))
    c = canonicalize(mask, n)
    direct = sum(g.weights[i, j] for i in range(n) for j in range(n)
                 if (mask >> i) & 1 and not (mask >> j) & 1)
    assert cut_weight(g, c) == pytest.approx(direct)


def test_contract_edge_examples(k3, k4):
    s = contract_edge(ContractionState.from_graph(k3), 1, 2)
    assert s.count == 2
    assert s.weights[0, 1] == 3
    assert s.origins == [0b001, 0b110]

    s = contract_edge(ContractionState.from_graph(k4), 0, 1)
    assert s.count == 3
    assert s.origins == [0b0011, 0b0100, 0b1000]
    assert s.weights[0, 1] == 2 and s.weights[0, 2] == 2 and s.weights[1, 2] == 1
    np.testing.assert_array_equal(s.weights, s.weights.T)

    with pytest.raises(ValueError):
        contract_edge(ContractionState.from_graph(k3), 1, 1)


@settings(max_examples=40)
@given(st.integers(3, 9), st.integers(0, 2**32), st.data())
def test_contraction_conserves_crossing_weight(n, seed, data):
    g = random_graph(n, seed, lo=0)
    s = ContractionState.from_graph(g)
    total = g.weights.sum() / 2
    for _ in range(data.draw(st.integers(1, n - 2))):
        u = data.draw(st.integers(0, s.count - 1))
        v = data.draw(st.integers(0, s.count - 1).filter(lambda x: x != u))
        internal = s.weights[u, v]
        s = contract_edge(s, u, v)
        total -= internal
        assert s.weights.sum() / 2 == pytest.approx(total)
    # origin sets partition the vertices
    assert sum(s.origins) == (1 << n) - 1
    assert all(a & b == 0 for i, a in enumerate(s.origins) for b in s.origins[i + 1:])
    # any cut of super-vertices keeps its weight in the original graph
    side = data.draw(st.sets(st.integers(0, s.count - 1), min_size=1, max_size=s.count - 1))
    induced = sum(s.weights[a, b] for a in side for b in range(s.count) if b not in side)
    assert cut_weight(g, s.cut_for(side)) == pytest.approx(induced)


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph([[0, 1], [2, 0]])
    with pytest.raises(ValueError):
        Graph([[0, -1], [-1, 0]])
    with pytest.raises(ValueError):
        Graph([[1, 1], [1, 0]])
    with pytest.raises(ValueError):
        Graph([[0]])
    g = unit_graph(4)
    assert g.m == 6
    with pytest.raises(ValueError):
        g.weights[0, 1] = 5


def test_parse_examples(k3):
    assert parse_graph("3\n0 1 1\n0 2 2\n1 2 3\n") == k3
    g = parse_graph("2\n0 1 5\n")
    assert g.n == 2 and g.weights[0, 1] == 5
    with pytest.raises(GraphFormatError, match="line 2"):
        parse_graph("3\n0 1 -4\n")


@pytest.mark.parametrize("text,line", [
    ("3\n0 3 1\n", 2),
    ("3\n1 0 1\n", 2),
    ("3\n0 1\n", 2),
    ("3\n0 1 x\n", 2),
    ("3\n0 1 1\n# c\n0 1 2\n", 4),
    ("three\n", 1),
    ("3\n0 1 nan\n", 2),
])
def test_parse_errors(text, line):
    with pytest.raises(GraphFormatError) as info:
        parse_graph(text)
    assert info.value.line == line


def test_parse_comments_and_missing_edges():
    g = parse_graph("# header\n4\n\n0 1 2.5  # trailing\n2 3 1\n")
    assert g.weights[0, 1] == 2.5 and g.weights[0, 2] == 0 and g.weights[3, 2] == 1


def test_write_parse_text_round_trip():
    text = "3\n0 1 1\n0 2 2\n1 2 3\n"
    assert write_graph(parse_graph(text)) == text


@settings(max_examples=50)
@given(st.integers(2, 10), st.integers(0, 2**32), st.booleans())
def test_parse_write_round_trip(n, seed, real):
    g = random_graph(n, seed, lo=0)
    if real:
        g = g.log_weights()
    assert parse_graph(write_graph(g)) == g
