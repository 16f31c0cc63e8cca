import random
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loosepath.errors import CapabilityError, DimensionError, FormatError, InvalidTripleError
from loosepath.graph import (
    MAX_N,
    ThreeGraph,
    components,
    degree_sum,
    delete_vertex,
    disjoint_union,
    format_3g,
    is_connected,
    parse_3g,
    read_3g,
    triple_rank,
    triple_unrank,
    triples,
    write_3g,
)


def colex(n):
    return sorted(combinations(range(n), 3), key=lambda t: (t[2], t[1], t[0]))


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.integers(0, (1 << comb(n, 3)) - 1))
    return ThreeGraph(n, bits)


def test_rank_is_colex_position_up_to_20():
    for i, t in enumerate(colex(20)):
        assert triple_rank(*t) == i
        assert triple_unrank(i) == t


def test_rank_examples():
    assert triple_rank(0, 1, 2) == 0
    assert triple_rank(0, 1, 3) == 1
    assert triple_rank(4, 5, 6) == 34


def test_rank_prefix_stable_across_n():
    # the triples of an n-vertex graph are exactly the ranks below C(n,3)
    for n in range(3, 12):
        assert set(range(comb(n, 3))) == {triple_rank(*t) for t in combinations(range(n), 3)}
        assert triples(n) == tuple(colex(n))


@pytest.mark.parametrize("bad", [(1, 1, 2), (2, 1, 3), (-1, 2, 3), (0, 3, 3)])
def test_rank_rejects_bad_triples(bad):
    with pytest.raises(InvalidTripleError):
        triple_rank(*bad)


def test_unrank_rejects_negative():
    with pytest.raises(InvalidTripleError):
        triple_unrank(-1)


def test_from_edges_validation():
    with pytest.raises(InvalidTripleError):
        ThreeGraph.from_edges(4, [(0, 1, 4)])
    with pytest.raises(InvalidTripleError):
        ThreeGraph.from_edges(4, [(0, 1, 1)])
    with pytest.raises(CapabilityError):
        ThreeGraph(MAX_N + 1)
    with pytest.raises(InvalidTripleError):
        ThreeGraph(3, 0b10)


@given(graphs())
def test_degree_sum_is_three_times_edges(h):
    assert degree_sum(h) == 3 * len(h)
    assert sum(h.degrees()) == 3 * len(h)


@given(graphs(min_n=2), st.data())
def test_delete_vertex_accounting(h, data):
    v = data.draw(st.integers(0, h.n - 1))
    g = delete_vertex(h, v)
    assert g.n == h.n - 1
    assert len(g) == len(h) - h.degree(v)


def test_delete_vertex_errors():
    with pytest.raises(DimensionError):
        delete_vertex(ThreeGraph(3), 3)
    with pytest.raises(DimensionError):
        delete_vertex(ThreeGraph(1), 0)


@given(graphs())
@settings(max_examples=200)
def test_3g_round_trip(h):
    assert parse_3g(format_3g(h, comment="x")) == h


def test_3g_writer_orders_by_rank(tmp_path):
    h = ThreeGraph.from_edges(5, [(2, 3, 4), (0, 1, 2), (0, 1, 4)])
    path = tmp_path / "g.3g"
    write_3g(h, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "5 3"
    assert lines[1:] == ["0 1 2", "0 1 4", "2 3 4"]
    assert read_3g(path) == h


@pytest.mark.parametrize("text", [
    "",
    "4\n",
    "4 2\n0 1 2\n",
    "4 2\n0 1 2\n0 1 2\n",
    "4 1\n0 1 4\n",
    "4 1\n2 1 0\n",
    "4 1\n0 1\n",
    "4 1\n0 1 x\n",
])
def test_3g_rejects_bad_input(text):
    with pytest.raises(FormatError):
        parse_3g(text)


def test_3g_comments_are_skipped():
    assert parse_3g("# a star\n4 1\n# edge\n0 1 2\n") == ThreeGraph.from_edges(4, [(0, 1, 2)])


def test_disjoint_union_and_components():
    k4 = ThreeGraph.complete(4)
    u = disjoint_union(k4, k4, ThreeGraph(1))
    assert u.n == 9 and len(u) == 8
    assert sorted(map(sorted, components(u))) == [[0, 1, 2, 3], [4, 5, 6, 7], [8]]
    assert not is_connected(u)
    assert is_connected(k4)
    with pytest.raises(CapabilityError):
        disjoint_union(*[ThreeGraph.complete(6)] * 6)


def test_isolated_vertex_disconnects():
    assert not is_connected(ThreeGraph.from_edges(4, [(0, 1, 2)]))
    assert is_connected(ThreeGraph(1))


def test_relabel_and_induced():
    h = ThreeGraph.from_edges(5, [(0, 1, 2), (2, 3, 4)])
    g = h.relabel([4, 3, 2, 1, 0])
    assert set(g.edges()) == {(2, 3, 4), (0, 1, 2)}
    assert h.induced([2, 3, 4]).edges() == [(0, 1, 2)]
    with pytest.raises(DimensionError):
        h.relabel([0, 0, 1, 2, 3])


def test_link_and_degrees():
    rng = random.Random(3)
    h = ThreeGraph(8, rng.getrandbits(comb(8, 3)))
    for v in range(8):
        assert len(h.link(v)) == h.degree(v)
