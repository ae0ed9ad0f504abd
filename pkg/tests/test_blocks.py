import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathlister.baselines import brute_force_st_paths
from pathlister.blocks import (
    NotConnectedError,
    bead_string,
    biconnected_components,
    induced_bead_subgraph,
)
from pathlister.generators import random_graph
from pathlister.graph import connected_components
from corpus import NAMED


def test_path_has_two_bridges():
    bt = biconnected_components(NAMED["path3"])
    assert sorted(bt.bccs) == [((0, 1),), ((1, 2),)]
    assert bt.articulation_points == {1}


def test_triangle_single_block():
    bt = biconnected_components(NAMED["triangle"])
    assert bt.bccs == (((0, 1), (0, 2), (1, 2)),)
    assert bt.articulation_points == frozenset()


def test_bowtie_blocks():
    bt = biconnected_components(NAMED["bowtie"])
    assert sorted(bt.bcc_vertices(i) == {0, 1, 2} or bt.bcc_vertices(i) == {2, 3, 4} for i in range(2))
    assert len(bt) == 2
    assert bt.articulation_points == {2}
    assert sorted(bt.tree_adjacency) == [(0, 2), (1, 2)]
    assert bt.vertex_to_bccs[2] == (0, 1)


def test_bead_string_bowtie():
    g = NAMED["bowtie"]
    bt = biconnected_components(g)
    b = bead_string(bt, 0, 4)
    assert [bt.bcc_vertices(i) for i in b.beads] == [{0, 1, 2}, {2, 3, 4}]
    assert b.cut_vertices == (2,)
    assert b.vertex_set == {0, 1, 2, 3, 4}


def test_bead_string_single_block():
    bt = biconnected_components(NAMED["triangle"])
    b = bead_string(bt, 0, 2)
    assert len(b.beads) == 1
    assert b.cut_vertices == ()


def test_bead_string_errors():
    bt = biconnected_components(NAMED["two_edges"])
    with pytest.raises(NotConnectedError):
        bead_string(bt, 0, 3)
    with pytest.raises(ValueError):
        bead_string(bt, 1, 1)
    bt = biconnected_components(NAMED["empty3"])
    with pytest.raises(NotConnectedError):
        bead_string(bt, 0, 1)


def test_bead_string_from_articulation_points():
    g = NAMED["chain_of_cycles"]
    bt = biconnected_components(g)
    b = bead_string(bt, 2, 5)
    assert [bt.bcc_vertices(i) for i in b.beads] == [{2, 3, 4, 5}]
    b = bead_string(bt, 0, 7)
    # triangle, square, bridge 5-6, triangle
    assert b.cut_vertices == (2, 5, 6)
    assert [len(bt.bccs[i]) for i in b.beads] == [3, 4, 1, 3]


def test_induced_bead_subgraph_examples():
    g = NAMED["bowtie"]
    sub = induced_bead_subgraph(g, bead_string(biconnected_components(g), 0, 4))
    assert sub.graph == g and sub.to_parent == (0, 1, 2, 3, 4)

    g = NAMED["bowtie_pendant"]
    sub = induced_bead_subgraph(g, bead_string(biconnected_components(g), 0, 4))
    assert sub.to_parent == (0, 1, 2, 3, 4)
    assert sub.graph == NAMED["bowtie"]
    assert sub.local(4) == 4

    g = NAMED["triangle"]
    sub = induced_bead_subgraph(g, bead_string(biconnected_components(g), 0, 2))
    assert sub.graph == g


graphs = st.builds(
    random_graph,
    st.integers(min_value=1, max_value=10),
    st.sampled_from([0.2, 0.3, 0.5, 0.8]),
    st.integers(min_value=0, max_value=2**64 - 1),
)


@given(graphs)
def test_articulation_points_match_deletion_oracle(g):
    bt = biconnected_components(g)
    base = len(connected_components(g))
    for v in range(g.n):
        rest = [u for u in range(g.n) if u != v]
        sub, _ = g.induced(rest)
        increases = len(connected_components(sub)) > base - (1 if not g.adjacency[v] else 0)
        assert (v in bt.articulation_points) == increases, v


@given(graphs)
def test_every_edge_in_exactly_one_block(g):
    bt = biconnected_components(g)
    assert sum(len(c) for c in bt.bccs) == g.m
    assert sorted(e for c in bt.bccs for e in c) == g.edges()


@given(graphs)
def test_block_cut_forest_is_a_forest(g):
    bt = biconnected_components(g)
    nodes = {("b", i) for i in range(len(bt))} | {("v", x) for x in bt.articulation_points}
    parent = {x: x for x in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, x in bt.tree_adjacency:
        a, b = find(("b", i)), find(("v", x))
        assert a != b, "cycle in block-cut forest"
        parent[a] = b
        assert x in bt.bcc_vertices(i)


@given(graphs, st.data())
@settings(max_examples=60)
def test_paths_stay_in_bead_string(g, data):
    if g.n < 2:
        return
    s = data.draw(st.integers(0, g.n - 1))
    t = data.draw(st.integers(0, g.n - 1).filter(lambda x: x != s))
    bt = biconnected_components(g)
    paths = brute_force_st_paths(g, s, t)
    try:
        b = bead_string(bt, s, t)
    except NotConnectedError:
        assert not paths
        return
    assert paths
    for p in paths:
        assert set(p) <= b.vertex_set
        assert set(b.cut_vertices) <= set(p)
    # and conversely every bead vertex lies on some path
    assert set().union(*map(set, paths)) == b.vertex_set
