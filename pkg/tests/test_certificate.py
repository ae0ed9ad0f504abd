import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathlister.baselines import brute_force_st_paths
from pathlister.blocks import NotConnectedError, bead_string, biconnected_components
from pathlister.certificate import (
    CertEdge,
    CertificateError,
    SpineContext,
    build_certificate,
    choose,
    compacted_head,
    left_update,
    restore,
    right_update,
)
from pathlister.generators import random_graph
from pathlister.graph import Graph
from corpus import NAMED


def make(g, s, t):
    return build_certificate(g, bead_string(biconnected_components(g), s, t), s, t)


def back_edge_count(c):
    return sum(len(c.lb[v]) for v in c.vertices())


def test_build_triangle():
    c = make(NAMED["triangle"], 0, 2)
    assert c.check() == []
    assert c.root == 0 and c.leftmost_path()[-1] == 2
    assert back_edge_count(c) == 1
    assert len(c.lb[0]) == 1


def test_build_path_has_no_back_edges():
    c = make(NAMED["path3"], 0, 2)
    assert c.check() == []
    assert c.leftmost_path() == [0, 1, 2]
    assert all(not c.lb[v] and not c.ab[v] for v in range(3))


def test_build_k4():
    g = NAMED["k4"]
    c = make(g, 0, 3)
    assert c.check() == []
    assert back_edge_count(c) == g.m - (g.n - 1)
    h = c.compacted_head()
    assert (h.V_X, h.E_X) == (4, 6)
    assert h.density == 1.5 and not h.trivial


def test_build_prunes_outside_bead_string():
    g = NAMED["bowtie_pendant"]
    c = make(g, 0, 1)
    assert set(c.vertices()) == {0, 1, 2}
    assert c.check() == []


def test_build_errors():
    g = NAMED["triangle"]
    b = bead_string(biconnected_components(g), 0, 2)
    with pytest.raises(CertificateError):
        build_certificate(g, b, 1, 1)
    with pytest.raises(NotConnectedError):
        make(NAMED["two_edges"], 0, 2)


def test_choose_examples():
    assert choose(make(NAMED["path3"], 0, 2)) == CertEdge(0, 1, "tree")
    e = choose(make(NAMED["triangle"], 0, 2))
    assert e == CertEdge(0, 1, "back") and e.is_back
    c = make(NAMED["k4"], 0, 3)
    assert choose(c) == CertEdge(0, c.lb[0][-1], "back")
    c = make(NAMED["path3"], 1, 2)
    left_update(c, choose(c))
    with pytest.raises(CertificateError):
        choose(c)


def test_right_update_triangle_detaches_dead_vertex():
    c = make(NAMED["triangle"], 0, 2)
    log = right_update(c, choose(c))
    assert c.vertices() == [0, 2]
    assert c.check() == []
    assert choose(c) == CertEdge(0, 2, "tree")
    assert len(log) > 0


def test_right_update_k4_keeps_everything():
    c = make(NAMED["k4"], 0, 3)
    before = c.vertices()
    right_update(c, choose(c))
    assert sorted(c.vertices()) == sorted(before)
    assert c.check() == []


def test_right_update_last_back_edge_leaves_tree_edge():
    c = make(NAMED["k4"], 0, 3)
    while c.lb[0]:
        right_update(c, choose(c))
        assert c.check() == []
    e = choose(c)
    assert not e.is_back
    assert c.children[0] == [e.v]


def test_right_update_errors():
    c = make(NAMED["path3"], 0, 2)
    with pytest.raises(CertificateError):
        right_update(c, CertEdge(0, 1, "tree"))
    c = make(NAMED["triangle"], 0, 2)
    with pytest.raises(CertificateError):
        right_update(c, CertEdge(0, 2, "back"))


def test_left_update_tree_edge():
    c = make(NAMED["path3"], 0, 2)
    left_update(c, choose(c))
    assert c.root == 1 and c.leftmost_path() == [1, 2]
    assert c.check() == []


def test_left_update_bowtie_drops_first_bead():
    g = NAMED["bowtie"]
    c = make(g, 0, 4)
    while c.root != 2:
        e = choose(c)
        left_update(c, e)
        assert c.check() == []
    assert set(c.vertices()) == {2, 3, 4}
    assert c.edges() == {(2, 3), (2, 4), (3, 4)}


def count_paths(c):
    """Number of root-to-target paths by exhaustive branching on the certificate."""
    if c.root == c.target:
        return 1
    e = choose(c)
    total = 0
    if e.is_back:
        log = right_update(c, e)
        total += count_paths(c)
        restore(c, log)
    log = left_update(c, e)
    total += count_paths(c)
    restore(c, log)
    return total


def test_left_update_k4_back_edge():
    c = make(NAMED["k4"], 0, 3)
    e = choose(c)
    assert e.is_back
    left_update(c, e)
    assert c.root == e.v
    assert set(c.vertices()) == {1, 2, 3}
    assert c.check() == []
    assert count_paths(c) == 2


def test_left_update_rejects_foreign_edge():
    c = make(NAMED["k4"], 0, 3)
    with pytest.raises(CertificateError):
        left_update(c, CertEdge(1, 2, "back"))
    c = make(NAMED["triangle"], 0, 2)
    with pytest.raises(CertificateError):
        left_update(c, CertEdge(0, 2, "tree"))


def test_restore_round_trip_and_nesting():
    c = make(NAMED["k4"], 0, 3)
    fp0 = c.fingerprint()
    e1 = choose(c)
    log1 = right_update(c, e1)
    fp1 = c.fingerprint()
    e2 = choose(c)
    log2 = left_update(c, e2)
    assert c.fingerprint() != fp1
    restore(c, log2)
    assert c.fingerprint() == fp1
    restore(c, log1)
    assert c.fingerprint() == fp0


def test_restore_out_of_order_detected():
    c = make(NAMED["k4"], 0, 3)
    log1 = right_update(c, choose(c))
    log2 = right_update(c, choose(c))
    with pytest.raises(CertificateError, match="out-of-order"):
        restore(c, log1)
    restore(c, log2)
    restore(c, log1)
    with pytest.raises(CertificateError):
        restore(c, log1)


def test_compacted_head_examples():
    # single edge head: the path's first edge
    h = compacted_head(make(NAMED["path3"], 0, 2))
    assert (h.V_X, h.E_X) == (2, 1) and h.trivial
    # any cycle compacts to a double edge
    for n in (3, 4, 7):
        cyc = Graph(n, [(i, (i + 1) % n) for i in range(n)])
        for t in range(1, n):
            h = compacted_head(make(cyc, 0, t))
            assert (h.V_X, h.E_X) == (2, 2), (n, t)
            assert h.trivial
    h = compacted_head(make(NAMED["k4"], 0, 3))
    assert (h.V_X, h.E_X) == (4, 6)


def test_dump_format():
    c = make(NAMED["triangle"], 0, 2)
    lines = c.dump().splitlines()
    assert lines[0] == "0 -1 0 0 [lb:1] [ab:]"
    assert len(lines) == 3
    for line in lines:
        v, p, g, lo, lb, ab = line.split()
        assert lb.startswith("[lb:") and ab.startswith("[ab:")
    assert [int(x.split()[0]) for x in lines] == c.vertices()


def test_spine_context_region_is_local():
    c = make(NAMED["chain_of_cycles"], 0, 8)
    sp = SpineContext(c)
    assert sp.exit == 2
    verts, edges = sp.region(1)
    assert verts == {1, 2}
    assert sorted(tuple(sorted(e)) for e in edges) == [(1, 2)]


def walk(c, seen, depth=0):
    """Exhaustive branching that checks invariants and round trips at every node."""
    assert c.check() == []
    if c.root == c.target:
        return 1
    fp = c.fingerprint()
    spine = SpineContext(c)
    e = choose(c)
    total = 0
    if e.is_back:
        log = right_update(c, e)
        total += walk(c, seen, depth + 1)
        restore(c, log)
        assert c.fingerprint() == fp
    log = left_update(c, e, spine)
    total += walk(c, seen, depth + 1)
    restore(c, log)
    assert c.fingerprint() == fp
    return total


graphs = st.builds(
    random_graph,
    st.integers(min_value=2, max_value=8),
    st.sampled_from([0.3, 0.5, 0.8]),
    st.integers(min_value=0, max_value=2**64 - 1),
)


@given(graphs, st.data())
@settings(max_examples=80, deadline=None)
def test_branching_on_certificate_counts_all_paths(g, data):
    s = data.draw(st.integers(0, g.n - 1))
    t = data.draw(st.integers(0, g.n - 1).filter(lambda x: x != s))
    expected = len(brute_force_st_paths(g, s, t))
    try:
        c = make(g, s, t)
    except NotConnectedError:
        assert expected == 0
        return
    assert walk(c, set()) == expected


@given(graphs, st.data())
@settings(max_examples=80, deadline=None)
def test_random_update_sequences_restore_exactly(g, data):
    s = data.draw(st.integers(0, g.n - 1))
    t = data.draw(st.integers(0, g.n - 1).filter(lambda x: x != s))
    try:
        c = make(g, s, t)
    except NotConnectedError:
        return
    stack = []
    for _ in range(data.draw(st.integers(0, 3 * g.n))):
        if stack and data.draw(st.booleans()):
            fp, log = stack.pop()
            restore(c, log)
            assert c.fingerprint() == fp
        elif c.root != c.target:
            fp = c.fingerprint()
            e = choose(c)
            if e.is_back and data.draw(st.booleans()):
                log = right_update(c, e)
            else:
                log = left_update(c, e)
            stack.append((fp, log))
        assert c.check() == []
    while stack:
        fp, log = stack.pop()
        restore(c, log)
        assert c.fingerprint() == fp
