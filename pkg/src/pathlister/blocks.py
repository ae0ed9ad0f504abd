"""Biconnected components, block-cut trees and bead strings.

A *bead string* between ``s`` and ``t`` is the sequence of biconnected
components met on the unique block-tree path from ``s`` to ``t``.  Every
simple ``s``-``t`` path lives inside the union of those components and passes
through every articulation point joining two consecutive beads, so the
enumerators restrict their work to it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from .graph import Graph

__all__ = [
    "BlockTree",
    "BeadString",
    "NotConnectedError",
    "biconnected_components",
    "bcc_edge_lists",
    "bead_string",
    "induced_bead_subgraph",
    "BeadSubgraph",
]


class NotConnectedError(ValueError):
    """``s`` and ``t`` lie in different connected components (no st-path)."""


def bcc_edge_lists(
    vertices: Iterable[Hashable],
    adj: Mapping | Sequence,
) -> tuple[list[list[tuple]], set, int]:
    """Hopcroft-Tarjan biconnected components, iteratively.

    Parameters
    ----------
    vertices
        Vertices to start DFS from, in order.  Each DFS tree is rooted at the
        first unvisited vertex of this sequence.
    adj
        ``adj[v]`` is the iterable of neighbours of ``v``.

    Returns
    -------
    components : list of edge lists
        Edges of each component as ``(u, w)`` tuples in discovery orientation.
    articulation : set
        Articulation points.
    work : int
        Number of adjacency entries inspected, for cost accounting.
    """
    disc: dict = {}
    low: dict = {}
    comps: list[list[tuple]] = []
    art: set = set()
    edge_stack: list[tuple] = []
    time = 0
    work = 0
    for root in vertices:
        if root in disc:
            continue
        disc[root] = low[root] = time
        time += 1
        root_children = 0
        stack = [(root, None, iter(adj[root]))]
        while stack:
            v, p, it = stack[-1]
            descended = False
            for w in it:
                work += 1
                if w == p:
                    continue
                if w not in disc:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = time
                    time += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(adj[w])))
                    descended = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if descended:
                continue
            stack.pop()
            if p is None:
                continue
            if low[v] < low[p]:
                low[p] = low[v]
            if low[v] >= disc[p]:
                comp = []
                while True:
                    e = edge_stack.pop()
                    comp.append(e)
                    if e == (p, v):
                        break
                comps.append(comp)
                if p != root or root_children > 1:
                    art.add(p)
    return comps, art, work


@dataclass(frozen=True)
class BlockTree:
    """Biconnected decomposition of a graph.

    ``tree_adjacency`` holds the edges of the block-cut forest as
    ``(bcc_id, articulation_point)`` pairs: a component is joined to every
    articulation point it contains.  Two components share an articulation
    point exactly when they are at distance two in this forest.
    """

    bccs: tuple[tuple[tuple[int, int], ...], ...]
    articulation_points: frozenset[int]
    tree_adjacency: tuple[tuple[int, int], ...]
    vertex_to_bccs: tuple[tuple[int, ...], ...]
    work: int = 0

    def bcc_vertices(self, i: int) -> set[int]:
        return {x for e in self.bccs[i] for x in e}

    def __len__(self) -> int:
        return len(self.bccs)


def biconnected_components(g: Graph) -> BlockTree:
    """Decompose ``g`` into biconnected components in ``O(n + m)``."""
    comps, art, work = bcc_edge_lists(range(g.n), g.adjacency)
    bccs = tuple(tuple(sorted((min(e), max(e)) for e in c)) for c in comps)
    v2b: list[list[int]] = [[] for _ in range(g.n)]
    for i, c in enumerate(bccs):
        seen = set()
        for e in c:
            for x in e:
                if x not in seen:
                    seen.add(x)
                    v2b[x].append(i)
    tree = tuple((i, x) for x in sorted(art) for i in v2b[x])
    return BlockTree(bccs, frozenset(art), tree, tuple(tuple(b) for b in v2b), work)


@dataclass(frozen=True)
class BeadString:
    s: int
    t: int
    beads: tuple[int, ...]
    cut_vertices: tuple[int, ...]
    vertex_set: frozenset[int]


def _node_of(bt: BlockTree, v: int):
    if v in bt.articulation_points:
        return ("v", v)
    if bt.vertex_to_bccs[v]:
        return ("b", bt.vertex_to_bccs[v][0])
    return None


def bead_string(bt: BlockTree, s: int, t: int) -> BeadString:
    """Beads on the block-tree path from ``s`` to ``t``.

    When ``s`` (or ``t``) is an articulation point the first (last) bead is
    the one on that path.

    Raises
    ------
    ValueError
        If ``s == t``.
    NotConnectedError
        If ``s`` and ``t`` are in different connected components.
    """
    if s == t:
        raise ValueError("bead string needs s != t")
    src, dst = _node_of(bt, s), _node_of(bt, t)
    if src is None or dst is None:
        raise NotConnectedError(f"{s} and {t} are not connected")
    nbrs: dict = {}
    for i, x in bt.tree_adjacency:
        nbrs.setdefault(("b", i), []).append(("v", x))
        nbrs.setdefault(("v", x), []).append(("b", i))
    parent = {src: None}
    queue = deque([src])
    while queue and dst not in parent:
        node = queue.popleft()
        for nxt in nbrs.get(node, ()):
            if nxt not in parent:
                parent[nxt] = node
                queue.append(nxt)
    if dst not in parent:
        raise NotConnectedError(f"{s} and {t} are not connected")
    walk = []
    node = dst
    while node is not None:
        walk.append(node)
        node = parent[node]
    walk.reverse()
    beads = tuple(i for kind, i in walk if kind == "b")
    cuts = tuple(x for kind, x in walk if kind == "v" and x not in (s, t))
    verts = frozenset(x for i in beads for e in bt.bccs[i] for x in e)
    return BeadString(s, t, beads, cuts, verts)


@dataclass(frozen=True)
class BeadSubgraph:
    graph: Graph
    to_parent: tuple[int, ...]

    def local(self, v: int) -> int:
        return self.to_parent.index(v)


def induced_bead_subgraph(g: Graph, b: BeadString) -> BeadSubgraph:
    sub, mapping = g.induced(b.vertex_set)
    return BeadSubgraph(sub, mapping)
