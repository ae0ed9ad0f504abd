"""Immutable simple undirected graphs and the edge-list text format.

Vertices are dense integers ``0..n-1``.  Adjacency lists are stored sorted so
that every traversal built on top of a :class:`Graph` is deterministic.
"""

from __future__ import annotations

import logging
from typing import Iterable, Sequence

__all__ = [
    "Graph",
    "GraphFormatError",
    "parse_edge_list",
    "serialize_edge_list",
    "neighbors",
    "connected_components",
]

log = logging.getLogger(__name__)


class GraphFormatError(ValueError):
    """Raised when an edge list cannot be turned into a simple graph."""


class Graph:
    """Simple undirected graph in sorted adjacency-list form.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of (int, int)
        Undirected edges.  Duplicates (in either orientation) are collapsed;
        self-loops and out-of-range endpoints raise :class:`GraphFormatError`.
    """

    __slots__ = ("n", "m", "adjacency")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphFormatError(f"negative vertex count {n}")
        sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphFormatError(f"self-loop on vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) out of range for n={n}")
            sets[u].add(v)
            sets[v].add(u)
        self.n = n
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in sets)
        self.m = sum(len(a) for a in self.adjacency) // 2

    def neighbors(self, v: int) -> tuple[int, ...]:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range for n={self.n}")
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, v)`` pairs with ``u < v``, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph on ``vertices``, relabelled densely in ascending order.

        Returns the subgraph and the tuple mapping new ids back to ids of ``self``.
        """
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        sub_edges = [
            (index[u], index[w])
            for u in keep
            for w in self.adjacency[u]
            if u < w and w in index
        ]
        return Graph(len(keep), sub_edges), tuple(keep)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def neighbors(g: Graph, v: int) -> tuple[int, ...]:
    return g.neighbors(v)


def connected_components(g: Graph) -> list[list[int]]:
    """Partition the vertices into connected components.

    Components are returned as sorted vertex lists, ordered by smallest vertex.
    """
    comp = [-1] * g.n
    out: list[list[int]] = []
    for root in range(g.n):
        if comp[root] != -1:
            continue
        cid = len(out)
        comp[root] = cid
        members = [root]
        stack = [root]
        while stack:
            v = stack.pop()
            for w in g.adjacency[v]:
                if comp[w] == -1:
                    comp[w] = cid
                    members.append(w)
                    stack.append(w)
        members.sort()
        out.append(members)
    return out


def parse_edge_list(text: bytes | str) -> Graph:
    """Parse the edge-list format.

    The first non-comment line is ``n m_declared``; every other non-empty line
    is ``u v``.  Lines starting with ``#`` are ignored.  ``m_declared`` is only
    advisory: a mismatch with the deduplicated edge count logs a warning.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer token in {raw!r}") from None
        if a < 0 or b < 0:
            raise GraphFormatError(f"line {lineno}: negative value in {raw!r}")
        if header is None:
            header = (a, b)
        else:
            edges.append((a, b))
    if header is None:
        raise GraphFormatError("empty input")
    n, m_declared = header
    g = Graph(n, edges)
    if g.m != m_declared:
        log.warning("header declares %d edges, found %d distinct", m_declared, g.m)
    return g


def serialize_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def from_adjacency(rows: Sequence[Iterable[int]]) -> Graph:
    """Build a graph from (possibly asymmetric) adjacency rows."""
    return Graph(len(rows), ((u, v) for u, row in enumerate(rows) for v in row))
