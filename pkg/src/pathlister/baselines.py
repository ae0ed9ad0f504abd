"""Reference enumerators: exhaustive backtracking oracles and a Johnson-style lister."""

from __future__ import annotations

import time
from collections import defaultdict
from typing import Callable, Optional

from .blocks import biconnected_components
from .enumerator import RunStats, StopEnumeration, canonical_cycle
from .graph import Graph

__all__ = [
    "SizeLimitError",
    "DEFAULT_LIMIT",
    "brute_force_st_paths",
    "brute_force_cycles",
    "johnson_cycles",
]

DEFAULT_LIMIT = 16


class SizeLimitError(ValueError):
    """The graph is too large for an exhaustive oracle."""


def _guard(g: Graph, limit: int) -> None:
    if g.n > limit:
        raise SizeLimitError(f"n={g.n} exceeds the oracle limit of {limit}")


def brute_force_st_paths(g: Graph, s: int, t: int, limit: int = DEFAULT_LIMIT) -> set[tuple[int, ...]]:
    """All simple ``s``-``t`` paths by plain backtracking."""
    _guard(g, limit)
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise ValueError(f"s={s}, t={t} out of range for n={g.n}")
    if s == t:
        raise ValueError("s == t")
    out: set[tuple[int, ...]] = set()
    path = [s]
    on_path = {s}

    def extend(v: int) -> None:
        for w in g.adjacency[v]:
            if w == t:
                out.add(tuple(path) + (t,))
            elif w not in on_path:
                path.append(w)
                on_path.add(w)
                extend(w)
                on_path.discard(path.pop())

    extend(s)
    return out


def brute_force_cycles(g: Graph, limit: int = DEFAULT_LIMIT) -> set[tuple[int, ...]]:
    """All simple cycles in canonical form.

    Cycles are grown from their smallest vertex through larger vertices only,
    so each is found exactly twice (once per direction) before canonicalising.
    """
    _guard(g, limit)
    out: set[tuple[int, ...]] = set()
    for low in range(g.n):
        path = [low]
        on_path = {low}

        def extend(v: int) -> None:
            for w in g.adjacency[v]:
                if w == low and len(path) >= 3:
                    out.add(canonical_cycle(path))
                elif w > low and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    extend(w)
                    on_path.discard(path.pop())

        extend(low)
    return out


def johnson_cycles(g: Graph, sink: Optional[Callable[[tuple[int, ...]], None]] = None) -> RunStats:
    """Johnson's circuit search run on each biconnected component.

    Every undirected edge is treated as two opposite arcs.  The search from
    start vertex ``s`` only uses vertices ``>= s`` of the component, so each
    undirected cycle is met once per direction, plus a two-arc circuit per
    neighbour of ``s``.  Two-arc circuits still unblock like any circuit but
    are not reported, and of the two directions only the one whose second
    vertex is smaller than its last is emitted.  ``work_units`` counts arc
    inspections, unblock steps and output vertices.
    """
    start = time.perf_counter_ns()
    stats = RunStats()
    bt = biconnected_components(g)
    work = bt.work
    try:
        for comp in bt.bccs:
            if len(comp) < 3:
                continue
            verts = sorted({x for e in comp for x in e})
            index = {v: i for i, v in enumerate(verts)}
            adj: list[list[int]] = [[] for _ in verts]
            for a, b in comp:
                adj[index[a]].append(index[b])
                adj[index[b]].append(index[a])
            for lst in adj:
                lst.sort()
            work += len(verts) + 2 * len(comp)
            for s in range(len(verts)):
                work += _circuits_from(s, adj, verts, stats, sink)
    except StopEnumeration:
        stats.truncated = True
    stats.work_units += work
    stats.leaves = stats.solutions
    stats.elapsed_ns = time.perf_counter_ns() - start
    return stats


def _circuits_from(s: int, adj: list[list[int]], names: list[int], stats: RunStats, sink) -> int:
    """Circuits through local vertex ``s`` using vertices ``>= s`` only."""
    work = 0
    n = len(adj)
    blocked = [False] * n
    blocked_by: list[set[int]] = [set() for _ in range(n)]
    blocked[s] = True
    path = [s]
    found = [False]
    stack = [iter(adj[s])]

    while stack:
        advanced = False
        for w in stack[-1]:
            work += 1
            if w <= s:
                if w == s:
                    found[-1] = True
                    if len(path) > 2 and path[1] < path[-1]:
                        stats.solutions += 1
                        stats.output_size += len(path)
                        work += len(path)
                        if sink is not None:
                            sink(canonical_cycle([names[x] for x in path]))
            elif not blocked[w]:
                path.append(w)
                blocked[w] = True
                found.append(False)
                stack.append(iter(adj[w]))
                advanced = True
                break
        if advanced:
            continue
        v = path.pop()
        stack.pop()
        f = found.pop()
        if f:
            # unblock v and, transitively, whatever waits on it
            todo = [v]
            while todo:
                y = todo.pop()
                blocked[y] = False
                waiting = blocked_by[y]
                if waiting:
                    blocked_by[y] = set()
                    for x in waiting:
                        work += 1
                        if blocked[x]:
                            todo.append(x)
                work += 1
        else:
            for w in adj[v]:
                if w > s:
                    blocked_by[w].add(v)
                work += 1
        if found:
            found[-1] = found[-1] or f
    return work
