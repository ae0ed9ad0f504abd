"""Binary-partition listing of st-paths and cycles.

:func:`list_st_paths` walks the recursion tree of the binary partition
explicitly: at every node the certificate proposes an edge ``e`` at the
current vertex ``u``; the right child lists the paths avoiding ``e`` (only
when ``e`` is a back edge, otherwise every path uses it) and the left child
the paths using it.  Since the certificate only ever describes the bead
string of the current graph, every recursion node has at least one
descendant leaf, and leaves are exactly the emitted paths.

:func:`list_cycles` reduces cycle listing to st-path listing one
biconnected component at a time: pick a back edge ``(s, t)`` of a component
``B``, list the st-paths of ``B - (s, t)`` (each closes into a cycle through
the edge), then push the biconnected components of ``B - (s, t)`` back on
the worklist.
"""

from __future__ import annotations

import json
import time
from collections import deque
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .blocks import BlockTree, NotConnectedError, bcc_edge_lists, bead_string, biconnected_components
from .certificate import Certificate, CertificateError, SpineContext, build_certificate
from .graph import Graph

__all__ = [
    "RunStats",
    "SpineRecord",
    "CostReport",
    "StopEnumeration",
    "list_st_paths",
    "list_cycles",
    "canonical_cycle",
    "audit_costs",
]

Sink = Callable[[tuple[int, ...]], None]

DENSITY_BOUND = 11 / 10


class StopEnumeration(Exception):
    """Raise from a sink to end the enumeration early; stats are still returned."""


@dataclass(frozen=True)
class SpineRecord:
    """Compacted head at the top of a spine and the leaves found below it."""

    V_X: int
    E_X: int
    leaves: int
    trivial: bool


@dataclass
class RunStats:
    leaves: int = 0
    unary_nodes: int = 0
    binary_nodes: int = 0
    spines: int = 0
    work_units: int = 0
    output_size: int = 0
    elapsed_ns: int = 0
    solutions: int = 0
    st_runs: int = 0
    truncated: bool = False
    instrumented: bool = False
    per_spine: list[SpineRecord] = field(default_factory=list)
    # populated only by instrumented / checked runs
    left_branch_mismatches: int = 0
    dead_nodes: int = 0
    fingerprint_mismatches: int = 0
    invariant_failures: list[str] = field(default_factory=list)
    nodes_checked: int = 0

    def to_json(self) -> str:
        keys = ("leaves", "unary_nodes", "binary_nodes", "spines",
                "work_units", "output_size", "elapsed_ns")
        return json.dumps({k: getattr(self, k) for k in keys})

    def as_dict(self) -> dict:
        return asdict(self)

    def absorb(self, other: "RunStats") -> None:
        """Add the counters of ``other`` (one st-run) into ``self``."""
        for name in ("leaves", "unary_nodes", "binary_nodes", "spines", "work_units",
                     "output_size", "solutions", "st_runs", "left_branch_mismatches",
                     "dead_nodes", "fingerprint_mismatches", "nodes_checked"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        self.per_spine.extend(other.per_spine)
        self.invariant_failures.extend(other.invariant_failures)
        self.truncated = self.truncated or other.truncated


@dataclass(frozen=True)
class CostReport:
    ratio: float
    charges: tuple[float, ...]
    lemma5_violations: int
    lemma6_violations: int
    spines: int


def _check_vertex(g: Graph, v: int, name: str) -> None:
    if not isinstance(v, int) or not 0 <= v < g.n:
        raise ValueError(f"{name}={v!r} is not a vertex of a graph with n={g.n}")


def list_st_paths(
    g: Graph,
    s: int,
    t: int,
    sink: Optional[Sink] = None,
    *,
    check: bool = False,
    instrument: bool = False,
) -> RunStats:
    """List every simple path from ``s`` to ``t`` exactly once.

    Parameters
    ----------
    g : Graph
    s, t : int
        Distinct endpoints.
    sink : callable, optional
        Receives each path as a tuple of vertices from ``s`` to ``t``.  When
        omitted paths are only counted (``output_size`` is still tallied).
    check : bool
        Verify the certificate after every update: structural invariants,
        agreement with a freshly computed bead string, and fingerprint
        equality across each update/restore pair.  Slow; for tests.
    instrument : bool
        Record per-spine compacted heads and recursion-tree checks needed by
        :func:`audit_costs`.

    Returns
    -------
    RunStats
    """
    _check_vertex(g, s, "s")
    _check_vertex(g, t, "t")
    if s == t:
        raise ValueError("s == t: use list_cycles for cycles")
    start = time.perf_counter_ns()
    bt = biconnected_components(g)
    stats = RunStats(instrumented=instrument or check)
    stats.work_units += bt.work
    _st_run(g, bt, s, t, sink, stats, check, instrument)
    stats.elapsed_ns = time.perf_counter_ns() - start
    return stats


def _st_run(
    g: Graph,
    bt: BlockTree,
    s: int,
    t: int,
    sink: Optional[Sink],
    stats: RunStats,
    check: bool,
    instrument: bool,
    emit: Optional[Callable[[list[int]], None]] = None,
) -> None:
    try:
        bead = bead_string(bt, s, t)
    except NotConnectedError:
        return
    stats.st_runs += 1
    cert = build_certificate(g, bead, s, t)
    instrument = instrument or check
    if check:
        _verify(g, cert, [s], set(), stats)

    path = [s]
    lefts = 0
    removed: set[tuple[int, int]] = set()
    # frame: [stage, edge, log, spine, leaves_at_entry, spine_record_slot, fingerprint]
    ENTER, AFTER_RIGHT, AFTER_LEFT = 0, 1, 2
    frames: list[list] = [[ENTER, None, None, None, 0, None, None]]
    # the spine context handed down to a right child
    pending_spine: Optional[SpineContext] = None
    try:
        while frames:
            f = frames[-1]
            stage = f[0]
            if stage == ENTER:
                spine, pending_spine = pending_spine, None
                f[4] = stats.leaves
                u = cert.root
                if u == t:
                    stats.leaves += 1
                    stats.output_size += len(path) - 1
                    stats.work_units += len(path)
                    if instrument and lefts != len(path) - 1:
                        stats.left_branch_mismatches += 1
                    stats.solutions += 1
                    if emit is not None:
                        emit(path)
                    elif sink is not None:
                        sink(tuple(path))
                    frames.pop()
                    continue
                e = cert.choose()
                f[1] = e
                if instrument:
                    f[6] = cert.fingerprint() if check else None
                if not e.is_back:
                    stats.unary_nodes += 1
                    log = cert.left_update(e)
                    stats.work_units += len(log)
                    f[2] = log
                    f[0] = AFTER_LEFT
                    path.append(e.v)
                    lefts += 1
                    if check:
                        _verify(g, cert, path, removed, stats)
                    frames.append([ENTER, None, None, None, 0, None, None])
                    continue
                stats.binary_nodes += 1
                if spine is None:
                    # first binary node reached with this root: a new spine
                    stats.spines += 1
                    if instrument:
                        head = cert.compacted_head()
                        f[5] = (head.V_X, head.E_X, head.trivial)
                    spine = SpineContext(cert)
                f[3] = spine
                log = cert.right_update(e)
                stats.work_units += len(log)
                f[2] = log
                f[0] = AFTER_RIGHT
                if check:
                    removed.add((min(e.u, e.v), max(e.u, e.v)))
                    _verify(g, cert, path, removed, stats)
                pending_spine = spine
                frames.append([ENTER, None, None, None, 0, None, None])
            elif stage == AFTER_RIGHT:
                cert.restore(f[2])
                e = f[1]
                if check:
                    removed.discard((min(e.u, e.v), max(e.u, e.v)))
                    _same_fingerprint(cert, f[6], stats)
                log = cert.left_update(e, f[3])
                stats.work_units += len(log)
                f[2] = log
                f[0] = AFTER_LEFT
                path.append(e.v)
                lefts += 1
                if check:
                    _verify(g, cert, path, removed, stats)
                frames.append([ENTER, None, None, None, 0, None, None])
            else:
                cert.restore(f[2])
                path.pop()
                lefts -= 1
                if check:
                    _same_fingerprint(cert, f[6], stats)
                below = stats.leaves - f[4]
                if instrument and below == 0:
                    stats.dead_nodes += 1
                if f[5] is not None:
                    v_x, e_x, trivial = f[5]
                    stats.per_spine.append(SpineRecord(v_x, e_x, below, trivial))
                frames.pop()
    except StopEnumeration:
        stats.truncated = True
    finally:
        stats.work_units += cert.work


def _same_fingerprint(cert: Certificate, before: Optional[str], stats: RunStats) -> None:
    stats.nodes_checked += 1
    if before is not None and cert.fingerprint() != before:
        stats.fingerprint_mismatches += 1


def _verify(g: Graph, cert: Certificate, path: Sequence[int], removed: set, stats: RunStats) -> None:
    """Compare the certificate with the bead string of the current graph."""
    errs = cert.check()
    u, t = path[-1], cert.target
    if cert.root != u:
        errs.append(f"root {cert.root} but path ends at {u}")
    if u != t:
        gone = set(path[:-1])
        adj = {
            v: [w for w in g.adjacency[v]
                if w not in gone and (min(v, w), max(v, w)) not in removed]
            for v in range(g.n) if v not in gone
        }
        comps, art, _ = bcc_edge_lists(sorted(adj), adj)
        bccs = tuple(tuple(sorted((min(e), max(e)) for e in c)) for c in comps)
        v2b: list[list[int]] = [[] for _ in range(g.n)]
        for i, c in enumerate(bccs):
            for x in sorted({x for e in c for x in e}):
                v2b[x].append(i)
        tree = tuple((i, x) for x in sorted(art) for i in v2b[x])
        bt = BlockTree(bccs, frozenset(art), tree, tuple(tuple(b) for b in v2b))
        try:
            bead = bead_string(bt, u, t)
        except NotConnectedError:
            errs.append(f"no path left from {u} to {t}")
        else:
            want_edges = {e for i in bead.beads for e in bt.bccs[i]}
            if set(cert.vertices()) != set(bead.vertex_set):
                errs.append(f"vertices {sorted(cert.vertices())} != bead string {sorted(bead.vertex_set)}")
            elif cert.edges() != want_edges:
                errs.append("certificate edges differ from the bead string")
    if errs:
        stats.invariant_failures.extend(f"at path {list(path)}: {m}" for m in errs)


def canonical_cycle(vertices: Sequence[int]) -> tuple[int, ...]:
    """Rotate so the smallest vertex is first, then orient toward its smaller neighbour."""
    k = len(vertices)
    i = min(range(k), key=vertices.__getitem__)
    rot = tuple(vertices[i:]) + tuple(vertices[:i])
    if k > 2 and rot[-1] < rot[1]:
        rot = (rot[0],) + tuple(reversed(rot[1:]))
    return rot


def _first_back_edge(local: Graph) -> tuple[int, int]:
    """First non-tree edge met by a DFS from vertex 0, as (descendant, ancestor)."""
    seen = [False] * local.n
    seen[0] = True
    stack = [(0, -1, iter(local.adjacency[0]))]
    while stack:
        v, p, it = stack[-1]
        for w in it:
            if w == p:
                continue
            if seen[w]:
                return v, w
            seen[w] = True
            stack.append((w, v, iter(local.adjacency[w])))
            break
        else:
            stack.pop()
    raise ValueError("component has no cycle")


def list_cycles(
    g: Graph,
    sink: Optional[Sink] = None,
    *,
    check: bool = False,
    instrument: bool = False,
) -> RunStats:
    """List every simple cycle of ``g`` once, in canonical form.

    Each component taken from the worklist is relabelled to a dense local
    graph; one biconnected decomposition of ``B - b`` serves both the
    st-path run and the new worklist entries.
    """
    start = time.perf_counter_ns()
    stats = RunStats(instrumented=instrument or check)
    bt = biconnected_components(g)
    stats.work_units += bt.work
    work: deque[tuple[tuple[int, int], ...]] = deque(c for c in bt.bccs if len(c) > 1)
    try:
        while work:
            edges = work.popleft()
            verts = sorted({x for e in edges for x in e})
            index = {v: i for i, v in enumerate(verts)}
            local = Graph(len(verts), ((index[a], index[b]) for a, b in edges))
            stats.work_units += len(verts) + 2 * len(edges)
            s, t = _first_back_edge(local)
            rest = Graph(local.n, (e for e in local.edges() if e != (min(s, t), max(s, t))))
            sub_bt = biconnected_components(rest)
            stats.work_units += sub_bt.work

            def emit(path: list[int], verts=verts) -> None:
                stats.output_size += 1  # the closing edge
                if sink is not None:
                    sink(canonical_cycle([verts[x] for x in path]))

            run = RunStats()
            try:
                _st_run(rest, sub_bt, s, t, sink, run, check, instrument, emit=emit)
            finally:
                stats.absorb(run)
            if run.truncated:
                break
            for c in sub_bt.bccs:
                if len(c) > 1:
                    work.append(tuple(sorted(
                        (min(verts[a], verts[b]), max(verts[a], verts[b])) for a, b in c
                    )))
    except StopEnumeration:
        stats.truncated = True
    stats.elapsed_ns = time.perf_counter_ns() - start
    return stats


def audit_costs(stats: RunStats, g: Graph) -> CostReport:
    """Check per-spine bounds and compute the work ratio of an instrumented run.

    The ratio is ``work_units / (m + output_size)``.  A spine violates the
    path lower bound when fewer than ``E_X - V_X + 1`` leaves lie below it,
    and the density bound when a non-trivial compacted head has
    ``E_X / V_X < 11/10``.

    Raises
    ------
    ValueError
        If ``stats`` does not come from an instrumented run.
    """
    if not stats.instrumented:
        raise ValueError("audit_costs needs stats from an instrumented run")
    charges = []
    short_of_paths = too_sparse = 0
    for rec in stats.per_spine:
        cyclomatic = rec.E_X - rec.V_X + 1
        if rec.E_X > rec.V_X:
            charges.append((rec.V_X + rec.E_X) / cyclomatic)
        if rec.leaves < cyclomatic:
            short_of_paths += 1
        if not rec.trivial and rec.E_X * 10 < rec.V_X * 11:
            too_sparse += 1
    denom = g.m + stats.output_size
    ratio = stats.work_units / denom if denom else float(stats.work_units)
    return CostReport(ratio, tuple(charges), short_of_paths, too_sparse, len(stats.per_spine))
