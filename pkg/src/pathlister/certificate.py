"""Dynamic DFS-tree certificate of the current bead string.

The certificate for a recursion node with current vertex ``u`` is a DFS tree
of the bead string ``B(u, t)`` rooted at ``u`` with ``t`` on the leftmost
root-to-leaf path, augmented per vertex ``v`` with

* ``lb[v]``: back edges to descendants, in DFS preorder of the far endpoint;
* ``ab[v]``: back edges to ancestors, stored deepest first so the topmost
  ancestor (the one that decides lowpoints) is ``ab[v][-1]``;
* ``gamma[v]``: integer label, strictly increasing from ancestor to
  descendant;
* ``low[v]``: the smallest ``gamma`` reachable from the subtree of ``v``
  through at most one back edge (``gamma[v]`` itself when nothing is smaller).

A child ``w`` of ``y`` is separated from the rest of the tree by ``y``
exactly when ``low[w] >= gamma[y]``.  Children off the leftmost path that are
separated that way are not in the bead string and get cut.

Updates mutate the structure in place and return an :class:`UndoLog`;
:meth:`Certificate.restore` replays it backwards.  Logs must be restored in
LIFO order.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Literal

from .blocks import BeadString, bcc_edge_lists
from .graph import Graph

__all__ = [
    "Certificate",
    "CertEdge",
    "UndoLog",
    "CompactedHead",
    "SpineContext",
    "CertificateError",
    "build_certificate",
    "choose",
    "left_update",
    "right_update",
    "restore",
    "compacted_head",
]

NIL = -1


class CertificateError(RuntimeError):
    """Contract violation on a certificate operation."""


@dataclass(frozen=True)
class CertEdge:
    """Edge returned by :meth:`Certificate.choose`; ``u`` is always the root."""

    u: int
    v: int
    kind: Literal["tree", "back"]

    @property
    def is_back(self) -> bool:
        return self.kind == "back"


@dataclass
class UndoLog:
    entries: list = field(default_factory=list)
    version: int = 0

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class CompactedHead:
    """Head of the bead string with degree-2 chains contracted.

    ``contracted`` lists the head vertices folded into a chain.  Contracting
    a degree-2 vertex removes one vertex and one edge, so ``E_X - V_X + 1``
    equals the cyclomatic number of the uncompacted head.
    """

    V_X: int
    E_X: int
    head_vertices: int
    head_edges: int
    contracted: tuple[int, ...] = ()

    @property
    def trivial(self) -> bool:
        """The head is a single edge or a cycle (compacts to a single or double edge)."""
        return self.head_edges <= self.head_vertices

    @property
    def density(self) -> float:
        return self.E_X / self.V_X


class SpineContext:
    """Block structure shared by the left branches of one spine.

    Along a spine only edges at the root ``u`` are deleted, so every left
    branch continues in the same graph ``G - u``.  The block-cut tree of
    ``H - u`` (``H`` being the head at the top of the spine) is computed once
    here, rooted at ``exit``: the articulation point where the head meets the
    rest of the bead string, or ``t`` itself.  A left branch through
    ``(u, z)`` then only rebuilds the beads on the block-tree path from ``z``
    to ``exit``; everything below ``exit`` is reused as is.
    """

    __slots__ = ("root", "exit", "below", "head", "_node", "_parent", "_bcc_vertices", "_bcc_edges")

    def __init__(self, cert: "Certificate"):
        u = cert.root
        self.root = u
        self.exit, self.below, self.head = cert._head()
        adj: dict[int, list[int]] = {v: [] for v in self.head if v != u}
        work = 0
        for v in adj:
            p = cert.parent[v]
            if p != u:
                adj[v].append(p)
                adj[p].append(v)
            for a in cert.ab[v]:
                if a != u:
                    adj[v].append(a)
                    adj[a].append(v)
            work += 1 + len(cert.ab[v])
        comps, art, bcc_work = bcc_edge_lists(sorted(adj), adj)
        cert.work += work + bcc_work
        self._bcc_edges = comps
        self._bcc_vertices = [sorted({x for e in c for x in e}) for c in comps]
        v2b: dict[int, list[int]] = {}
        for i, vs in enumerate(self._bcc_vertices):
            for x in vs:
                v2b.setdefault(x, []).append(i)
        self._node = {
            v: ("b", v2b[v][0]) if v not in art and v in v2b else ("v", v) for v in adj
        }
        links: dict = {}
        for x in art:
            for i in v2b[x]:
                links.setdefault(("b", i), []).append(("v", x))
                links.setdefault(("v", x), []).append(("b", i))
        start = self._node[self.exit]
        parent = {start: None}
        todo = [start]
        while todo:
            cur = todo.pop()
            for nxt in links.get(cur, ()):
                if nxt not in parent:
                    parent[nxt] = cur
                    todo.append(nxt)
        self._parent = parent
        cert.work += len(adj) + len(parent)

    def region(self, z: int) -> tuple[set[int], list[tuple[int, int]]]:
        """Vertices and edges of the beads between ``z`` and ``exit`` once ``u`` is gone.

        No other edge of ``H - u`` joins two of these vertices: it would
        close a cycle in the block-cut tree.
        """
        if z == self.exit:
            return {z}, []
        cur = self._node[z]
        if cur not in self._parent:
            raise CertificateError(f"vertex {z} is not connected to the head exit")
        verts = {z, self.exit}
        edges: list[tuple[int, int]] = []
        while cur is not None:
            if cur[0] == "b":
                verts.update(self._bcc_vertices[cur[1]])
                edges.extend(self._bcc_edges[cur[1]])
            cur = self._parent[cur]
        return verts, edges


class Certificate:
    """Augmented DFS tree of the current bead string (see module docstring)."""

    def __init__(self, n: int, target: int):
        self.n = n
        self.target = target
        self.root = NIL
        self.parent = [NIL] * n
        self.children: list[list[int]] = [[] for _ in range(n)]
        self.gamma = [0] * n
        self.low = [0] * n
        # how many of gamma[v], the top of ab[v] and the children's lows attain low[v]
        self.cnt = [0] * n
        self.lb: list[list[int]] = [[] for _ in range(n)]
        self.ab: list[list[int]] = [[] for _ in range(n)]
        self.on_left = [False] * n
        self.version = 0
        self.work = 0

    # -- queries ---------------------------------------------------------

    def choose(self) -> CertEdge:
        """Last back edge of ``lb[root]`` in DFS order, else the only tree edge."""
        u = self.root
        if u == self.target:
            raise CertificateError("choose() called at the target")
        self.work += 1
        if self.lb[u]:
            return CertEdge(u, self.lb[u][-1], "back")
        return CertEdge(u, self.children[u][0], "tree")

    def vertices(self) -> list[int]:
        """Vertices hanging from the root, in preorder."""
        out = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(reversed(self.children[v]))
        return out

    def edges(self) -> set[tuple[int, int]]:
        """Tree and back edges among attached vertices, as sorted pairs."""
        out = set()
        for v in self.vertices():
            if v != self.root:
                out.add(_pair(v, self.parent[v]))
            for a in self.ab[v]:
                out.add(_pair(v, a))
        return out

    def leftmost_path(self) -> list[int]:
        path = [self.root]
        while path[-1] != self.target and self.children[path[-1]]:
            path.append(self.children[path[-1]][0])
        return path

    def _head(self) -> tuple[int, int, set[int]]:
        """Exit vertex of the head, the exit's leftmost child (or NIL), head vertices."""
        u = self.root
        y = self.children[u][0]
        while y != self.target:
            ell = self.children[y][0]
            self.work += 1
            if self.low[ell] >= self.gamma[y]:
                break
            y = ell
        below = NIL if y == self.target else self.children[y][0]
        head = {u}
        stack = [self.children[u][0]]
        while stack:
            v = stack.pop()
            head.add(v)
            for c in self.children[v]:
                if c != below:
                    stack.append(c)
        self.work += len(head)
        return y, below, head

    # -- construction ----------------------------------------------------

    def _dfs_region(self, z: int, tp: int, nbrs: dict[int, list[int]], tp_gamma, log) -> None:
        """DFS of the region ``nbrs`` from ``z`` with a ``z``-``tp`` path leftmost.

        Lists of region vertices other than ``tp`` must already be empty, and
        ``tp`` keeps whatever children and ``lb`` prefix it already has (the
        reused part below it).  With ``tp_gamma`` given, path labels count
        down from it so the reused labels below ``tp`` stay valid; otherwise
        labels are DFS depths from ``z``.
        """
        parent, children, gamma, low, lb, ab, on_left = (
            self.parent, self.children, self.gamma, self.low, self.lb, self.ab, self.on_left,
        )
        prev = {z: NIL}
        stack = [z]
        while stack and tp not in prev:
            v = stack.pop()
            for w in nbrs[v]:
                self.work += 1
                if w not in prev:
                    prev[w] = v
                    stack.append(w)
        if tp not in prev:
            raise CertificateError(f"{tp} unreachable from {z}")
        path = [tp]
        while path[-1] != z:
            path.append(prev[path[-1]])
        path.reverse()
        k = len(path) - 1
        if tp_gamma is None:
            tp_gamma = k
        path_gamma = {v: tp_gamma - (k - i) for i, v in enumerate(path)}
        nxt = {path[i]: path[i + 1] for i in range(k)}

        seen: set[int] = set()
        order: list[int] = []

        def discover(v: int, p: int) -> None:
            seen.add(v)
            order.append(v)
            parent[v] = p
            pg = path_gamma.get(v)
            on_left[v] = pg is not None
            gamma[v] = pg if pg is not None else gamma[p] + 1
            # every visited non-parent neighbour is an ancestor at this point
            anc = []
            for w in nbrs[v]:
                self.work += 1
                if w != p and w in seen:
                    anc.append(w)
                    lb[w].append(v)
            if anc:
                anc.sort(key=gamma.__getitem__, reverse=True)
                ab[v] = anc

        def successors(v: int):
            w = nxt.get(v)
            if w is not None:
                yield w
            yield from nbrs[v]

        discover(z, NIL)
        dfs = [(z, successors(z))]
        while dfs:
            v, it = dfs[-1]
            for w in it:
                self.work += 1
                if w not in seen:
                    children[v].append(w)
                    discover(w, v)
                    dfs.append((w, successors(w)))
                    break
            else:
                dfs.pop()

        # reverse preorder finishes children before parents
        for v in reversed(order):
            self._recount(v)
            self.work += 1 + len(children[v])

        # cut whatever hangs off through an articulation point, top-down
        stack = [z]
        while stack:
            y = stack.pop()
            for w in list(children[y]):
                if not on_left[w] and low[w] >= gamma[y]:
                    self._cut(w, y, log)
                elif w in seen:
                    stack.append(w)
            self.work += 1

    def _recount(self, v: int) -> None:
        """Recompute ``low[v]`` and ``cnt[v]`` from scratch."""
        gamma, low = self.gamma, self.low
        lo, c = gamma[v], 1
        ab = self.ab[v]
        if ab:
            g = gamma[ab[-1]]
            if g < lo:
                lo, c = g, 1
        for ch in self.children[v]:
            g = low[ch]
            if g < lo:
                lo, c = g, 1
            elif g == lo:
                c += 1
        low[v] = lo
        self.cnt[v] = c

    def _cut(self, w: int, y: int, log: list | None) -> None:
        """Detach the subtree of ``w`` from its parent ``y``."""
        kids = self.children[y]
        idx = len(kids) - 1
        while kids[idx] != w:
            idx -= 1
        del kids[idx]
        self.work += len(kids) - idx + 1
        if log is not None:
            log.append(("cut", y, idx, w))
        if self.low[w] != self.gamma[y]:
            return
        if self.low[y] == self.gamma[y]:
            # w was one of the sources attaining low[y]
            if log is not None:
                log.append(("cnt", y, self.cnt[y]))
            self.cnt[y] -= 1
        # back edges from the cut subtree into y form a contiguous run of lb[y]
        sub = set()
        stack = [w]
        while stack:
            x = stack.pop()
            sub.add(x)
            stack.extend(self.children[x])
        lst = self.lb[y]
        j = len(lst) - 1
        while j >= 0 and lst[j] not in sub:
            j -= 1
        i = j
        while i >= 0 and lst[i] in sub:
            i -= 1
        self.work += len(sub) + len(lst) - i
        removed = lst[i + 1 : j + 1]
        del lst[i + 1 : j + 1]
        if log is not None:
            log.append(("lbcut", y, i + 1, removed))

    # -- updates ---------------------------------------------------------

    def _open(self) -> UndoLog:
        self.version += 1
        return UndoLog([], self.version)

    def right_update(self, e: CertEdge) -> UndoLog:
        """Delete back edge ``e = (root, z)`` and repair lowpoints from ``z`` upwards.

        Each step up the tree removes one source value from the parent's
        lowpoint; the parent only needs a rescan when that was the last
        source attaining its lowpoint.  Within a spine only sources equal to
        ``gamma[root]`` disappear, so every vertex is rescanned at most once
        per spine.
        """
        u = self.root
        if not e.is_back or e.u != u:
            raise CertificateError(f"right_update needs a back edge at the root, got {e}")
        z = e.v
        lst = self.lb[u]
        i = len(lst) - 1
        while i >= 0 and lst[i] != z:
            i -= 1
        if i < 0:
            raise CertificateError(f"back edge {e} not in lb[{u}]")
        abz = self.ab[z]
        # the root is everyone's topmost ancestor
        if not abz or abz[-1] != u:
            raise CertificateError(f"ab[{z}] does not end with root {u}")
        log = self._open()
        ent = log.entries
        del lst[i]
        ent.append(("lbdel", u, i, z))
        abz.pop()
        ent.append(("abpop", z, u))
        self.work += 2 + (len(lst) - i)

        gamma, low, cnt, parent = self.gamma, self.low, self.cnt, self.parent
        w = z
        gone = gamma[u]
        while gone == low[w]:
            ent.append(("low", w, low[w], cnt[w]))
            self.work += 1
            if cnt[w] > 1 or w == u:
                cnt[w] -= 1
                break
            old = low[w]
            self._recount(w)
            self.work += len(self.children[w])
            y = parent[w]
            if not self.on_left[w] and low[w] >= gamma[y]:
                self._cut(w, y, ent)
            gone = old
            w = y
        return log

    def left_update(self, e: CertEdge, spine: SpineContext | None = None) -> UndoLog:
        """Move the root across ``e``; the old root leaves the graph.

        A tree edge is the last edge left at the root, so its child simply
        becomes the root.  A back edge ``(u, z)`` rebuilds the beads between
        ``z`` and the head exit; the subtree below the exit is reused.
        ``spine`` should be the context opened at the top of the current
        spine; without it one is computed from the current state.
        """
        u = self.root
        if e.u != u:
            raise CertificateError(f"edge {e} is not incident to the root {u}")
        if not e.is_back:
            v = e.v
            if self.lb[u] or self.children[u] != [v]:
                raise CertificateError(f"({u}, {v}) is not the only edge at the root")
            log = self._open()
            log.entries.append(("root", u))
            log.entries.append(("parent", v, self.parent[v]))
            self.root = v
            self.parent[v] = NIL
            self.work += 1
            return log

        z = e.v
        if spine is None or spine.root != u:
            spine = SpineContext(self)
        log = self._open()
        ent = log.entries
        region, edges = spine.region(z)
        tp = spine.exit
        head = spine.head
        nbrs: dict[int, list[int]] = {v: [] for v in region}
        for a, b in edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        for lst in nbrs.values():
            lst.sort()
        self.work += len(region) + 2 * len(edges)

        ent.append(("root", u))
        for v in region:
            if v != tp:
                ent.append(("rec", v, self.parent[v], self.children[v], self.gamma[v],
                            self.low[v], self.cnt[v], self.lb[v], self.ab[v], self.on_left[v]))
                self.children[v] = []
                self.lb[v] = []
                self.ab[v] = []
        # entries of lb[tp] pointing into the old head are a suffix; strip in place
        lst = self.lb[tp]
        popped = []
        while lst and lst[-1] in head:
            popped.append(lst.pop())
        popped.reverse()
        ent.append(("tp", tp, self.parent[tp], self.children[tp], self.low[tp], self.cnt[tp],
                    self.ab[tp], popped, len(lst)))
        self.children[tp] = [spine.below] if spine.below != NIL else []
        self.ab[tp] = []
        self.work += len(region) + len(popped)
        self._dfs_region(z, tp, nbrs, self.gamma[tp], ent)
        self.root = z
        return log

    def restore(self, log: UndoLog) -> None:
        """Undo the update that produced ``log``; it must be the most recent one."""
        if log.version != self.version:
            raise CertificateError(
                f"out-of-order restore: log {log.version}, certificate at {self.version}"
            )
        for entry in reversed(log.entries):
            kind = entry[0]
            if kind == "low":
                _, w, lo, c = entry
                self.low[w] = lo
                self.cnt[w] = c
            elif kind == "cnt":
                self.cnt[entry[1]] = entry[2]
            elif kind == "cut":
                _, y, idx, w = entry
                self.children[y].insert(idx, w)
            elif kind == "lbcut":
                _, y, idx, removed = entry
                self.lb[y][idx:idx] = removed
            elif kind == "lbdel":
                _, u, idx, z = entry
                self.lb[u].insert(idx, z)
            elif kind == "abpop":
                self.ab[entry[1]].append(entry[2])
            elif kind == "root":
                self.root = entry[1]
            elif kind == "parent":
                self.parent[entry[1]] = entry[2]
            elif kind == "rec":
                _, v, p, ch, g, lo, c, lbv, abv, ol = entry
                self.parent[v] = p
                self.children[v] = ch
                self.gamma[v] = g
                self.low[v] = lo
                self.cnt[v] = c
                self.lb[v] = lbv
                self.ab[v] = abv
                self.on_left[v] = ol
            elif kind == "tp":
                _, v, p, ch, lo, c, abv, popped, keep = entry
                self.parent[v] = p
                self.children[v] = ch
                self.low[v] = lo
                self.cnt[v] = c
                self.ab[v] = abv
                del self.lb[v][keep:]
                self.lb[v].extend(popped)
            else:  # pragma: no cover
                raise CertificateError(f"unknown undo entry {kind!r}")
            self.work += 1
        self.version -= 1

    # -- inspection ------------------------------------------------------

    def compacted_head(self) -> CompactedHead:
        """Size of the current head after contracting degree-2 chains.

        A head vertex is contracted when it has exactly two head edges and is
        neither the root nor the exit toward the rest of the bead string.  A
        degree-2 leaf carries one tree edge and one back edge, which merge
        into a single edge, so a cycle compacts to a double edge.
        Does not count toward ``work``.
        """
        u = self.root
        if u == self.target:
            return CompactedHead(1, 0, 1, 0)
        saved = self.work
        exit_, below, head = self._head()
        self.work = saved
        deg = dict.fromkeys(head, 0)
        n_edges = 0
        for v in head:
            if v != u:
                deg[v] += 1
                deg[self.parent[v]] += 1
                n_edges += 1
            for a in self.ab[v]:
                deg[v] += 1
                deg[a] += 1
                n_edges += 1
        contracted = sorted(v for v in head if v != u and v != exit_ and deg[v] == 2)
        k = len(contracted)
        return CompactedHead(len(head) - k, n_edges - k, len(head), n_edges, tuple(contracted))

    def fingerprint(self) -> str:
        h = hashlib.blake2b(digest_size=16)
        h.update(repr((self.root, self.target)).encode())
        for v in range(self.n):
            h.update(
                repr((self.parent[v], self.children[v], self.gamma[v], self.low[v], self.cnt[v],
                      self.lb[v], self.ab[v], self.on_left[v])).encode()
            )
        return h.hexdigest()

    def dump(self) -> str:
        """One line per attached vertex, preorder: ``v parent gamma low [lb:..] [ab:..]``.

        Both back-edge lists are printed in DFS order of the far endpoint.
        """
        lines = []
        for v in self.vertices():
            lb = ",".join(map(str, self.lb[v]))
            ab = ",".join(map(str, reversed(self.ab[v])))
            lines.append(f"{v} {self.parent[v]} {self.gamma[v]} {self.low[v]} [lb:{lb}] [ab:{ab}]")
        return "\n".join(lines)

    def check(self) -> list[str]:
        """Structural invariants; returns the problems found (empty when sound)."""
        errs: list[str] = []
        verts = self.vertices()
        attached = set(verts)
        if len(attached) != len(verts):
            return ["tree has a cycle or a shared child"]
        pre = {v: i for i, v in enumerate(verts)}
        left = self.leftmost_path()
        if left[-1] != self.target:
            errs.append(f"target {self.target} not on leftmost path {left}")
        if set(left) != {v for v in verts if self.on_left[v]}:
            errs.append("on_left flags disagree with the leftmost path")
        if self.root != self.target and len(self.children[self.root]) != 1:
            errs.append(f"root {self.root} has {len(self.children[self.root])} children")
        for v in verts:
            for c in self.children[v]:
                if self.parent[c] != v:
                    errs.append(f"parent[{c}] != {v}")
                if not self.gamma[v] < self.gamma[c]:
                    errs.append(f"gamma order broken on tree edge {v}-{c}")
            anc = set()
            x = v
            while x != self.root:
                x = self.parent[x]
                anc.add(x)
            for a in self.ab[v]:
                if a not in anc:
                    errs.append(f"ab[{v}] holds non-ancestor {a}")
                elif v not in self.lb[a]:
                    errs.append(f"back edge {v}-{a} missing from lb[{a}]")
            gam = [self.gamma[a] for a in self.ab[v]]
            if gam != sorted(gam, reverse=True):
                errs.append(f"ab[{v}] not in DFS order")
            for d in self.lb[v]:
                if d not in attached:
                    errs.append(f"lb[{v}] points at detached {d}")
                elif v not in self.ab[d]:
                    errs.append(f"back edge {v}-{d} missing from ab[{d}]")
            order = [pre[d] for d in self.lb[v] if d in pre]
            if order != sorted(order):
                errs.append(f"lb[{v}] not in DFS order")
        for v in reversed(verts):
            sources = [self.gamma[v]] + [self.gamma[a] for a in self.ab[v][-1:]]
            sources += [self.low[c] for c in self.children[v]]
            lo = min(sources)
            for a in self.ab[v]:
                lo = min(lo, self.gamma[a])
            if lo != self.low[v]:
                errs.append(f"low[{v}]={self.low[v]} but recomputed {lo}")
            elif sources.count(lo) != self.cnt[v]:
                errs.append(f"cnt[{v}]={self.cnt[v]} but {sources.count(lo)} sources attain low")
        for v in verts:
            if v == self.root:
                continue
            p = self.parent[v]
            if not self.on_left[v] and self.low[v] >= self.gamma[p]:
                errs.append(f"{v} hangs off {p} through an articulation point")
        return errs


def _pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def build_certificate(g: Graph, b: BeadString, s: int, t: int) -> Certificate:
    """Certificate of the bead string ``b`` rooted at ``s``; ``gamma`` is the DFS depth."""
    if s == t:
        raise CertificateError("s and t must differ")
    region = b.vertex_set
    if s not in region or t not in region:
        raise CertificateError(f"{t} unreachable from {s}")
    cert = Certificate(g.n, t)
    nbrs = {v: [w for w in g.adjacency[v] if w in region] for v in region}
    cert.work += sum(len(a) + 1 for a in nbrs.values())
    cert._dfs_region(s, t, nbrs, None, None)
    cert.root = s
    return cert


def choose(c: Certificate) -> CertEdge:
    return c.choose()


def right_update(c: Certificate, e: CertEdge) -> UndoLog:
    return c.right_update(e)


def left_update(c: Certificate, e: CertEdge, spine: SpineContext | None = None) -> UndoLog:
    return c.left_update(e, spine)


def restore(c: Certificate, log: UndoLog) -> None:
    c.restore(log)


def compacted_head(c: Certificate) -> CompactedHead:
    return c.compacted_head()
