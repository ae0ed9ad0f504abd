"""Graph families with known cycle structure, plus seeded random graphs."""

from __future__ import annotations

from .graph import Graph

__all__ = ["tripartite", "diamond", "random_graph", "SplitMix64"]

_MASK = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 generator (Steele, Lea and Flood), 64-bit state.

    Chosen because it is a few lines in any language, so the random test
    corpus can be regenerated bit for bit elsewhere.
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) / 9007199254740992.0


def tripartite(n: int) -> Graph:
    """Complete tripartite graph with three parts of ``n // 3`` vertices.

    Part ``i`` holds ids ``i*k .. i*k + k - 1`` with ``k = n // 3``.
    """
    if n < 3 or n % 3:
        raise ValueError(f"n must be a positive multiple of 3, got {n}")
    k = n // 3
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if u // k != v // k
    ]
    return Graph(n, edges)


def diamond(k: int) -> Graph:
    """Diamond graph on ``2k + 3`` vertices.

    Ids: ``a=0``, ``b=1``, ``c=2``, ``v_i = 2 + i`` and ``u_i = k + 2 + i``
    for ``i = 1..k``.  Edges: ``a-c``, and for each ``i`` the two paths
    ``a-v_i-b`` and ``b-u_i-c``.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    a, b, c = 0, 1, 2
    edges = [(a, c)]
    for i in range(1, k + 1):
        v, u = 2 + i, k + 2 + i
        edges += [(a, v), (v, b), (b, u), (u, c)]
    return Graph(2 * k + 3, edges)


def random_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p): pairs ``u < v`` in lexicographic order, one draw each."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    rng = SplitMix64(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)
