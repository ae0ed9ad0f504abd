# Counting cycles of the complete tripartite graph.
#
# With three parts of size k every choice of one vertex per part is a
# triangle, which gives k^3 triangles.  But once k >= 2 there are many
# longer cycles too: a1 b1 a2 b2 is a 4-cycle, and cycles can weave through
# all three parts.  The total grows much faster than k^3.

from collections import Counter

from pathlister import brute_force_cycles, johnson_cycles, list_cycles, tripartite

for n in (3, 6, 9):
    g = tripartite(n)
    found = []
    list_cycles(g, found.append)
    by_length = sorted(Counter(map(len, found)).items())
    print(f"n={n}: {len(found)} cycles, {(n // 3) ** 3} triangles expected, by length {by_length}")
    assert set(found) == brute_force_cycles(g)
    assert johnson_cycles(g).solutions == len(found)

# n=12 already has about two million cycles; the sink below stops early.
from pathlister import StopEnumeration

seen = 0


def stop_after_a_million(_cycle):
    global seen
    seen += 1
    if seen >= 1_000_000:
        raise StopEnumeration


stats = list_cycles(tripartite(12), stop_after_a_million)
print(f"n=12: stopped after {stats.solutions} cycles (truncated={stats.truncated}); 64 triangles")
