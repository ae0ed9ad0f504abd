# Why output-sensitive listing matters: the diamond graph.
#
# diamond(k) has 2k + 3 vertices, 4k + 1 edges and 2k^2 - k cycles.  A
# classic circuit finder may spend time linear in the graph between two
# consecutive cycles, so its total grows like k^3 here.  The binary
# partition listing pays for the size of each cycle instead, so its total
# grows like k^2.  Work units are counted the same way in both engines.
#
# Takes about fifteen seconds.

import time

from pathlister import diamond, johnson_cycles, list_cycles

print(f"{'k':>4} {'cycles':>8} {'optimal':>10} {'johnson':>10} {'ratio':>6} {'opt s':>6} {'jon s':>6}")
for k in (10, 25, 50, 100, 200):
    g = diamond(k)
    t0 = time.perf_counter()
    opt = list_cycles(g)
    t1 = time.perf_counter()
    jon = johnson_cycles(g)
    t2 = time.perf_counter()
    assert opt.solutions == jon.solutions == 2 * k * k - k
    print(f"{k:>4} {opt.solutions:>8} {opt.work_units:>10} {jon.work_units:>10} "
          f"{jon.work_units / opt.work_units:>6.2f} {t1 - t0:>6.1f} {t2 - t1:>6.1f}")

# The ratio column keeps climbing with k: the gap between the two engines
# is a growth rate, not a constant factor.
