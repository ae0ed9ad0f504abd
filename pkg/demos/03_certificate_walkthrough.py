# The certificate: a DFS tree that answers "which edge next?"
#
# At every step the enumerator sits at the current end u of a partial path.
# It keeps a DFS tree of the part of the graph still usable, rooted at u,
# with t on the leftmost root-to-leaf path.  Back edges to the root come
# first: taking one gives a path, deleting it gives the other branch.  When
# none are left, the single tree edge below the root is the only way on.

from pathlister import Graph, biconnected_components, bead_string
from pathlister.certificate import build_certificate

k4 = Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
cert = build_certificate(k4, bead_string(biconnected_components(k4), 0, 3), 0, 3)

# one line per vertex: vertex, parent, depth label, lowpoint, back edges down, back edges up
print(cert.dump())
print("problems found by check():", cert.check())

e = cert.choose()
print("\nnext edge:", e)

# Right branch: forget the back edge.  Lowpoints are repaired from its lower
# end upwards; the returned log remembers exactly what changed.
fp = cert.fingerprint()
log = cert.right_update(e)
print("\nafter deleting", (e.u, e.v), f"({len(log)} log entries):")
print(cert.dump())

cert.restore(log)
print("\nrestored exactly:", cert.fingerprint() == fp)

# Left branch: walk along the edge.  The old root disappears, and only the
# blocks between the new root and the exit of the head are rebuilt.
log = cert.left_update(e)
print("\nafter moving to", e.v)
print(cert.dump())
cert.restore(log)
print("restored exactly:", cert.fingerprint() == fp)

h = cert.compacted_head()
print(f"\nhead after contracting degree-2 chains: {h.V_X} vertices, {h.E_X} edges")
