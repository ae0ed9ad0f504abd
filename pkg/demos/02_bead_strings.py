# Where can an s-t path go?
#
# Cut the graph into biconnected blocks.  The blocks met on the way from s
# to t in the block-cut tree form a chain of beads; every s-t path stays
# inside those beads and passes through every cut vertex joining two of
# them.  Anything hanging off the chain is never visited.

from pathlister import Graph, biconnected_components, bead_string, brute_force_st_paths

# two triangles sharing vertex 2, plus a square hanging off vertex 4 and a
# pendant edge on vertex 1
g = Graph(9, [(0, 1), (1, 2), (2, 0),
              (2, 3), (3, 4), (4, 2),
              (4, 5), (5, 6), (6, 7), (7, 4),
              (1, 8)])

bt = biconnected_components(g)
print("blocks:")
for i, block in enumerate(bt.bccs):
    print(f"  {i}: {sorted(bt.bcc_vertices(i))}  edges {list(block)}")
print("cut vertices:", sorted(bt.articulation_points))

b = bead_string(bt, 0, 3)
print()
print("beads from 0 to 3:", [sorted(bt.bcc_vertices(i)) for i in b.beads])
print("cut vertices every path must cross:", b.cut_vertices)
print("vertices a path may use:", sorted(b.vertex_set))

print()
for p in sorted(brute_force_st_paths(g, 0, 3)):
    print("path", p)
