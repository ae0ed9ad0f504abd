# Listing every simple path between two vertices of K4.
#
# The complete graph on four vertices is small enough to check by hand:
# from 0 to 3 we can go direct, through one of the two other vertices, or
# through both of them in either order.  That is 1 + 2 + 2 = 5 paths.

from pathlister import Graph, list_st_paths

k4 = Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])

found = []
stats = list_st_paths(k4, 0, 3, found.append)

for p in found:
    print(" -> ".join(map(str, p)))

# The recursion behind the listing is a binary tree.  Each leaf is a path;
# every internal node that branches has exactly two children, so there is
# one fewer branching node than there are leaves.

print()
print("paths           ", len(found))
print("leaves          ", stats.leaves)
print("branching nodes ", stats.binary_nodes)
print("unary nodes     ", stats.unary_nodes)
print("work units      ", stats.work_units)
print("output size     ", stats.output_size, "(edges over all paths)")
