"""A first tour: topological-minor matching on a small worked example.

The pattern is a 4-vertex graph with labels a, b, c, d.  The data graph
has 9 vertices; four of them carry the pattern's labels with enough
degree to host it.  With the path-length window (2, 2) every pattern
edge must map to a data path of exactly two edges, and all mapped paths
must be pairwise independent (no path may run through an inner vertex
of another).
"""

from homeomatch import parse_graph, ndshd1, ndshd2, enumerate_all, verify_mapping

pattern = parse_graph("""
n 4 m 5
v 1 a
v 2 b
v 3 c
v 4 d
e 1 2
e 1 3
e 1 4
e 2 3
e 3 4
""")

data = parse_graph("""
n 9 m 11
v 1 b
v 2 a
v 3 d
v 4 d
v 5 a
v 6 c
v 7 b
v 8 b
v 9 x
e 1 2
e 1 8
e 2 3
e 2 9
e 3 4
e 4 5
e 5 6
e 6 7
e 6 9
e 7 8
e 8 9
""")

print("pattern:", pattern)
print("data:   ", data)

print("\n--- determine with window (2, 2) ---")
witness = ndshd1(pattern, data, 2, 2)
print("contained:", witness is not None)
print("node map:", witness.node_map)
for edge, path in sorted(witness.edge_path_map.items()):
    print(f"  pattern edge {edge} -> data path {'-'.join(map(str, path))}")

check = verify_mapping(pattern, data, 2, 2, witness)
print("independent re-verification:", check.ok)

print("\n--- the same instance has exactly one witness ---")
for i, mapping in enumerate(enumerate_all(pattern, data, 2, 2), start=1):
    print(f"witness {i}: {mapping.node_map}")

print("\n--- window (3, 3): every edge would need a 3-edge path ---")
print("ndshd1:", ndshd1(pattern, data, 3, 3))
print("ndshd2:", ndshd2(pattern, data, 3, 3))
print("five pairwise independent 3-paths would need ten distinct inner")
print("vertices, but only five non-branch vertices exist, so the answer")
print("is false for structural reasons, not just unlucky labels.")
