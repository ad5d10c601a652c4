"""Instance generators: seeded random graphs and planted subdivisions.

Random graphs link each vertex pair with probability avg_degree/(n-1),
repair connectivity with uniformly random cross-component edges, and
label vertices uniformly from a fixed token universe.  Planted
instances replace every edge of a pattern with a fresh path of random
length in [l, h], so the pattern is contained by construction, then
bury the evidence under extra random vertices.
"""

from homeomatch import (
    ndshd2,
    parse_graph,
    plant_subdivision,
    random_labeled_graph,
    serialize_graph,
    verify_mapping,
)

print("--- seeded random graph ---")
g = random_labeled_graph(n=24, avg_degree=3.0, label_count=4, seed=7)
print(g, "connected:", g.is_connected())
print("mean degree:", round(2 * g.m / g.n, 2))
same = random_labeled_graph(n=24, avg_degree=3.0, label_count=4, seed=7)
print("same seed reproduces the graph exactly:", g == same)

print("\n--- text round trip ---")
text = serialize_graph(g)
print("first lines of the file format:")
print("\n".join(text.splitlines()[:5]))
print("parse(serialize(g)) == g:", parse_graph(text) == g)

print("\n--- planted subdivision ---")
pattern = parse_graph("""
n 4 m 6
v 1 a
v 2 b
v 3 c
v 4 d
e 1 2
e 1 3
e 1 4
e 2 3
e 2 4
e 3 4
""")
planted, witness = plant_subdivision(pattern, l=1, h=3, padding=20, seed=3,
                                     return_witness=True)
print("pattern:", pattern, "-> planted data graph:", planted)
print("planted witness valid:", verify_mapping(pattern, planted, 1, 3, witness).ok)

found = ndshd2(pattern, planted, 1, 3)
print("search rediscovers a witness:", found is not None)
print("search witness valid:", verify_mapping(pattern, planted, 1, 3, found).ok)
