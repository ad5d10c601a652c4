"""Two-level versus interleaved search on a denser instance.

ndshd1 completes the whole node mapping before assigning any paths;
ndshd2 path-matches the edges a node match completes before choosing
the next node.  On dense data graphs the interleaved order hits dead
ends while the partial solution is still shallow, which shows up in
the recursion statistics collected below.
"""

import itertools

from homeomatch import LabeledGraph, SearchStats, ndshd1, ndshd2, random_labeled_graph

# complete 5-vertex pattern over five of the data graph's six labels
pattern = LabeledGraph(5, {v: f"L{v - 1}" for v in range(1, 6)},
                       list(itertools.combinations(range(1, 6), 2)))
data = random_labeled_graph(n=500, avg_degree=10, label_count=6, seed=42)
print("pattern:", pattern, "| data:", data)

for name, fn in (("ndshd1 (two-level)", ndshd1), ("ndshd2 (interleaved)", ndshd2)):
    stats = SearchStats(trace=[])
    witness = fn(pattern, data, 1, 3, stats=stats)
    print(f"\n--- {name} ---")
    print("contained:", witness is not None,
          "| setup %.3fs | search %.3fs" % (stats.setup_time, stats.wall_time))
    print("recursion calls:", stats.recursion_calls,
          "| max depth:", stats.max_depth,
          "| backtracks:", stats.backtracks,
          "| mean backtrack depth: %.2f" % stats.mean_backtrack_depth)
    # depth trace: one column per attempted match, node matches as '.',
    # edge-path matches as '|', printed as a crude depth chart
    print("depth trace (first 60 calls):")
    rows = max(d for _, d, _ in stats.trace)
    cells = stats.trace[:60]
    for level in range(rows, 0, -1):
        line = "".join(("|" if phase == "edge" else ".") if depth >= level else " "
                       for _, depth, phase in cells)
        print(f"  {level:>2} {line}")
