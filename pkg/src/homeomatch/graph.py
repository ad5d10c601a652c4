"""Vertex-labeled undirected graphs: construction, text I/O, instance generators.

Graph text format (UTF-8, one record per line):

    n <vertex_count> m <edge_count>
    v <id> <label>
    e <u> <w>

Vertex ids are dense 1-based integers and labels are whitespace-free
tokens.  A file declares exactly ``vertex_count`` ``v`` lines (ids 1..n
in any order) and ``edge_count`` ``e`` lines; ``#`` starts a comment
line and blank lines are ignored.  Self-loops and repeated edges are
rejected.  Serialization writes vertices in ascending id order and
edges in lexicographic (min, max) order, so generated files are
byte-stable.
"""

from __future__ import annotations

import random

__all__ = [
    "GraphFormatError",
    "LabeledGraph",
    "parse_graph",
    "serialize_graph",
    "load_graph",
    "save_graph",
    "random_labeled_graph",
    "plant_subdivision",
]


class GraphFormatError(ValueError):
    """Malformed graph or mapping text; the message carries the line number."""

    def __init__(self, message: str, lineno: int | None = None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class LabeledGraph:
    """Immutable simple undirected graph with one label per vertex.

    Vertices are the integers ``1..n``.  Instances never mutate after
    construction, so they are safe to share between concurrent searches.
    """

    __slots__ = ("n", "edges", "_labels", "_adj")

    def __init__(self, n: int, labels, edges):
        if n < 0:
            raise ValueError("vertex count must be >= 0")
        self.n = n
        lab = {}
        for v, token in dict(labels).items():
            if not 1 <= v <= n:
                raise ValueError(f"label given for unknown vertex {v}")
            lab[v] = str(token)
        if len(lab) != n:
            missing = next(v for v in range(1, n + 1) if v not in lab)
            raise ValueError(f"vertex {missing} has no label")
        self._labels = tuple(lab[v] for v in range(1, n + 1))
        seen = set()
        for u, w in edges:
            if not 1 <= u <= n or not 1 <= w <= n:
                raise ValueError(f"edge ({u}, {w}) references an unknown vertex")
            if u == w:
                raise ValueError(f"self-loop at vertex {u}")
            key = (u, w) if u < w else (w, u)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        self.edges = frozenset(seen)
        adj = [[] for _ in range(n + 1)]
        for u, w in sorted(seen):
            adj[u].append(w)
            adj[w].append(u)
        self._adj = tuple(tuple(sorted(nbrs)) for nbrs in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def _check_vertex(self, v: int):
        if not 1 <= v <= self.n:
            raise ValueError(f"vertex {v} outside 1..{self.n}")

    def label(self, v: int) -> str:
        self._check_vertex(v)
        return self._labels[v - 1]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._adj[v])

    def neighbors(self, v: int) -> tuple:
        self._check_vertex(v)
        return self._adj[v]

    def has_edge(self, u: int, w: int) -> bool:
        key = (u, w) if u < w else (w, u)
        return key in self.edges

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {1}
        stack = [1]
        while stack:
            v = stack.pop()
            for w in self._adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def __eq__(self, other):
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return (self.n == other.n and self._labels == other._labels
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.n, self._labels, self.edges))

    def __repr__(self):
        return f"LabeledGraph(n={self.n}, m={self.m})"


def parse_graph(text: str) -> LabeledGraph:
    """Parse the graph text format, reporting problems with line numbers."""
    n = m = None
    labels: dict[int, str] = {}
    edges: list[tuple[int, int]] = []
    edge_set: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 4 or parts[0] != "n" or parts[2] != "m":
                raise GraphFormatError("expected header 'n <count> m <count>'", lineno)
            try:
                n, m = int(parts[1]), int(parts[3])
            except ValueError:
                raise GraphFormatError("header counts must be integers", lineno) from None
            if n < 0 or m < 0:
                raise GraphFormatError("header counts must be non-negative", lineno)
            continue
        kind = parts[0]
        if kind == "v":
            if len(parts) != 3:
                raise GraphFormatError("expected 'v <id> <label>'", lineno)
            try:
                vid = int(parts[1])
            except ValueError:
                raise GraphFormatError("vertex id must be an integer", lineno) from None
            if not 1 <= vid <= n:
                raise GraphFormatError(f"vertex id {vid} outside 1..{n}", lineno)
            if vid in labels:
                raise GraphFormatError(f"duplicate vertex declaration {vid}", lineno)
            labels[vid] = parts[2]
        elif kind == "e":
            if len(parts) != 3:
                raise GraphFormatError("expected 'e <u> <w>'", lineno)
            try:
                u, w = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError("edge endpoints must be integers", lineno) from None
            for x in (u, w):
                if not 1 <= x <= n:
                    raise GraphFormatError(f"unknown vertex {x} in edge line", lineno)
            if u == w:
                raise GraphFormatError(f"self-loop at vertex {u}", lineno)
            key = (u, w) if u < w else (w, u)
            if key in edge_set:
                raise GraphFormatError(f"duplicate edge {key}", lineno)
            edge_set.add(key)
            edges.append(key)
        else:
            raise GraphFormatError(f"unrecognized record {kind!r}", lineno)
    if n is None:
        raise GraphFormatError("missing header line 'n <count> m <count>'")
    if len(labels) != n:
        raise GraphFormatError(f"declared {n} vertices but found {len(labels)} 'v' lines")
    if len(edges) != m:
        raise GraphFormatError(f"declared {m} edges but found {len(edges)} 'e' lines")
    return LabeledGraph(n, labels, edges)


def serialize_graph(g: LabeledGraph) -> str:
    """Byte-stable text form: vertices ascending, edges in (min, max) order."""
    lines = [f"n {g.n} m {g.m}"]
    lines.extend(f"v {v} {g.label(v)}" for v in g.vertices)
    lines.extend(f"e {u} {w}" for u, w in g.sorted_edges())
    return "\n".join(lines) + "\n"


def load_graph(path) -> LabeledGraph:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse_graph(text)
    except GraphFormatError as exc:
        raise GraphFormatError(f"{path}: {exc}") from None


def save_graph(path, g: LabeledGraph):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_graph(g))


def random_labeled_graph(n: int, avg_degree: float, label_count: int,
                         seed: int) -> LabeledGraph:
    """Seeded connected random graph with uniformly distributed labels.

    Each vertex pair is linked independently with probability
    ``avg_degree / (n - 1)``.  If the sample comes out disconnected,
    uniformly random cross-component edges are added until it is
    connected, which preserves the expected density closely.  Labels are
    drawn uniformly from ``label_count`` tokens ``L0..L{k-1}``.  Output
    is fully determined by the arguments.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if label_count < 1:
        raise ValueError("label_count must be >= 1")
    if avg_degree < 0 or avg_degree >= n:
        raise ValueError(f"avg_degree must lie in [0, n); got {avg_degree} for n={n}")
    rng = random.Random(seed)
    tokens = [f"L{i}" for i in range(label_count)]
    labels = {v: rng.choice(tokens) for v in range(1, n + 1)}
    edges: list[tuple[int, int]] = []
    if n > 1:
        p = min(1.0, avg_degree / (n - 1))
        for u in range(1, n + 1):
            for w in range(u + 1, n + 1):
                if rng.random() < p:
                    edges.append((u, w))

    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = n
    for u, w in edges:
        ru, rw = find(u), find(w)
        if ru != rw:
            parent[ru] = rw
            components -= 1
    while components > 1:
        u = rng.randrange(1, n + 1)
        w = rng.randrange(1, n + 1)
        ru, rw = find(u), find(w)
        if ru != rw:
            edges.append((u, w) if u < w else (w, u))
            parent[ru] = rw
            components -= 1
    return LabeledGraph(n, labels, edges)


def plant_subdivision(pattern: LabeledGraph, l: int, h: int, padding: int = 0,
                      seed: int = 0, return_witness: bool = False):
    """Data graph guaranteed to contain the pattern as an (l, h)-topological minor.

    Every pattern edge is replaced by a fresh path whose length is drawn
    uniformly from ``[l, h]``; the inner vertices are brand new, so the
    planted paths are pairwise independent by construction.  Afterwards
    ``padding`` extra vertices with random labels and attachments are
    mixed in, which can only add structure and never invalidates the
    planted witness.  With ``return_witness=True`` the planted mapping
    (identity on pattern vertices) is returned alongside the graph.
    """
    if l < 1 or h < l:
        raise ValueError("need 1 <= l <= h")
    if padding < 0:
        raise ValueError("padding must be >= 0")
    rng = random.Random(seed)
    labels = {v: pattern.label(v) for v in pattern.vertices}
    pool = sorted(set(labels.values()))
    edges: list[tuple[int, int]] = []
    paths: dict[tuple[int, int], tuple[int, ...]] = {}
    nxt = pattern.n + 1
    for a, b in pattern.sorted_edges():
        k = rng.randint(l, h)
        chain = [a]
        for _ in range(k - 1):
            labels[nxt] = rng.choice(pool)
            chain.append(nxt)
            nxt += 1
        chain.append(b)
        edges.extend(zip(chain, chain[1:]))
        paths[(a, b)] = tuple(chain)
    for _ in range(padding):
        vid = nxt
        nxt += 1
        labels[vid] = rng.choice(pool) if pool else "L0"
        existing = vid - 1
        if existing:
            for t in rng.sample(range(1, vid), min(rng.randint(1, 2), existing)):
                edges.append((t, vid))
    g = LabeledGraph(nxt - 1, labels, edges)
    if not return_witness:
        return g
    from .mapping import Mapping

    witness = Mapping({v: v for v in pattern.vertices}, paths)
    return g, witness
