"""Backtracking search for node-disjoint subgraph homeomorphism.

Decides whether a vertex-labeled pattern graph embeds into a labeled
data graph as an (l, h)-topological minor: an injective label-preserving
node map plus one simple data path of length l..h per pattern edge, all
mapped paths pairwise independent (no path contains an inner vertex of
another).  Two strategies share one engine:

* ``ndshd1`` completes the whole node mapping first and only then
  assigns paths to edges (two-level search);
* ``ndshd2`` assigns paths for the edges a node match completes before
  matching the next node (interleaved search), so conflicts surface
  while the partial solution is still small.

Both strategies are sound and complete and return the same boolean on
every input; ``enumerate_all`` streams every distinct witness.

The search keeps two mutable structures per state: a binary candidate
matrix (pattern rows over data columns, seeded by the label-and-degree
rule) and a :class:`~homeomatch.pathindex.PathStore` of bounded simple
paths between candidate branch nodes.  Three refinements shrink them
and are individually switchable in :class:`SearchConfig`; correctness
never depends on them because candidate validity is re-checked when a
pair is tried, so disabling any refinement changes only the amount of
futile exploration:

* a node match deactivates all paths running through the matched data
  vertex (branch nodes can only be path ends),
* a path match deactivates all paths touching its inner vertices and
  bars those vertices from later node matches,
* after every match, node-candidate cells are cleared when no selection
  of pairwise-independent witness paths can serve the cell's incident
  pattern edges.

Backtracking restores state exactly: the matrix is snapshotted per
state, the path store is rolled back through undo tokens in reverse
order.  A search owns its state and is single-threaded; the input
graphs are never modified.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .graph import LabeledGraph
from .mapping import Mapping
from .pathindex import candidate_branch_nodes, check_length_window, enumerate_paths

__all__ = [
    "SearchTimeout",
    "SearchConfig",
    "SearchStats",
    "CompatibleMatrix",
    "initial_compatible_matrix",
    "MatchState",
    "Mapping",
    "new_edges_emergent",
    "ndshd1",
    "ndshd2",
    "enumerate_all",
]

STRATEGIES = ("ndshd1", "ndshd2")


class SearchTimeout(Exception):
    """Raised when a configured deadline expires mid-search."""


class _WitnessBudgetExceeded(Exception):
    """Internal: witness search hit its work cap; the cell is kept."""


@dataclass
class SearchConfig:
    """Tie-breaking, pruning toggles and resource limits for one search.

    ``order`` selects the next pattern row / pending edge: ``mcf`` takes
    the one with the fewest candidates (ties by ascending id), while
    ``ascending`` uses plain id order.  Candidate data vertices and
    candidate paths are always tried in ascending order.  The three
    ``prune_*``/``refine_*`` switches exist for pruning-soundness tests
    and A/B runs; disabling them never changes the solution set.
    """

    order: str = "mcf"
    prune_through_matched: bool = True
    prune_conflicts: bool = True
    refine_matrix: bool = True
    witness_cap: int = 10_000
    max_h: int | None = None
    deadline: float | None = None
    validate: bool = False

    def __post_init__(self):
        if self.order not in ("mcf", "ascending"):
            raise ValueError(f"unknown order {self.order!r}")


@dataclass
class SearchStats:
    """Counters collected during one search run.

    ``recursion_calls`` counts attempted matches (one per pair pushed),
    ``states_explored`` counts state entries, and the optional trace
    records ``(call index, depth, phase)`` per attempted match, which is
    enough to reconstruct recursion-depth plots.  The mean backtrack
    depth averages the depth of abandoned states.
    """

    outcome: bool | None = None
    wall_time: float = 0.0
    setup_time: float = 0.0
    recursion_calls: int = 0
    states_explored: int = 0
    max_depth: int = 0
    backtracks: int = 0
    backtrack_depth_sum: int = 0
    trace: list[tuple[int, int, str]] | None = None

    @property
    def mean_backtrack_depth(self) -> float:
        if not self.backtracks:
            return 0.0
        return self.backtrack_depth_sum / self.backtracks

    def as_dict(self, include_timing: bool = True) -> dict:
        d = {
            "outcome": self.outcome,
            "recursion_calls": self.recursion_calls,
            "states_explored": self.states_explored,
            "max_depth": self.max_depth,
            "backtracks": self.backtracks,
            "mean_backtrack_depth": round(self.mean_backtrack_depth, 6),
        }
        if include_timing:
            d["wall_time_s"] = self.wall_time
            d["setup_s"] = self.setup_time
        if self.trace is not None:
            d["trace"] = [list(t) for t in self.trace]
        return d


class CompatibleMatrix:
    """Binary candidate matrix between pattern rows and data columns.

    Row i holds the set of data vertices still admissible for pattern
    vertex i.  Within one state's lifetime refinement only ever clears
    cells; every 1 of any later state was a 1 of the initial matrix.
    """

    __slots__ = ("n1", "n2", "rows")

    def __init__(self, n1: int, n2: int, rows=None):
        self.n1 = n1
        self.n2 = n2
        self.rows: list[set[int]] = rows if rows is not None else [set() for _ in range(n1 + 1)]

    @classmethod
    def initial(cls, g1: LabeledGraph, g2: LabeledGraph) -> "CompatibleMatrix":
        """Entry (i, j) is 1 iff labels agree and degree(i) <= degree(j).

        The degree condition is sound because the paths leaving a branch
        node are pairwise independent, so at most degree(j) of them can
        start there.
        """
        if g1.n == 0 or g2.n == 0:
            raise ValueError("initial matrix requires nonempty graphs")
        m = cls(g1.n, g2.n)
        by_label: dict[str, list[int]] = {}
        for j in g2.vertices:
            by_label.setdefault(g2.label(j), []).append(j)
        for i in g1.vertices:
            di = g1.degree(i)
            m.rows[i] = {j for j in by_label.get(g1.label(i), ()) if di <= g2.degree(j)}
        return m

    def get(self, i: int, j: int) -> bool:
        return j in self.rows[i]

    def ones(self) -> int:
        return sum(len(r) for r in self.rows[1:])

    def nonzero_columns(self) -> tuple:
        cols: set[int] = set()
        for r in self.rows[1:]:
            cols.update(r)
        return tuple(sorted(cols))

    def snapshot(self) -> list[set[int]]:
        return [set(r) for r in self.rows[1:]]

    def restore(self, snap):
        self.rows[1:] = [set(r) for r in snap]


def initial_compatible_matrix(g1: LabeledGraph, g2: LabeledGraph) -> CompatibleMatrix:
    return CompatibleMatrix.initial(g1, g2)


class _LazyPaths:
    """Cache-backed path-id sequence that can be re-iterated mid-search."""

    __slots__ = ("_src", "items", "done")

    def __init__(self, src=None, items=None):
        self._src = src
        self.items: list[int] = list(items) if items is not None else []
        self.done = src is None

    def __iter__(self):
        i = 0
        while True:
            while i < len(self.items):
                yield self.items[i]
                i += 1
            if self.done:
                return
            try:
                self.items.append(next(self._src))
            except StopIteration:
                self.done = True


class MatchState:
    """One mutable search state: partial matches plus refined matrix and store.

    All mutation goes through ``push_node_match`` / ``push_path_match``
    and is undone exactly by ``pop()``; a fully popped state is
    bit-identical to the freshly created one.
    """

    def __init__(self, g1: LabeledGraph, g2: LabeledGraph, l: int, h: int,
                 matrix: CompatibleMatrix, store, config: SearchConfig | None = None):
        self.g1 = g1
        self.g2 = g2
        self.l = l
        self.h = h
        self.matrix = matrix
        self.store = store
        self.config = config or SearchConfig()
        self.nm: list[tuple[int, int]] = []
        self.epm: list[tuple[tuple[int, int], int]] = []
        self.node_image: dict[int, int] = {}
        self.node_preimage: dict[int, int] = {}
        self.path_of_edge: dict[tuple[int, int], int] = {}
        self.used_inner: set[int] = set()
        self._trail: list = []

    @classmethod
    def create(cls, g1: LabeledGraph, g2: LabeledGraph, l: int, h: int,
               config: SearchConfig | None = None) -> "MatchState":
        config = config or SearchConfig()
        check_length_window(l, h, config.max_h)
        matrix = CompatibleMatrix.initial(g1, g2)
        cands = candidate_branch_nodes(matrix)
        store = enumerate_paths(g2, cands, l, h, max_h=config.max_h)
        return cls(g1, g2, l, h, matrix, store, config)

    @property
    def depth(self) -> int:
        return len(self.nm) + len(self.epm)

    # state transitions -------------------------------------------------

    def push_node_match(self, vi: int, vj: int):
        """Append a node match, enforce matrix exclusivity, then refine."""
        cfg = self.config
        if cfg.validate:
            assert vi not in self.node_image and vj not in self.node_preimage
            assert self.matrix.get(vi, vj)
            ones_before = self.matrix.ones()
        tokens: list = []
        self._trail.append(("node", self.matrix.snapshot(), tokens, None))
        self.nm.append((vi, vj))
        self.node_image[vi] = vj
        self.node_preimage[vj] = vi
        rows = self.matrix.rows
        rows[vi] = {vj}
        for i in range(1, self.g1.n + 1):
            if i != vi:
                rows[i].discard(vj)
        if cfg.prune_through_matched:
            tokens.append(self.store.remove_paths_through_vertex(vj))
        if cfg.refine_matrix:
            self.refine_compatibility(hints=(vi,))
        if cfg.validate:
            assert self.matrix.ones() <= ones_before

    def push_path_match(self, edge: tuple[int, int], pid: int):
        """Append an edge-path match, prune conflicting paths, then refine."""
        cfg = self.config
        store = self.store
        if cfg.validate:
            assert edge not in self.path_of_edge
            assert store.is_alive(pid)
            a, b = edge
            ends = {store.vertices(pid)[0], store.vertices(pid)[-1]}
            assert ends == {self.node_image[a], self.node_image[b]}
            ones_before = self.matrix.ones()
        inner = store.inner(pid)
        added = [x for x in inner if x not in self.used_inner]
        tokens: list = []
        self._trail.append(("edge", self.matrix.snapshot(), tokens, added))
        self.epm.append((edge, pid))
        self.path_of_edge[edge] = pid
        self.used_inner.update(added)
        if cfg.prune_conflicts:
            tokens.append(store.remove_paths_conflicting_with(pid))
            if inner:
                rows = self.matrix.rows
                for i in range(1, self.g1.n + 1):
                    if i not in self.node_image:
                        rows[i].difference_update(inner)
        if cfg.refine_matrix:
            self.refine_compatibility(hints=edge)
        if cfg.validate:
            assert self.matrix.ones() <= ones_before

    def pop(self):
        """Undo the most recent push exactly."""
        kind, snap, tokens, added = self._trail.pop()
        for token in reversed(tokens):
            self.store.undo(token)
        self.matrix.restore(snap)
        if kind == "node":
            vi, vj = self.nm.pop()
            del self.node_image[vi]
            del self.node_preimage[vj]
        else:
            edge, _pid = self.epm.pop()
            del self.path_of_edge[edge]
            self.used_inner.difference_update(added)

    # state predicates ---------------------------------------------------

    def is_success(self) -> bool:
        """Complete mapping state: all nodes and all edges matched."""
        return len(self.nm) == self.g1.n and len(self.epm) == self.g1.m

    def is_dead(self, phase: str) -> bool:
        """Provably unextendable state.

        Node phase: some unmatched pattern row has no candidates left.
        Edge phase: some pattern edge with both endpoints matched and no
        committed path has zero alive candidate paths between the images.
        """
        if phase == "node":
            rows = self.matrix.rows
            img = self.node_image
            return any(not rows[i] for i in range(1, self.g1.n + 1) if i not in img)
        if phase == "edge":
            img = self.node_image
            store = self.store
            for e in self.g1.edges:
                if e in self.path_of_edge:
                    continue
                fa = img.get(e[0])
                fb = img.get(e[1])
                if fa is not None and fb is not None and store.pair_count(fa, fb) == 0:
                    return True
            return False
        raise ValueError(f"unknown phase {phase!r}")

    # candidate generation -----------------------------------------------

    def pending_edges(self) -> list[tuple[int, int]]:
        img = self.node_image
        out = []
        for e in self.g1.edges:
            a, b = e
            if a in img and b in img and e not in self.path_of_edge:
                out.append(e)
        out.sort()
        return out

    def select_row(self) -> int | None:
        unmatched = [i for i in range(1, self.g1.n + 1) if i not in self.node_image]
        if not unmatched:
            return None
        if self.config.order == "mcf":
            rows = self.matrix.rows
            return min(unmatched, key=lambda i: (len(rows[i]), i))
        return unmatched[0]

    def select_pending_edge(self) -> tuple[int, int] | None:
        pending = self.pending_edges()
        if not pending:
            return None
        if self.config.order == "mcf":
            img = self.node_image
            store = self.store
            return min(pending, key=lambda e: (store.pair_count(img[e[0]], img[e[1]]), e))
        return pending[0]

    def node_candidates(self, vi: int) -> list[int]:
        used = self.used_inner
        return [vj for vj in sorted(self.matrix.rows[vi]) if vj not in used]

    def path_candidates(self, edge: tuple[int, int]) -> list[int]:
        """Alive paths joining the edge's images that a valid pair may use.

        The explicit checks against matched vertices and committed inner
        vertices are what keeps the search sound when the pruning
        switches are off; with pruning on they are vacuously true.
        """
        a, b = edge
        store = self.store
        used = self.used_inner
        matched = self.node_preimage
        out = []
        for pid in store.alive_between(self.node_image[a], self.node_image[b]):
            inner = store.inner(pid)
            if any(x in used for x in store.vertices(pid)):
                continue
            if any(x in matched for x in inner):
                continue
            out.append(pid)
        return out

    # matrix refinement ----------------------------------------------------

    def refine_compatibility(self, hints=()):
        """Clear node-candidate cells that cannot support their incident edges.

        A cell (i, j) survives only if every matched neighbour of i is
        still path-reachable from j, every unmatched neighbour has some
        current candidate of its own reachable from j by an alive path,
        and one witness path per such requirement can be picked pairwise
        independent.  Cells are cleared only when no completion of the
        current state can use them (any completion maps a neighbour into
        its current row); if the witness search overruns its work cap
        the cell is conservatively kept.

        Rows adjacent to the ``hints`` vertices are scanned first and
        the scan stops once a row empties, because the state is then
        dead and about to be discarded anyway.
        """
        g1 = self.g1
        rows = self.matrix.rows
        img = self.node_image
        order = []
        seen = set()
        for hv in hints:
            for u in g1.neighbors(hv):
                if u not in img and u not in seen:
                    seen.add(u)
                    order.append(u)
        order.extend(i for i in range(1, g1.n + 1) if i not in img and i not in seen)
        for vi in order:
            row = rows[vi]
            if not row:
                return
            matched_images = []
            neighbor_rows = []
            for u in g1.neighbors(vi):
                fu = img.get(u)
                if fu is not None:
                    matched_images.append(fu)
                else:
                    neighbor_rows.append(rows[u])
            if not matched_images and not neighbor_rows:
                continue
            for vj in sorted(row):
                if not self._cell_supported(vj, matched_images, neighbor_rows):
                    row.discard(vj)
            if not row:
                return

    def _cell_supported(self, vj, matched_images, neighbor_rows) -> bool:
        store = self.store
        for fu in matched_images:
            if store.pair_count(vj, fu) == 0:
                return False
        reach = store.reachable_from(vj)
        for nrow in neighbor_rows:
            if nrow.isdisjoint(reach):
                return False
        if len(matched_images) + len(neighbor_rows) <= 1:
            return True
        reqs = [_LazyPaths(items=store.alive_between(vj, fu)) for fu in matched_images]
        reqs.sort(key=lambda r: len(r.items))
        reqs.extend(_LazyPaths(src=self._row_paths_iter(vj, nrow))
                    for nrow in neighbor_rows)
        try:
            return self._pick_witnesses(reqs, 0, [], [self.config.witness_cap])
        except _WitnessBudgetExceeded:
            return True

    def _row_paths_iter(self, vj: int, nrow: set):
        """Alive paths from vj to any current candidate of a neighbour row."""
        store = self.store
        for pid in store.paths_ending_at(vj):
            if not store.is_alive(pid):
                continue
            verts = store.vertices(pid)
            other = verts[-1] if verts[0] == vj else verts[0]
            if other in nrow:
                yield pid

    def _pick_witnesses(self, reqs, k, chosen, budget) -> bool:
        if k == len(reqs):
            return True
        store = self.store
        for pid in reqs[k]:
            budget[0] -= 1
            if budget[0] < 0:
                raise _WitnessBudgetExceeded
            if all(store.paths_independent(pid, q) for q in chosen):
                chosen.append(pid)
                if self._pick_witnesses(reqs, k + 1, chosen, budget):
                    return True
                chosen.pop()
        return False


def new_edges_emergent(state: MatchState, g1: LabeledGraph) -> list[tuple[int, int]]:
    """Pattern edges the newest node match completes, in ascending order.

    These join the just-matched pattern vertex to previously matched
    ones; for a connected pattern the list is empty only at the very
    first node match.
    """
    if not state.nm:
        return []
    vi = state.nm[-1][0]
    img = state.node_image
    out = []
    for u in g1.neighbors(vi):
        if u in img:
            out.append((vi, u) if vi < u else (u, vi))
    out.sort()
    return out


class _Engine:
    """Drives one search over a MatchState; collects stats, honors deadlines."""

    def __init__(self, state: MatchState, strategy: str, stats: SearchStats):
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}")
        self.state = state
        self.strategy = strategy
        self.stats = stats
        self._deadline = state.config.deadline

    def solutions(self):
        """Generator of complete mappings; closing it restores the state."""
        state = self.state
        root_snapshot = state.matrix.snapshot()
        try:
            # One refinement pass before the first selection settles most
            # unsatisfiable instances in a single scan instead of once per
            # root candidate; it is the same sound per-match refinement.
            if state.config.refine_matrix:
                state.refine_compatibility()
            if self.strategy == "ndshd1":
                yield from self._node_search1()
            else:
                yield from self._node_search2()
        finally:
            state.matrix.restore(root_snapshot)

    def _enter(self):
        self.stats.states_explored += 1
        if self._deadline is not None and time.monotonic() > self._deadline:
            raise SearchTimeout("search exceeded its deadline")

    def _record(self, phase: str):
        st = self.stats
        st.recursion_calls += 1
        depth = self.state.depth
        if depth > st.max_depth:
            st.max_depth = depth
        if st.trace is not None:
            st.trace.append((st.recursion_calls, depth, phase))

    def _backtracked(self):
        st = self.stats
        st.backtracks += 1
        st.backtrack_depth_sum += self.state.depth

    def _solution(self) -> Mapping:
        s = self.state
        node_map = dict(sorted(s.node_image.items()))
        edge_paths = {}
        for edge, pid in s.epm:
            verts = s.store.vertices(pid)
            if verts[0] != node_map[edge[0]]:
                verts = tuple(reversed(verts))
            edge_paths[edge] = verts
        return Mapping(node_map, dict(sorted(edge_paths.items())))

    # two-level strategy ----------------------------------------------

    def _node_search1(self):
        self._enter()
        s = self.state
        if s.is_dead("node") or s.is_dead("edge"):
            return
        vi = s.select_row()
        if vi is None:
            yield from self._edge_search1()
            return
        for vj in s.node_candidates(vi):
            s.push_node_match(vi, vj)
            self._record("node")
            completed = False
            try:
                yield from self._node_search1()
                completed = True
            finally:
                if completed:
                    self._backtracked()
                s.pop()

    def _edge_search1(self):
        self._enter()
        s = self.state
        if s.is_dead("edge"):
            return
        edge = s.select_pending_edge()
        if edge is None:
            yield self._solution()
            return
        for pid in s.path_candidates(edge):
            s.push_path_match(edge, pid)
            self._record("edge")
            completed = False
            try:
                yield from self._edge_search1()
                completed = True
            finally:
                if completed:
                    self._backtracked()
                s.pop()

    # interleaved strategy ----------------------------------------------

    def _node_search2(self):
        self._enter()
        s = self.state
        if s.is_success():
            yield self._solution()
            return
        if s.is_dead("node") or s.is_dead("edge"):
            return
        vi = s.select_row()
        if vi is None:
            return
        for vj in s.node_candidates(vi):
            s.push_node_match(vi, vj)
            self._record("node")
            emergent = new_edges_emergent(s, s.g1)
            completed = False
            try:
                if emergent:
                    yield from self._edge_search2(emergent, 0)
                else:
                    yield from self._node_search2()
                completed = True
            finally:
                if completed:
                    self._backtracked()
                s.pop()

    def _edge_search2(self, edges, k):
        self._enter()
        s = self.state
        if s.is_dead("edge") or s.is_dead("node"):
            return
        if k == len(edges):
            yield from self._node_search2()
            return
        edge = edges[k]
        for pid in s.path_candidates(edge):
            s.push_path_match(edge, pid)
            self._record("edge")
            completed = False
            try:
                yield from self._edge_search2(edges, k + 1)
                completed = True
            finally:
                if completed:
                    self._backtracked()
                s.pop()


def _first_solution(g1, g2, l, h, strategy, config, stats) -> Mapping | None:
    stats = stats if stats is not None else SearchStats()
    cfg = config or SearchConfig()
    check_length_window(l, h, cfg.max_h)
    if g1.n == 0:
        stats.outcome = True
        return Mapping({}, {})
    if g2.n == 0:
        stats.outcome = False
        return None
    t0 = time.perf_counter()
    state = MatchState.create(g1, g2, l, h, cfg)
    stats.setup_time = time.perf_counter() - t0
    gen = _Engine(state, strategy, stats).solutions()
    t1 = time.perf_counter()
    try:
        result = next(gen, None)
    finally:
        gen.close()
        stats.wall_time = time.perf_counter() - t1
    stats.outcome = result is not None
    return result


def ndshd1(g1: LabeledGraph, g2: LabeledGraph, l: int, h: int, *,
           config: SearchConfig | None = None,
           stats: SearchStats | None = None) -> Mapping | None:
    """First witness found by the two-level strategy, or None.

    The node mapping is completed before any edge-path is tried; an
    unsatisfiable edge-path level backtracks into the node level, so the
    answer is exact.
    """
    return _first_solution(g1, g2, l, h, "ndshd1", config, stats)


def ndshd2(g1: LabeledGraph, g2: LabeledGraph, l: int, h: int, *,
           config: SearchConfig | None = None,
           stats: SearchStats | None = None) -> Mapping | None:
    """First witness found by the interleaved strategy, or None.

    After each node match the edges it completes are path-matched
    immediately, which detects dead ends far earlier on dense data
    graphs.  The determination agrees with ``ndshd1`` on every input.
    """
    return _first_solution(g1, g2, l, h, "ndshd2", config, stats)


def enumerate_all(g1: LabeledGraph, g2: LabeledGraph, l: int, h: int, *,
                  limit: int | None = None, strategy: str = "ndshd2",
                  config: SearchConfig | None = None,
                  stats: SearchStats | None = None):
    """Yield every distinct complete witness, stopping early at ``limit``.

    Distinctness is by node map plus edge-to-path assignment; the
    search tree branches on disjoint choices, so no duplicates arise.
    """
    if limit is not None and limit <= 0:
        return
    stats = stats if stats is not None else SearchStats()
    cfg = config or SearchConfig()
    check_length_window(l, h, cfg.max_h)
    if g1.n == 0:
        stats.outcome = True
        yield Mapping({}, {})
        return
    if g2.n == 0:
        stats.outcome = False
        return
    t0 = time.perf_counter()
    state = MatchState.create(g1, g2, l, h, cfg)
    stats.setup_time = time.perf_counter() - t0
    gen = _Engine(state, strategy, stats).solutions()
    emitted = 0
    t1 = time.perf_counter()
    try:
        for mapping in gen:
            emitted += 1
            yield mapping
            if limit is not None and emitted >= limit:
                break
    finally:
        gen.close()
        stats.wall_time = time.perf_counter() - t1
        stats.outcome = emitted > 0
