"""Bounded simple-path index over candidate branch nodes.

Holds every simple path of the data graph whose length lies in [l, h]
and whose two ends are both candidate branch nodes; inner vertices are
unrestricted.  Each undirected path is stored once, oriented from its
smaller end, under a per-endpoint-pair list plus an alive counter (the
pair counters form the independent-path count matrix consulted by the
search).  Removal batches flip alive flags and return tokens; undoing
tokens in reverse order restores the previous state exactly, which is
what backtracking relies on.

A store belongs to exactly one search and is never mutated
concurrently.  The maximum usable ``h`` is capped (default 6, env
``HOMEOMATCH_MAX_H`` overrides) because the number of bounded paths
grows exponentially with ``h``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

__all__ = [
    "DEFAULT_MAX_H",
    "length_cap",
    "check_length_window",
    "UndoToken",
    "PathStore",
    "candidate_branch_nodes",
    "enumerate_paths",
]

DEFAULT_MAX_H = 6
_ENV_MAX_H = "HOMEOMATCH_MAX_H"


def length_cap(max_h: int | None = None) -> int:
    """Configured upper bound for h; HOMEOMATCH_MAX_H overrides the default."""
    if max_h is not None:
        return int(max_h)
    return int(os.environ.get(_ENV_MAX_H, DEFAULT_MAX_H))


def check_length_window(l: int, h: int, max_h: int | None = None):
    if l < 1:
        raise ValueError("minimum path length l must be >= 1")
    if h < l:
        raise ValueError("maximum path length h must be >= l")
    cap = length_cap(max_h)
    if h > cap:
        raise ValueError(
            f"h={h} exceeds the configured cap {cap} (set {_ENV_MAX_H} to raise it)")


@dataclass(frozen=True)
class UndoToken:
    """Opaque record of one removal batch; undo revives exactly these paths."""

    killed: tuple


def candidate_branch_nodes(matrix) -> tuple:
    """Data vertices whose column in the initial matrix has at least one 1.

    Only these vertices can be images of pattern vertices, so only paths
    ending at them need to be enumerated; returned in ascending order.
    """
    return matrix.nonzero_columns()


class PathStore:
    """Path table plus endpoint-pair index with soft removal and undo.

    Besides the pair counters, the store tracks per endpoint how many
    distinct opposite endpoints of each label are still reachable by an
    alive path, which gives the refinement an O(1) label-reachability
    test.
    """

    __slots__ = ("l", "h", "candidates", "labels", "_cand_set", "_verts",
                 "_inner", "_alive", "alive_count", "by_pair", "_by_inner",
                 "_by_end", "_pair_alive", "_reach_labels", "_reach")

    def __init__(self, l: int, h: int, candidates, labels: dict[int, str]):
        self.l = l
        self.h = h
        self.candidates = tuple(sorted(candidates))
        self.labels = dict(labels)
        self._cand_set = frozenset(self.candidates)
        self._verts: list[tuple[int, ...]] = []
        self._inner: list[frozenset] = []
        self._alive = bytearray()
        self.alive_count = 0
        self.by_pair: dict[tuple[int, int], list[int]] = {}
        self._by_inner: dict[int, list[int]] = {}
        self._by_end: dict[int, list[int]] = {}
        self._pair_alive: dict[tuple[int, int], int] = {}
        self._reach_labels: dict[int, dict[str, int]] = {v: {} for v in self.candidates}
        self._reach: dict[int, set[int]] = {v: set() for v in self.candidates}

    def _reach_inc(self, u: int, w: int, delta: int):
        for a, b in ((u, w), (w, u)):
            counts = self._reach_labels[a]
            lbl = self.labels[b]
            counts[lbl] = counts.get(lbl, 0) + delta
            if delta > 0:
                self._reach[a].add(b)
            else:
                self._reach[a].discard(b)

    def _add(self, verts: tuple[int, ...]):
        pid = len(self._verts)
        self._verts.append(verts)
        inner = frozenset(verts[1:-1])
        self._inner.append(inner)
        self._alive.append(1)
        self.alive_count += 1
        key = (verts[0], verts[-1]) if verts[0] < verts[-1] else (verts[-1], verts[0])
        self.by_pair.setdefault(key, []).append(pid)
        count = self._pair_alive.get(key, 0) + 1
        self._pair_alive[key] = count
        if count == 1:
            self._reach_inc(key[0], key[1], 1)
        for x in verts[1:-1]:
            self._by_inner.setdefault(x, []).append(pid)
        self._by_end.setdefault(verts[0], []).append(pid)
        self._by_end.setdefault(verts[-1], []).append(pid)

    def __len__(self) -> int:
        return len(self._verts)

    def vertices(self, pid: int) -> tuple[int, ...]:
        return self._verts[pid]

    def inner(self, pid: int) -> frozenset:
        return self._inner[pid]

    def is_alive(self, pid: int) -> bool:
        return bool(self._alive[pid])

    def pair_count(self, u: int, w: int) -> int:
        key = (u, w) if u < w else (w, u)
        return self._pair_alive.get(key, 0)

    def path_count(self, u: int, w: int) -> int:
        """Alive paths between two candidate branch nodes (count matrix entry)."""
        for v in (u, w):
            if v not in self._cand_set:
                raise ValueError(f"vertex {v} is not a candidate branch node")
        return self.pair_count(u, w)

    def alive_between(self, u: int, w: int) -> list[int]:
        key = (u, w) if u < w else (w, u)
        alive = self._alive
        return [pid for pid in self.by_pair.get(key, ()) if alive[pid]]

    def paths_ending_at(self, v: int) -> list[int]:
        """Ids of all stored paths with v as an end (alive or not), ascending."""
        return self._by_end.get(v, [])

    def label_reachable(self, v: int, lbl: str) -> bool:
        """Whether some vertex labeled lbl is joined to v by an alive path."""
        return self._reach_labels[v].get(lbl, 0) > 0

    def reachable_from(self, v: int) -> set[int]:
        """Vertices joined to v by at least one alive path; do not mutate."""
        return self._reach[v]

    def _kill(self, pid: int, killed: list[int]):
        if self._alive[pid]:
            self._alive[pid] = 0
            self.alive_count -= 1
            v = self._verts[pid]
            key = (v[0], v[-1]) if v[0] < v[-1] else (v[-1], v[0])
            count = self._pair_alive[key] - 1
            self._pair_alive[key] = count
            if count == 0:
                self._reach_inc(key[0], key[1], -1)
            killed.append(pid)

    def remove_paths_through_vertex(self, v: int) -> UndoToken:
        """Deactivate every alive path having v strictly inside; ends untouched."""
        killed: list[int] = []
        for pid in self._by_inner.get(v, ()):
            self._kill(pid, killed)
        return UndoToken(tuple(killed))

    def remove_paths_conflicting_with(self, pid: int) -> UndoToken:
        """Deactivate every other alive path that touches an inner vertex of this one.

        Touching means containing the vertex anywhere, as an inner vertex
        or as an end.  The committed path itself stays alive.
        """
        if not 0 <= pid < len(self._verts):
            raise ValueError(f"no path with id {pid}")
        if not self._alive[pid]:
            raise ValueError(f"path {pid} is not alive")
        killed: list[int] = []
        for x in self._inner[pid]:
            for q in self._by_inner.get(x, ()):
                if q != pid:
                    self._kill(q, killed)
            for q in self._by_end.get(x, ()):
                if q != pid:
                    self._kill(q, killed)
        return UndoToken(tuple(killed))

    def undo(self, token: UndoToken):
        for pid in reversed(token.killed):
            self._alive[pid] = 1
            self.alive_count += 1
            v = self._verts[pid]
            key = (v[0], v[-1]) if v[0] < v[-1] else (v[-1], v[0])
            count = self._pair_alive[key] + 1
            self._pair_alive[key] = count
            if count == 1:
                self._reach_inc(key[0], key[1], 1)

    def paths_independent(self, p: int, q: int) -> bool:
        """Neither path contains an inner vertex of the other (ends may coincide)."""
        pv, qv = self._verts[p], self._verts[q]
        pi, qi = self._inner[p], self._inner[q]
        for x in pi:
            if x in qi or x == qv[0] or x == qv[-1]:
                return False
        for x in qi:
            if x == pv[0] or x == pv[-1]:
                return False
        return True

    def snapshot(self):
        """Fingerprint of the mutable state, for exact-restore checks."""
        reach = {v: {k: n for k, n in c.items() if n} for v, c in self._reach_labels.items()}
        sets = {v: frozenset(s) for v, s in self._reach.items()}
        return bytes(self._alive), dict(self._pair_alive), self.alive_count, reach, sets

    def dump(self) -> str:
        """Debug text: one 'p <id> <v1> ... <vk>' line per alive path, ascending id."""
        lines = []
        for pid, verts in enumerate(self._verts):
            if self._alive[pid]:
                lines.append(f"p {pid} " + " ".join(str(v) for v in verts))
        return "\n".join(lines) + ("\n" if lines else "")


def enumerate_paths(g2, candidates, l: int, h: int,
                    max_h: int | None = None) -> PathStore:
    """All simple paths of length l..h between candidate pairs, each stored once.

    Bounded DFS from every candidate vertex; a path is emitted when the
    far end is a candidate with a larger id, which canonicalizes the
    orientation.  Inner vertices may be non-candidates.
    """
    check_length_window(l, h, max_h)
    for v in candidates:
        if not 1 <= v <= g2.n:
            raise ValueError(f"candidate {v} is not a vertex of the data graph")
    store = PathStore(l, h, candidates, {v: g2.label(v) for v in candidates})
    cand = store._cand_set
    adj = g2._adj  # hot loop; skips the per-call bounds check of neighbors()
    path: list[int] = []
    on_path: set[int] = set()

    def walk(v: int, depth: int):
        for w in adj[v]:
            if w in on_path:
                continue
            nd = depth + 1
            path.append(w)
            on_path.add(w)
            if nd >= l and w > path[0] and w in cand:
                store._add(tuple(path))
            if nd < h:
                walk(w, nd)
            path.pop()
            on_path.remove(w)

    for s in store.candidates:
        path.clear()
        path.append(s)
        on_path.clear()
        on_path.add(s)
        walk(s, 0)
    return store
