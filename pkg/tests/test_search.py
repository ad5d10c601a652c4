import random

import pytest

from homeomatch import (
    LabeledGraph,
    Mapping,
    MatchState,
    SearchConfig,
    SearchStats,
    SearchTimeout,
    enumerate_all,
    initial_compatible_matrix,
    ndshd1,
    ndshd2,
    new_edges_emergent,
    random_labeled_graph,
    verify_mapping,
)
from homeomatch.oracle import brute_force_solve

EXPECTED_NODE_MAP = {1: 2, 2: 8, 3: 6, 4: 4}
EXPECTED_PATHS = {(1, 2): (2, 1, 8), (1, 3): (2, 9, 6), (1, 4): (2, 3, 4),
                  (2, 3): (8, 7, 6), (3, 4): (6, 5, 4)}


def full_snapshot(state):
    return (state.matrix.snapshot(), state.store.snapshot(), list(state.nm),
            list(state.epm), set(state.used_inner))


class TestInitialCompatibleMatrix:
    def test_worked_example_degree_filter(self, worked_pattern, worked_data):
        m0 = initial_compatible_matrix(worked_pattern, worked_data)
        # data vertex 5 shares the label of pattern vertex 1 but its
        # degree 2 is below the pattern vertex's degree 3
        assert worked_data.label(5) == worked_pattern.label(1)
        assert not m0.get(1, 5)
        assert sorted(m0.rows[1]) == [2]
        assert sorted(m0.rows[2]) == [1, 7, 8]
        assert sorted(m0.rows[3]) == [6]
        assert sorted(m0.rows[4]) == [3, 4]

    def test_identity_for_uniquely_labeled_graph(self):
        g = LabeledGraph(4, {1: "a", 2: "b", 3: "c", 4: "d"},
                         [(1, 2), (2, 3), (3, 4)])
        m0 = initial_compatible_matrix(g, g)
        for i in g.vertices:
            assert sorted(m0.rows[i]) == [i]

    def test_matches_direct_predicate_evaluation(self):
        for seed in range(10):
            g1 = random_labeled_graph(4, 1.5, 3, seed)
            g2 = random_labeled_graph(9, 2.5, 3, seed + 100)
            m0 = initial_compatible_matrix(g1, g2)
            for i in g1.vertices:
                for j in g2.vertices:
                    expect = (g1.label(i) == g2.label(j)
                              and g1.degree(i) <= g2.degree(j))
                    assert m0.get(i, j) == expect

    def test_requires_nonempty_graphs(self):
        g = LabeledGraph(1, {1: "a"}, [])
        with pytest.raises(ValueError):
            initial_compatible_matrix(LabeledGraph(0, {}, []), g)


class TestStatePredicates:
    def test_dead_when_a_row_is_empty(self, worked_pattern, worked_data):
        s = MatchState.create(worked_pattern, worked_data, 2, 2)
        assert not s.is_dead("node")
        s.matrix.rows[3].clear()
        assert s.is_dead("node")

    def test_not_dead_in_documented_partial_state(self, worked_pattern, worked_data):
        s = MatchState.create(worked_pattern, worked_data, 2, 2)
        s.push_node_match(1, 2)
        s.push_node_match(2, 8)
        assert not s.is_dead("node")
        assert not s.is_dead("edge")
        # pending edge (1,2) has images 2 and 8 joined by two alive paths
        assert s.store.path_count(2, 8) == 2

    def test_edge_phase_dead_when_pending_pair_has_no_paths(self, worked_pattern, worked_data):
        s = MatchState.create(worked_pattern, worked_data, 2, 2,
                              SearchConfig(refine_matrix=False))
        s.push_node_match(1, 2)
        s.push_node_match(2, 8)
        token = s.store.remove_paths_through_vertex(1)
        token2 = s.store.remove_paths_through_vertex(9)
        assert s.store.path_count(2, 8) == 0
        assert s.is_dead("edge")
        s.store.undo(token2)
        s.store.undo(token)
        assert not s.is_dead("edge")

    def test_unknown_phase_rejected(self, worked_pattern, worked_data):
        s = MatchState.create(worked_pattern, worked_data, 2, 2)
        with pytest.raises(ValueError):
            s.is_dead("both")

    def test_success_requires_full_nm_and_epm(self, worked_pattern, worked_data):
        s = MatchState.create(worked_pattern, worked_data, 2, 2)
        assert not s.is_success()
        for vi, vj in EXPECTED_NODE_MAP.items():
            s.push_node_match(vi, vj)
        assert not s.is_success()  # nodes complete, edges pending
        for edge in worked_pattern.sorted_edges():
            pids = s.path_candidates(edge)
            assert len(pids) >= 1
            target = EXPECTED_PATHS[edge]
            pick = [p for p in pids
                    if s.store.vertices(p) in (target, tuple(reversed(target)))]
            s.push_path_match(edge, pick[0])
        assert s.is_success()


class TestRefinement:
    def test_node_match_removes_paths_through_image(self, worked_pattern, worked_data):
        s = MatchState.create(worked_pattern, worked_data, 2, 2)
        store = s.store
        through_8 = {p for p in range(len(store)) if 8 in store.inner(p)}
        assert through_8
        s.push_node_match(2, 8)
        assert all(not store.is_alive(p) for p in through_8)

    def test_node_match_restores_exactly(self, worked_pattern, worked_data):
        s = MatchState.create(worked_pattern, worked_data, 2, 2)
        before = full_snapshot(s)
        s.push_node_match(2, 8)
        s.pop()
        assert full_snapshot(s) == before

    def test_path_match_kills_conflicts_and_blocks_inner_vertices(
            self, worked_pattern, worked_data):
        s = MatchState.create(worked_pattern, worked_data, 2, 2)
        s.push_node_match(1, 2)
        s.push_node_match(3, 6)
        store = s.store
        (p296,) = [p for p in store.alive_between(2, 6)
                   if store.vertices(p) == (2, 9, 6)]
        (p298,) = [p for p in store.alive_between(2, 8) if 9 in store.inner(p)]
        s.push_path_match((1, 3), p296)
        assert not store.is_alive(p298)
        assert store.is_alive(p296)
        # the committed path's inner vertex cannot become a branch node
        assert all(9 not in row for row in s.matrix.rows[1:])
        assert 9 in s.used_inner

    def test_length_one_path_match_changes_nothing_else(self):
        pattern = LabeledGraph(2, {1: "a", 2: "b"}, [(1, 2)])
        data = LabeledGraph(3, {1: "a", 2: "b", 3: "b"}, [(1, 2), (1, 3), (2, 3)])
        s = MatchState.create(pattern, data, 1, 1)
        s.push_node_match(1, 1)
        s.push_node_match(2, 2)
        alive_before = s.store.alive_count
        (pid,) = s.path_candidates((1, 2))
        s.push_path_match((1, 2), pid)
        assert s.store.alive_count == alive_before
        assert s.used_inner == set()
        assert s.is_success()

    def test_path_match_restores_exactly(self, worked_pattern, worked_data):
        s = MatchState.create(worked_pattern, worked_data, 2, 2)
        s.push_node_match(1, 2)
        s.push_node_match(3, 6)
        before = full_snapshot(s)
        pid = s.path_candidates((1, 3))[0]
        s.push_path_match((1, 3), pid)
        s.pop()
        assert full_snapshot(s) == before

    def test_refine_clears_cell_without_independent_witnesses(self):
        # pattern: a-b-c chain; data: the b-candidate X reaches both the
        # a-image and the only c-candidate solely through vertex z, so no
        # pairwise independent pair of witness paths exists
        pattern = LabeledGraph(3, {1: "a", 2: "b", 3: "c"}, [(1, 2), (2, 3)])
        data = LabeledGraph(5, {1: "a", 2: "b", 3: "q", 4: "c", 5: "q"},
                            [(1, 3), (2, 3), (3, 4), (2, 5)])
        s = MatchState.create(pattern, data, 2, 2)
        assert s.matrix.get(2, 2)
        s.push_node_match(1, 1)
        assert not s.matrix.get(2, 2)
        assert s.is_dead("node")
        assert ndshd1(pattern, data, 2, 2) is None
        assert brute_force_solve(pattern, data, 2, 2) == []

    def test_refine_with_empty_nm_uses_reachability_only(self):
        pattern = LabeledGraph(2, {1: "a", 2: "b"}, [(1, 2)])
        data = LabeledGraph(4, {1: "a", 2: "b", 3: "q", 4: "q"},
                            [(1, 3), (2, 4)])
        s = MatchState.create(pattern, data, 1, 2)
        assert s.matrix.get(1, 1) and s.matrix.get(2, 2)
        s.refine_compatibility()
        # no path joins the two labeled candidates, so both rows clear
        assert s.is_dead("node")

    def test_cleared_cells_never_appear_in_oracle_solutions(self):
        for seed in range(20):
            rng = random.Random(seed)
            g1 = random_labeled_graph(rng.randint(2, 4), 1.5, 3, seed + 40)
            g2 = random_labeled_graph(rng.randint(5, 10), 2.5, 3, seed + 70)
            s = MatchState.create(g1, g2, 1, 2)
            before = {(i, j) for i in g1.vertices for j in sorted(s.matrix.rows[i])}
            s.refine_compatibility()
            after = {(i, j) for i in g1.vertices for j in sorted(s.matrix.rows[i])}
            cleared = before - after
            used = set()
            for m in brute_force_solve(g1, g2, 1, 2):
                used.update(m.node_map.items())
            assert not (cleared & used), seed


class TestNewEdgesEmergent:
    def test_first_match_of_connected_pattern_is_empty(self, worked_pattern, worked_data):
        s = MatchState.create(worked_pattern, worked_data, 2, 2)
        s.push_node_match(1, 2)
        assert new_edges_emergent(s, worked_pattern) == []

    def test_second_match_completes_one_edge(self, worked_pattern, worked_data):
        s = MatchState.create(worked_pattern, worked_data, 2, 2)
        s.push_node_match(1, 2)
        s.push_node_match(2, 8)
        assert new_edges_emergent(s, worked_pattern) == [(1, 2)]

    def test_last_vertex_of_k4_completes_three_edges(self):
        k4 = LabeledGraph(4, {1: "a", 2: "b", 3: "c", 4: "d"},
                          [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
        s = MatchState.create(k4, k4, 1, 1)
        s.push_node_match(1, 1)
        s.push_node_match(2, 2)
        s.push_node_match(3, 3)
        s.push_node_match(4, 4)
        assert new_edges_emergent(s, k4) == [(1, 4), (2, 4), (3, 4)]


class TestDetermination:
    def test_worked_example_true_at_2_2(self, worked_pattern, worked_data):
        for fn in (ndshd1, ndshd2):
            w = fn(worked_pattern, worked_data, 2, 2)
            assert w is not None
            assert verify_mapping(worked_pattern, worked_data, 2, 2, w)
        # under the default most-constrained-first order the search lands
        # on the documented witness
        w = ndshd1(worked_pattern, worked_data, 2, 2)
        assert w.node_map == EXPECTED_NODE_MAP
        assert dict(w.edge_path_map) == EXPECTED_PATHS

    def test_worked_example_false_at_3_3(self, worked_pattern, worked_data):
        assert ndshd1(worked_pattern, worked_data, 3, 3) is None
        assert ndshd2(worked_pattern, worked_data, 3, 3) is None

    def test_single_vertex_pattern(self):
        pattern = LabeledGraph(1, {1: "b"}, [])
        data = LabeledGraph(3, {1: "a", 2: "b", 3: "c"}, [(1, 2), (2, 3)])
        for fn in (ndshd1, ndshd2):
            w = fn(pattern, data, 1, 1)
            assert w is not None and w.node_map == {1: 2}

    def test_empty_pattern_is_trivially_contained(self, worked_data):
        empty = LabeledGraph(0, {}, [])
        for fn in (ndshd1, ndshd2):
            w = fn(empty, worked_data, 1, 2)
            assert w == Mapping({}, {})

    def test_empty_data_graph(self):
        pattern = LabeledGraph(1, {1: "a"}, [])
        assert ndshd1(pattern, LabeledGraph(0, {}, []), 1, 1) is None

    def test_edgeless_pattern_reduces_to_node_assignment(self):
        pattern = LabeledGraph(2, {1: "a", 2: "a"}, [])
        data = LabeledGraph(3, {1: "a", 2: "a", 3: "b"}, [(1, 2), (2, 3)])
        w = ndshd2(pattern, data, 1, 1)
        assert w is not None and set(w.node_map.values()) == {1, 2}

    def test_window_validation(self, worked_pattern, worked_data):
        for fn in (ndshd1, ndshd2):
            with pytest.raises(ValueError):
                fn(worked_pattern, worked_data, 0, 2)
            with pytest.raises(ValueError):
                fn(worked_pattern, worked_data, 2, 1)
            with pytest.raises(ValueError, match="cap"):
                fn(worked_pattern, worked_data, 1, 9)

    def test_ascending_order_also_finds_solutions(self, worked_pattern, worked_data):
        cfg = SearchConfig(order="ascending")
        w = ndshd1(worked_pattern, worked_data, 2, 2, config=cfg)
        assert w is not None
        assert verify_mapping(worked_pattern, worked_data, 2, 2, w)

    def test_timeout_raises(self, worked_pattern, worked_data):
        cfg = SearchConfig(deadline=0.0)
        with pytest.raises(SearchTimeout):
            ndshd1(worked_pattern, worked_data, 2, 2, config=cfg)


class TestEnumeration:
    def test_worked_example_has_exactly_one_witness(self, worked_pattern, worked_data,
                                                    worked_mapping):
        for strat in ("ndshd1", "ndshd2"):
            found = list(enumerate_all(worked_pattern, worked_data, 2, 2, strategy=strat))
            assert len(found) == 1
            assert found[0].canonical_key() == worked_mapping.canonical_key()

    def test_unsatisfiable_instance_yields_nothing(self, worked_pattern, worked_data):
        assert list(enumerate_all(worked_pattern, worked_data, 3, 3)) == []

    def test_limit_stops_early(self):
        pattern = LabeledGraph(2, {1: "a", 2: "a"}, [(1, 2)])
        data = LabeledGraph(4, {v: "a" for v in range(1, 5)},
                            [(1, 2), (2, 3), (3, 4), (1, 4)])
        # each of the 4 data edges hosts the symmetric pattern edge in
        # both orientations
        all_of_them = list(enumerate_all(pattern, data, 1, 1))
        assert len(all_of_them) == 8
        assert len(list(enumerate_all(pattern, data, 1, 1, limit=2))) == 2
        assert list(enumerate_all(pattern, data, 1, 1, limit=0)) == []

    def test_no_duplicates_and_matches_oracle_sets(self):
        for seed in range(25):
            rng = random.Random(seed)
            g1 = random_labeled_graph(rng.randint(2, 4), 1.5, 3, seed + 3)
            g2 = random_labeled_graph(rng.randint(5, 10), 2.5, 3, seed + 11)
            oracle = {m.canonical_key() for m in brute_force_solve(g1, g2, 1, 2)}
            for strat in ("ndshd1", "ndshd2"):
                got = [m.canonical_key()
                       for m in enumerate_all(g1, g2, 1, 2, strategy=strat)]
                assert len(got) == len(set(got)), seed
                assert set(got) == oracle, seed

    def test_every_emitted_mapping_verifies(self, worked_pattern, worked_data):
        for m in enumerate_all(worked_pattern, worked_data, 1, 3):
            assert verify_mapping(worked_pattern, worked_data, 1, 3, m)


class TestSearchHygiene:
    def test_inputs_and_state_unmodified_after_search(self, worked_pattern, worked_data):
        s = MatchState.create(worked_pattern, worked_data, 2, 2)
        matrix_before = s.matrix.snapshot()
        store_before = s.store.snapshot()
        from homeomatch.search import _Engine

        for strategy in ("ndshd1", "ndshd2"):
            for consume_all in (False, True):
                gen = _Engine(s, strategy, SearchStats()).solutions()
                if consume_all:
                    list(gen)
                else:
                    next(gen)
                gen.close()
                assert s.matrix.snapshot() == matrix_before
                assert s.store.snapshot() == store_before
                assert s.nm == [] and s.epm == [] and s.used_inner == set()

    def test_monotone_matrix_under_validation(self, worked_pattern, worked_data):
        cfg = SearchConfig(validate=True)
        w = ndshd1(worked_pattern, worked_data, 2, 2, config=cfg)
        assert w is not None

    def test_prune_toggles_preserve_solution_sets(self):
        for seed in range(12):
            rng = random.Random(seed)
            g1 = random_labeled_graph(rng.randint(2, 4), 1.5, 3, seed + 21)
            g2 = random_labeled_graph(rng.randint(5, 10), 3.0, 3, seed + 63)
            base = {m.canonical_key() for m in enumerate_all(g1, g2, 1, 2)}
            for kw in ({"prune_through_matched": False},
                       {"prune_conflicts": False},
                       {"refine_matrix": False}):
                for strat in ("ndshd1", "ndshd2"):
                    got = {m.canonical_key()
                           for m in enumerate_all(g1, g2, 1, 2, strategy=strat,
                                                  config=SearchConfig(**kw))}
                    assert got == base, (seed, kw, strat)

    def test_deterministic_stats_and_witnesses(self, worked_pattern, worked_data):
        runs = []
        for _ in range(2):
            stats = SearchStats(trace=[])
            w = ndshd2(worked_pattern, worked_data, 1, 3, stats=stats)
            runs.append((w.canonical_key(), stats.recursion_calls, stats.max_depth,
                         tuple(stats.trace)))
        assert runs[0] == runs[1]

    def test_stats_fields_consistent(self, worked_pattern, worked_data):
        stats = SearchStats(trace=[])
        ndshd1(worked_pattern, worked_data, 2, 2, stats=stats)
        assert stats.outcome is True
        assert stats.recursion_calls >= stats.max_depth
        assert len(stats.trace) == stats.recursion_calls
        assert stats.wall_time >= 0 and stats.setup_time > 0
        d = stats.as_dict(include_timing=False)
        assert "wall_time_s" not in d and "trace" in d

    def test_strategy_agreement_on_random_inputs(self):
        for seed in range(40):
            rng = random.Random(seed + 1234)
            n1 = rng.randint(2, 5)
            g1 = random_labeled_graph(n1, min(2.0, n1 - 1), 4, seed)
            g2 = random_labeled_graph(rng.randint(6, 14), 3.0, 4, seed + 17)
            h = rng.randint(1, 3)
            assert (ndshd1(g1, g2, 1, h) is None) == (ndshd2(g1, g2, 1, h) is None), seed
