"""Tests for 1-out-regular deletion: checker, torso, recovery, solvers."""

from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from scc_deletion.config import CoveringMode, SolverConfig, SolveStats
from scc_deletion.errors import InputError
from scc_deletion.graph import Mode, MultiDigraph, cap_multiplicity, scc
from scc_deletion.one_out_regular import (
    ArcQuality,
    check_oor,
    contains_forbidden,
    detect_fbad,
    line_graph_transform,
    recover_last_component,
    solve_oorad,
    solve_oorvd,
    torso,
)
from scc_deletion.oracle import brute_force, planted_instance
from scc_deletion.problems import Problem, ProblemInstance

from .strategies import PROPERTY_SETTINGS, SLOW_SETTINGS, SOLVER_SETTINGS, cycle, graphs, path


@st.composite
def torso_cases(draw: st.DrawFn, max_n: int = 7, max_m: int = 14):
    """A graph with disjoint Z and T such that G[Z u T] is 1-out-regular."""
    g = draw(graphs(min_n=2, max_n=max_n, max_m=max_m))
    labels = draw(
        st.lists(st.sampled_from("zto"), min_size=g.n, max_size=g.n)
    )
    z = frozenset(v for v in g.vertices if labels[v] == "z")
    t = frozenset(v for v in g.vertices if labels[v] == "t")
    assume(not contains_forbidden(g, z | t))
    return g, z, t


def _interior_paths(g: MultiDigraph, z: frozenset[int], u: int, v: int) -> list[list[int]]:
    """Every u -> v path (as arc ids) of length >= 1 whose interior is a simple path in Z."""
    found: list[list[int]] = []

    def extend(at: int, arcs: list[int], visited: set[int]):
        for arc_id in g.out_arcs(at):
            head = g.endpoints(arc_id)[1]
            if head == v:
                found.append(arcs + [arc_id])
            if head in z and head not in visited:
                extend(head, arcs + [arc_id], visited | {head})

    extend(u, [], set())
    return found


def _path_count(g: MultiDigraph, z: frozenset[int], u: int, v: int) -> int:
    paths = _interior_paths(g, z, u, v)
    if u == v:
        loops = [p for p in paths if len(p) == 1]
        paths = [p for p in paths if len(p) > 1] + loops[:1]
    return len(paths)


def _z_cycle_vertices(g: MultiDigraph, z: frozenset[int]) -> frozenset[int]:
    gz = g.induced(z)
    on_cycle = {v for c in scc(gz).components if len(c) > 1 for v in c}
    on_cycle.update(v for v in gz.vertices if v in gz.successors(v))
    return frozenset(on_cycle)


class TestCheckOor:
    def test_plain_cycle_is_valid(self, triangle):
        assert check_oor(triangle, [])

    def test_chord_breaks_it(self, chorded_triangle):
        assert not check_oor(chorded_triangle, [])
        assert check_oor(chorded_triangle, [1])

    def test_shared_vertex_of_two_triangles(self, bowtie):
        assert not check_oor(bowtie, [])
        assert check_oor(bowtie, [0])

    def test_singletons_accept_any_loops(self):
        assert check_oor(MultiDigraph(1, [(0, 0), (0, 0)]), [])

    def test_parallel_arcs_in_a_cycle_are_invalid(self):
        assert not check_oor(MultiDigraph(2, [(0, 1), (0, 1), (1, 0)]), [])

    def test_loop_on_a_cycle_vertex_is_invalid(self):
        assert not check_oor(MultiDigraph(2, [(0, 1), (1, 0), (0, 0)]), [])

    def test_arc_mode(self, chorded_triangle):
        assert check_oor(chorded_triangle, [3], Mode.ARC)
        assert not check_oor(chorded_triangle, [], Mode.ARC)

    def test_contains_forbidden(self, chorded_triangle, triangle):
        assert contains_forbidden(chorded_triangle, chorded_triangle.vertices)
        assert not contains_forbidden(triangle, triangle.vertices)
        assert not contains_forbidden(path(4), range(4))


class TestTorso:
    def test_unique_path_gives_good_arc(self):
        tg = torso(path(3), [1])

        assert tg.g_prime.vertices == frozenset({0, 2})
        assert tg.quality(0, 2) is ArcQuality.GOOD

    def test_two_paths_give_bad_arc(self):
        g = MultiDigraph(4, [(0, 1), (1, 3), (0, 2), (2, 3)])

        assert torso(g, [1, 2]).quality(0, 3) is ArcQuality.BAD

    def test_round_trip_through_z_is_a_good_loop(self):
        tg = torso(MultiDigraph(2, [(0, 1), (1, 0)]), [1])

        assert tg.quality(0, 0) is ArcQuality.GOOD
        assert not tg.has_bad_loop(0)

    def test_path_touching_a_cycle_in_z_is_bad(self):
        g = MultiDigraph(4, [(0, 1), (1, 2), (2, 1), (2, 3)])

        assert torso(g, [1, 2]).quality(0, 3) is ArcQuality.BAD

    def test_parallel_interior_arcs_are_bad(self):
        g = MultiDigraph(3, [(0, 1), (0, 1), (1, 2)])

        assert torso(g, [1]).quality(0, 2) is ArcQuality.BAD

    def test_no_path_no_arc(self):
        assert torso(path(3), [2]).g_prime.num_arcs == 1

    @PROPERTY_SETTINGS
    @given(case=torso_cases())
    def test_keeps_every_arc_outside_z(self, case):
        g, z, _ = case
        tg = torso(g, z)

        for _, u, v in g.arcs():
            if u not in z and v not in z:
                assert tg.quality(u, v) is not None

    @PROPERTY_SETTINGS
    @given(case=torso_cases())
    def test_arc_labels_match_path_enumeration(self, case):
        g, z, _ = case
        tg = torso(g, z)
        cyclic = _z_cycle_vertices(g, z)

        for u in sorted(g.vertices - z):
            for v in sorted(g.vertices - z):
                paths = _interior_paths(g, z, u, v)
                quality = tg.quality(u, v)
                assert (quality is None) == (not paths)
                if quality is ArcQuality.GOOD:
                    assert _path_count(g, z, u, v) == 1
                    interior = {g.endpoints(a)[1] for a in paths[0][:-1]}
                    assert not interior & cyclic

    @PROPERTY_SETTINGS
    @given(case=torso_cases())
    def test_preserves_obstructions(self, case):
        g, z, t = case
        tg = torso(g, z)
        free = sorted(g.vertices - z - t)

        for size in range(3):
            for chosen in combinations(free, size):
                s_set = frozenset(chosen)
                assert contains_forbidden(g, g.vertices - s_set) == detect_fbad(tg, s_set)


class TestDetectFbad:
    def test_good_cycle_is_fine(self, triangle):
        assert not detect_fbad(torso(triangle, []))

    def test_cycle_with_a_bad_arc(self):
        g = MultiDigraph(3, [(0, 1), (0, 1), (1, 2), (2, 0)])

        assert detect_fbad(torso(g, []))

    def test_cycle_with_a_chord(self, chorded_triangle):
        tg = torso(chorded_triangle, [])

        assert detect_fbad(tg)
        assert not detect_fbad(tg, [1])

    def test_bad_loop_on_a_singleton(self):
        tg = torso(MultiDigraph(3, [(0, 1), (1, 0), (0, 2), (2, 0)]), [1, 2])

        assert tg.has_bad_loop(0)
        assert detect_fbad(tg)


class TestRecoverLastComponent:
    def test_good_cycle_needs_no_deletion(self, triangle):
        branches = list(recover_last_component(torso(triangle, []), [0], [0], 0))

        assert branches == [(frozenset({0, 1, 2}), frozenset())]

    def test_trivial_and_cycle_branches(self):
        g = MultiDigraph(3, [(0, 1), (1, 0), (0, 2)])  # t=0, a=1, b=2

        branches = list(recover_last_component(torso(g, []), [0], [0], 2))
        assert branches == [
            (frozenset({0}), frozenset({1, 2})),
            (frozenset({0, 1}), frozenset({2})),
        ]

    def test_budget_prunes_the_trivial_branch(self):
        g = MultiDigraph(3, [(0, 1), (1, 0), (0, 2)])

        branches = list(recover_last_component(torso(g, []), [0], [0], 1))
        assert branches == [(frozenset({0, 1}), frozenset({2}))]

    def test_bad_arc_into_other_terminal_is_dead(self):
        g = MultiDigraph(2, [(0, 1), (0, 1)])

        assert list(recover_last_component(torso(g, []), [0], [0, 1], 2)) == []

    def test_negative_budget_yields_nothing(self, triangle):
        assert list(recover_last_component(torso(triangle, []), [0], [0], -1)) == []


class TestSolveOorvd:
    def test_cycle_needs_nothing(self, triangle):
        assert solve_oorvd(triangle, 0) == frozenset()

    def test_chorded_triangle(self, chorded_triangle):
        found = solve_oorvd(chorded_triangle, 1)

        assert found is not None
        assert len(found) == 1
        assert check_oor(chorded_triangle, found)
        assert solve_oorvd(chorded_triangle, 0) is None

    def test_two_triangles_sharing_a_vertex(self, bowtie):
        found = solve_oorvd(bowtie, 1)

        assert found is not None
        assert len(found) == 1
        assert check_oor(bowtie, found)

    def test_bidirected_clique(self, k4):
        found = solve_oorvd(k4, 2)

        assert found is not None
        assert check_oor(k4, found)
        assert solve_oorvd(k4, 1) is None

    def test_rejects_negative_budget(self, triangle):
        with pytest.raises(InputError):
            solve_oorvd(triangle, -1)

    def test_counts_search_nodes(self, k4):
        stats = SolveStats()

        solve_oorvd(k4, 2, stats=stats)
        assert stats.nodes > 0

    @pytest.mark.parametrize("seed", range(4))
    def test_randomized_covering_is_one_sided(self, seed, bowtie):
        config = SolverConfig(covering=CoveringMode.RANDOMIZED, seed=seed, covering_retries=3)

        found = solve_oorvd(bowtie, 1, config)
        assert found is None or check_oor(bowtie, found)

    @SOLVER_SETTINGS
    @given(g=graphs(max_n=7, max_m=14), k=st.integers(min_value=0, max_value=2))
    def test_matches_brute_force(self, g, k):
        found = solve_oorvd(g, k)
        expected = brute_force(ProblemInstance(Problem.OORVD, g, k))

        assert (found is None) == (expected is None)
        if found is not None:
            assert len(found) <= k
            assert check_oor(g, found)
            for v in sorted(g.vertices - found):
                assert check_oor(g, found | {v})

    @pytest.mark.slow
    @SLOW_SETTINGS
    @given(g=graphs(max_n=9, max_m=20), k=st.integers(min_value=0, max_value=3))
    def test_matches_brute_force_larger(self, g, k):
        found = solve_oorvd(g, k)
        expected = brute_force(ProblemInstance(Problem.OORVD, g, k))

        assert (found is None) == (expected is None)
        if found is not None:
            assert check_oor(g, found)

    @SOLVER_SETTINGS
    @given(
        seed=st.integers(min_value=0, max_value=2**31),
        n=st.integers(min_value=2, max_value=7),
        k=st.integers(min_value=0, max_value=2),
    )
    def test_planted_instances_are_solved(self, seed, n, k):
        planted = planted_instance(n, min(k, n - 1), None, seed, Problem.OORVD)
        g, budget = planted.instance.graph, planted.instance.k

        found = solve_oorvd(g, budget)
        assert brute_force(planted.instance) is not None
        assert found is not None
        assert len(found) <= budget
        assert check_oor(g, found)

    @pytest.mark.slow
    @SLOW_SETTINGS
    @given(
        seed=st.integers(min_value=0, max_value=2**31),
        n=st.integers(min_value=2, max_value=9),
        k=st.integers(min_value=0, max_value=3),
    )
    def test_planted_instances_are_solved_larger(self, seed, n, k):
        planted = planted_instance(n, min(k, n - 1), None, seed, Problem.OORVD)
        g, budget = planted.instance.graph, planted.instance.k

        found = solve_oorvd(g, budget)
        assert brute_force(planted.instance) is not None
        assert found is not None
        assert check_oor(g, found)


class TestLineGraph:
    def test_cycle_maps_to_cycle(self, triangle):
        line = line_graph_transform(triangle, 1).instance.graph

        assert line.arcs() == [(0, 0, 1), (1, 1, 2), (2, 2, 0)]

    def test_single_arc_is_an_isolated_vertex(self):
        line = line_graph_transform(path(2), 0).instance.graph

        assert line.num_vertices == 1
        assert line.num_arcs == 0

    def test_common_head_collects_both_feeders(self):
        g = MultiDigraph(5, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)])

        line = line_graph_transform(g, 0).instance.graph
        assert line.predecessors(4) == [2, 3]

    def test_two_loops_at_one_vertex_stay_apart(self):
        g = MultiDigraph(1, [(0, 0), (0, 0)])

        line = line_graph_transform(g, 0).instance.graph
        assert line.arcs() == [(0, 0, 0), (1, 1, 1)]

    def test_skips_deleted_arcs_and_maps_back(self, triangle):
        transformed = line_graph_transform(triangle.delete_arcs([1]), 0)

        assert transformed.origin == {0: 0, 1: 2}
        assert transformed.lift(frozenset({1})) == frozenset({2})

    @PROPERTY_SETTINGS
    @given(g=graphs(max_n=5, max_m=7), k=st.integers(min_value=0, max_value=2))
    def test_optimum_matches_arc_instance(self, g, k):
        transformed = line_graph_transform(cap_multiplicity(g, k + 1), k)

        by_arcs = brute_force(ProblemInstance(Problem.OORAD, g, k))
        by_line = brute_force(transformed.instance)
        assert (by_arcs is None) == (by_line is None)
        if by_line is not None:
            assert len(by_arcs) == len(by_line)
            assert check_oor(g, transformed.lift(by_line), Mode.ARC)


class TestSolveOorad:
    def test_chord_is_enough(self, chorded_triangle):
        found = solve_oorad(chorded_triangle, 1)

        assert found is not None
        assert len(found) == 1
        assert check_oor(chorded_triangle, found, Mode.ARC)

    def test_cycle_needs_nothing(self):
        assert solve_oorad(cycle(3), 0) == frozenset()

    def test_bidirected_triangle_matches_brute_force(self):
        g = MultiDigraph(3, [(u, v) for u in range(3) for v in range(3) if u != v])

        for k in range(3):
            expected = brute_force(ProblemInstance(Problem.OORAD, g, k))
            found = solve_oorad(g, k)
            assert (found is None) == (expected is None)

    @SOLVER_SETTINGS
    @given(g=graphs(max_n=4, max_m=6), k=st.integers(min_value=0, max_value=1))
    def test_matches_brute_force(self, g, k):
        found = solve_oorad(g, k)
        expected = brute_force(ProblemInstance(Problem.OORAD, g, k))

        assert (found is None) == (expected is None)
        if found is not None:
            assert len(found) <= k
            assert check_oor(g, found, Mode.ARC)
