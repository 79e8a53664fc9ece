"""Tests for minimum cuts, important separators, shadows and covering families."""

from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given

from scc_deletion.config import CoveringMode
from scc_deletion.errors import BudgetError, InputError
from scc_deletion.graph import MultiDigraph, reach_set
from scc_deletion.one_out_regular import check_oor
from scc_deletion.oracle import brute_force_important_separators, planted_instance
from scc_deletion.separators import (
    build_covering_family,
    enumerate_important_separators,
    min_vertex_cut,
    shadow,
    shadow_capable,
)

from .strategies import PROPERTY_SETTINGS, SLOW_SETTINGS, cycle, path, separator_instances


def _diamond() -> MultiDigraph:
    return MultiDigraph(4, [(0, 1), (1, 3), (0, 2), (2, 3)])


def _separates(g: MultiDigraph, x, y, cut) -> bool:
    return not (reach_set(g.delete_vertices(cut), x) & frozenset(y))


class TestMinVertexCut:
    def test_single_bottleneck(self):
        size, sep = min_vertex_cut(path(3), [0], [2])

        assert size == 1
        assert sep.vertices == frozenset({1})

    def test_diamond_needs_both_middles(self):
        size, sep = min_vertex_cut(_diamond(), [0], [3])

        assert size == 2
        assert sep.vertices == frozenset({1, 2})

    def test_direct_arc_is_uncuttable(self):
        assert min_vertex_cut(path(2), [0], [1]) is None

    def test_overlapping_terminals_are_an_input_error(self):
        with pytest.raises(InputError):
            min_vertex_cut(path(3), [0, 1], [1])

    def test_undeletable_vertex_moves_the_cut(self):
        size, sep = min_vertex_cut(path(4), [0], [3], undeletable=[2])

        assert size == 1
        assert sep.vertices == frozenset({1})
        assert min_vertex_cut(path(4), [0], [3], undeletable=[1, 2]) is None

    def test_cut_is_pushed_towards_the_sink(self):
        size, sep = min_vertex_cut(path(4), [0], [3])

        assert size == 1
        assert sep.vertices == frozenset({2})

    @PROPERTY_SETTINGS
    @given(case=separator_instances(max_n=7, max_m=14))
    def test_size_matches_exhaustive_search(self, case):
        g, x, y, _ = case
        free = sorted(g.vertices - x - y)
        best = next(
            (
                size
                for size in range(len(free) + 1)
                for cut in combinations(free, size)
                if _separates(g, x, y, cut)
            ),
            None,
        )

        result = min_vertex_cut(g, x, y)
        if best is None:
            assert result is None
        else:
            assert result is not None
            assert result[0] == best
            assert _separates(g, x, y, result[1].vertices)


class TestImportantSeparators:
    def test_path_with_budget_one(self):
        found = enumerate_important_separators(path(3), [0], [2], 1)

        assert [sep.vertices for sep in found] == [frozenset({1})]

    def test_chain_prefers_the_separator_closest_to_y(self):
        found = enumerate_important_separators(path(4), [0], [3], 2)

        assert [sep.vertices for sep in found] == [frozenset({2})]

    def test_diamond_with_budget_one_has_none(self):
        assert enumerate_important_separators(_diamond(), [0], [3], 1) == []

    def test_reach_after_is_the_remaining_forward_reach(self):
        (sep,) = enumerate_important_separators(path(4), [0], [3], 2)

        assert sep.reach_after == frozenset({0, 1})

    @PROPERTY_SETTINGS
    @given(case=separator_instances(max_n=7, max_m=14, max_p=3))
    def test_equals_exhaustive_enumeration(self, case):
        g, x, y, p = case

        found = enumerate_important_separators(g, x, y, p)
        expected = brute_force_important_separators(g, x, y, p)
        assert [sep.vertices for sep in found] == [sep.vertices for sep in expected]

    @PROPERTY_SETTINGS
    @given(case=separator_instances(max_n=8, max_m=16))
    def test_count_bound_and_validity(self, case):
        g, x, y, p = case

        found = enumerate_important_separators(g, x, y, p)
        assert len(found) <= 4**p
        for sep in found:
            assert not sep.vertices & (x | y)
            assert _separates(g, x, y, sep.vertices)
            for v in sep.vertices:
                assert not _separates(g, x, y, sep.vertices - {v})

    @pytest.mark.slow
    @SLOW_SETTINGS
    @given(case=separator_instances(max_n=8, max_m=18, max_p=4))
    def test_equals_exhaustive_enumeration_full_size(self, case):
        g, x, y, p = case

        found = enumerate_important_separators(g, x, y, p)
        expected = brute_force_important_separators(g, x, y, p)
        assert [sep.vertices for sep in found] == [sep.vertices for sep in expected]


class TestShadow:
    def test_vacuous_separation_counts(self):
        g = path(3)  # t=0 -> a=1 -> b=2

        forward, reverse = shadow(g, [0], [1])
        assert 2 in forward
        assert 2 in reverse

    def test_all_terminals_means_empty_shadows(self, triangle):
        assert shadow(triangle, triangle.vertices, []) == (frozenset(), frozenset())

    def test_cycle_through_terminal_has_no_shadow(self, triangle):
        assert shadow(triangle, [0], []) == (frozenset(), frozenset())

    def test_shadow_never_contains_the_deleted_set(self):
        g = cycle(5)

        forward, reverse = shadow(g, [0], [2])
        assert 2 not in forward | reverse
        assert forward == frozenset({3, 4})
        assert reverse == frozenset({1})

    def test_growing_t_never_grows_the_shadow(self):
        g = cycle(6)

        small = shadow(g, [0], [2, 4])
        large = shadow(g, [0, 3], [2, 4])
        assert large[0] <= small[0]
        assert large[1] <= small[1]

    def test_shadow_capable_respects_the_budget(self):
        g = MultiDigraph(3, [(0, 1), (1, 0), (0, 2), (2, 0)])

        assert shadow_capable(g, [0], 0) == frozenset()
        assert shadow_capable(g, [1], 1) == frozenset({2})


class TestCoveringFamily:
    def test_none_mode_is_just_the_empty_set(self, triangle):
        family = build_covering_family(triangle, [0], 1, CoveringMode.NONE)

        assert family.sets == [frozenset()]

    def test_exhaustive_mode_is_the_powerset_by_size(self, triangle):
        family = build_covering_family(triangle, [0], 1, CoveringMode.EXHAUSTIVE)

        assert family.sets == [frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2})]

    def test_exhaustive_mode_respects_the_limit(self):
        with pytest.raises(BudgetError):
            build_covering_family(cycle(6), [0], 1, CoveringMode.EXHAUSTIVE, limit=3)

    def test_randomized_mode_is_reproducible_and_avoids_t(self):
        g = cycle(6)

        first = build_covering_family(g, [0], 1, CoveringMode.RANDOMIZED, seed=7, retries=5)
        second = build_covering_family(g, [0], 1, CoveringMode.RANDOMIZED, seed=7, retries=5)
        assert first.sets == second.sets
        assert first.sets[0] == frozenset()
        assert all(0 not in z for z in first)

    @pytest.mark.parametrize("seed", range(6))
    def test_exhaustive_family_covers_a_planted_shadow(self, seed):
        planted = planted_instance(6, 1, None, seed, "oorvd")
        g = planted.instance.graph
        assert check_oor(g, planted.planted)
        terminals = frozenset(sorted(g.vertices - planted.planted)[:2])

        forward, reverse = shadow(g, terminals, planted.planted)
        family = build_covering_family(g, terminals, 1, CoveringMode.EXHAUSTIVE)
        assert (forward | reverse) in family.sets
