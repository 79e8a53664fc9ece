"""Tests for skew separators and their two backends."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from scc_deletion.config import SkewBackend, SolveStats
from scc_deletion.errors import InputError, SccDeletionError
from scc_deletion.graph import MultiDigraph
from scc_deletion.skew import SkewSystem, is_skew_separator, solve_skew

from .strategies import PROPERTY_SETTINGS, graphs

# x1=0 x2=1 y1=2 y2=3 a=4 b=5
_TWO_ROUTES = [(1, 4), (4, 2), (1, 5), (5, 2)]


def _system(arcs, k: int, n: int = 6) -> SkewSystem:
    return SkewSystem.build(MultiDigraph(n, arcs), [[0], [1]], [[2], [3]], k)


@st.composite
def skew_systems(draw: st.DrawFn, max_n: int = 8, max_m: int = 16) -> SkewSystem:
    g = draw(graphs(min_n=2, max_n=max_n, max_m=max_m))
    order = draw(st.permutations(sorted(g.vertices)))
    t = draw(st.integers(min_value=1, max_value=min(3, len(order) // 2)))
    sources = [[order[2 * i]] for i in range(t)]
    sinks = [[order[2 * i + 1]] for i in range(t)]
    k = draw(st.integers(min_value=0, max_value=3))
    return SkewSystem.build(g, sources, sinks, k)


class TestIsSkewSeparator:
    def test_two_routes_need_both_cut(self):
        system = _system(_TWO_ROUTES, 2)

        assert not is_skew_separator(system, [])
        assert not is_skew_separator(system, [4])
        assert is_skew_separator(system, [4, 5])

    def test_paths_to_later_sinks_are_allowed(self):
        system = _system([(0, 4), (4, 3)], 0)

        assert is_skew_separator(system, [])

    def test_terminals_may_not_be_deleted(self):
        system = _system([(1, 2)], 1)

        assert not is_skew_separator(system, [1])
        assert not is_skew_separator(system, [2])

    def test_unequal_group_counts_are_rejected(self):
        with pytest.raises(InputError):
            SkewSystem.build(MultiDigraph(3), [[0], [1]], [[2]], 1)

    def test_negative_budget_is_rejected(self):
        with pytest.raises(InputError):
            SkewSystem.build(MultiDigraph(2), [[0]], [[1]], -1)


class TestSolveSkew:
    @pytest.mark.parametrize("backend", list(SkewBackend))
    def test_two_routes_infeasible_with_one(self, backend):
        assert solve_skew(_system(_TWO_ROUTES, 1), backend) is None

    @pytest.mark.parametrize("backend", list(SkewBackend))
    def test_two_routes_feasible_with_two(self, backend):
        assert solve_skew(_system(_TWO_ROUTES, 2), backend) == frozenset({4, 5})

    @pytest.mark.parametrize("backend", list(SkewBackend))
    def test_direct_arc_into_earlier_sink_is_hopeless(self, backend):
        assert solve_skew(_system([(1, 2)], 3), backend) is None

    @pytest.mark.parametrize("backend", list(SkewBackend))
    def test_nothing_to_cut(self, backend):
        assert solve_skew(_system([(0, 4), (4, 3)], 0), backend) == frozenset()

    def test_counts_calls(self):
        stats = SolveStats()

        solve_skew(_system(_TWO_ROUTES, 2), SkewBackend.FPT, stats)
        assert stats.skew_calls == 1
        assert stats.nodes >= 1

    @PROPERTY_SETTINGS
    @given(system=skew_systems())
    def test_backends_agree(self, system):
        fpt = solve_skew(system, SkewBackend.FPT)
        brute = solve_skew(system, SkewBackend.BRUTE)

        assert (fpt is None) == (brute is None)
        if fpt is not None:
            assert len(fpt) <= system.k
            assert is_skew_separator(system, fpt)

    def test_invalid_fpt_answer_is_an_error(self, monkeypatch):
        system = SkewSystem.build(MultiDigraph(3, [(0, 2), (2, 1)]), [[0]], [[1]], 1)
        monkeypatch.setattr("scc_deletion.skew._solve_fpt", lambda *args: frozenset())

        with pytest.raises(SccDeletionError):
            solve_skew(system, SkewBackend.FPT)
        assert solve_skew(system, SkewBackend.BRUTE) == frozenset({2})

    @PROPERTY_SETTINGS
    @given(system=skew_systems())
    def test_more_budget_never_hurts(self, system):
        if solve_skew(system) is None:
            return
        looser = SkewSystem(system.g, system.sources, system.sinks, system.k + 1)

        assert solve_skew(looser) is not None
