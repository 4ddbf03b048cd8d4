from itertools import combinations, count
from types import SimpleNamespace

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domination import exact_oracles
from domination.errors import BudgetExceeded, GraphError, PreconditionError
from domination.exact_oracles import (
    OracleBudget,
    Problem,
    feasible_at_size,
    has_semipairing,
    is_paired_dominating,
    is_vertex_cover,
    min_dominating_set,
    min_paired_dominating,
    min_semipaired_dominating,
    min_vertex_cover,
    minimum_solutions,
    optimum_size,
    pairings,
    solve_exact,
)
from domination.generators import complete_graph, cycle_graph, path_graph, random_bounded_degree_graph, star_graph
from domination.graph_core import build_graph, vertex_set
from domination.reductions import gp4
from domination.semipaired_solver import SemipairedSolution, verify_solution

BUDGET = OracleBudget()


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_star_is_dominated_by_its_center():
    d = min_dominating_set(star_graph(4), BUDGET)
    assert d.sorted() == (0,)


def test_path_domination_variants():
    p6 = path_graph(6)
    assert min_dominating_set(p6, BUDGET).sorted() == (1, 4)
    assert len(min_semipaired_dominating(p6, BUDGET)) == 4
    assert len(min_paired_dominating(p6, BUDGET)) == 4


def test_cycle_of_four():
    c4 = cycle_graph(4)
    assert min_paired_dominating(c4, BUDGET).pairs == ((0, 1),)
    assert optimum_size(Problem.SPD, c4, BUDGET) == 2


def test_gp4_of_cycle_hits_two_fifths():
    g = gp4(cycle_graph(4)).graph
    assert optimum_size(Problem.SPD, g, BUDGET) == 8


@pytest.mark.parametrize("g, expected", [
    (path_graph(2), 1),
    (path_graph(3), 1),
    (cycle_graph(5), 3),
    (complete_graph(4), 3),
])
def test_vertex_cover_sizes(g, expected):
    vc = min_vertex_cover(g, BUDGET)
    assert len(vc) == expected
    assert is_vertex_cover(g, vc)


def test_vertex_cover_of_edgeless_graph_is_empty():
    assert len(min_vertex_cover(build_graph(3, []), BUDGET)) == 0


def test_solve_exact_dispatches():
    g = path_graph(2)
    assert len(solve_exact(Problem.DOM, g, BUDGET)) == 1
    assert solve_exact(Problem.SPD, g, BUDGET).pairs == ((0, 1),)


# --- pairings ---

def test_semipairing_needs_distance_two():
    p6 = path_graph(6)
    assert has_semipairing(p6, vertex_set(p6, [1, 4])) is None
    assert has_semipairing(p6, vertex_set(p6, [1, 3])).pairs == ((1, 3),)


def test_pairing_needs_edges():
    p6 = path_graph(6)
    assert list(pairings(p6, vertex_set(p6, [1, 3]), within=1)) == []
    assert [s.pairs for s in pairings(p6, vertex_set(p6, [1, 2, 4, 5]), within=1)] == [((1, 2), (4, 5))]


def test_pairings_enumerates_every_matching():
    k4 = complete_graph(4)
    found = [s.pairs for s in pairings(k4, vertex_set(k4, range(4)))]
    assert found == [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]


def test_pairings_reject_odd_sets():
    g = path_graph(3)
    with pytest.raises(GraphError):
        list(pairings(g, vertex_set(g, [0, 1, 2])))


def test_is_paired_dominating_requires_adjacent_pairs():
    p3 = path_graph(3)
    s = SemipairedSolution.from_pairs(3, [(0, 2)])
    assert verify_solution(p3, s)
    assert not is_paired_dominating(p3, s)


# --- search surface ---

def test_feasible_at_size():
    p6 = path_graph(6)
    assert feasible_at_size(Problem.SPD, p6, 2, BUDGET) is None
    assert feasible_at_size(Problem.SPD, p6, 3, BUDGET) is None
    assert verify_solution(p6, feasible_at_size(Problem.SPD, p6, 4, BUDGET))


def test_minimum_solutions_lists_all_optima():
    assert [d.sorted() for d in minimum_solutions(Problem.DOM, path_graph(3), BUDGET)] == [(1,)]
    spd = list(minimum_solutions(Problem.SPD, cycle_graph(4), BUDGET))
    assert len(spd) == 6
    assert all(verify_solution(cycle_graph(4), s) for s in spd)


def test_isolated_vertex_blocks_pairing_problems():
    g = build_graph(3, [(0, 1)])
    assert min_dominating_set(g, BUDGET).sorted() == (0, 2)
    with pytest.raises(PreconditionError):
        min_semipaired_dominating(g, BUDGET)
    with pytest.raises(PreconditionError):
        min_paired_dominating(g, BUDGET)


# --- budgets ---

def test_budget_caps_graph_size():
    with pytest.raises(BudgetExceeded) as err:
        min_dominating_set(path_graph(6), OracleBudget(max_n=5))
    assert err.value.cap == "max_n"
    assert err.value.limit == 5


def test_budget_caps_subset_size():
    with pytest.raises(BudgetExceeded) as err:
        min_dominating_set(path_graph(6), OracleBudget(max_subset_size=1))
    assert err.value.cap == "max_subset_size"


def test_budget_caps_wall_clock(monkeypatch):
    ticks = count()
    # Every clock read is one second later than the last.
    monkeypatch.setattr(exact_oracles, "time", SimpleNamespace(monotonic=lambda: float(next(ticks))))
    monkeypatch.setattr(exact_oracles, "_CLOCK_STRIDE", 1)
    with pytest.raises(BudgetExceeded) as err:
        min_semipaired_dominating(path_graph(8), OracleBudget(time_limit=0.5))
    assert err.value.cap == "time_limit"
    assert err.value.limit == 0.5


@pytest.mark.parametrize("kwargs", [{"max_n": 0}, {"max_subset_size": 0}, {"time_limit": 0}])
def test_budget_rejects_non_positive_caps(kwargs):
    with pytest.raises(ValueError):
        OracleBudget(**kwargs)


# --- cross-checks ---

def _brute_dominating(h: nx.Graph) -> int:
    nodes = list(h.nodes)
    for k in range(1, len(nodes) + 1):
        if any(nx.is_dominating_set(h, c) for c in combinations(nodes, k)):
            return k
    return len(nodes)


@settings(deadline=None, max_examples=60)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 9), cap=st.integers(2, 4))
def test_domination_numbers_agree_with_brute_force(seed, n, cap):
    g = random_bounded_degree_graph(seed, n, cap)
    dom = optimum_size(Problem.DOM, g, BUDGET)
    spd = optimum_size(Problem.SPD, g, BUDGET)
    pd = optimum_size(Problem.PD, g, BUDGET)
    assert dom == _brute_dominating(to_nx(g))
    assert dom <= spd <= pd <= 2 * dom
    assert spd % 2 == 0


@settings(deadline=None, max_examples=60)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 9), cap=st.integers(2, 4))
def test_vertex_cover_agrees_with_brute_force(seed, n, cap):
    g = random_bounded_degree_graph(seed, n, cap)
    expected = next(
        k for k in range(g.n + 1)
        if any(is_vertex_cover(g, vertex_set(g, c)) for c in combinations(range(g.n), k))
    )
    assert optimum_size(Problem.VC, g, BUDGET) == expected
