import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domination.errors import InvalidSolutionError, LiftError, PreconditionError
from domination.exact_oracles import (
    OracleBudget,
    Problem,
    is_dominating_set,
    is_paired_dominating,
    is_vertex_cover,
    min_paired_dominating,
    min_semipaired_dominating,
    minimum_solutions,
    optimum_size,
)
from domination.generators import (
    bowtie_graph,
    complete_graph,
    cycle_graph,
    path_graph,
    random_bounded_degree_graph,
    star_graph,
)
from domination.graph_core import build_graph, is_bipartite, vertex_set
from domination.reductions import (
    GadgetKind,
    apx_reduction,
    build_gadget,
    degree_split,
    dominating_from_semipd,
    emit_role_map,
    gp4,
    gp4_lift_paired,
    gp4_project_paired,
    gp4_semipd_witness,
    gp5,
    gp5_lift_semipd,
    gp5_paired_witness,
    gp5_project_semipd,
    is_split_partition,
    lift_semipd_degree_split,
    project_semipd_degree_split,
    semipd_from_dominating,
    semipd_from_vertex_cover,
    split_reduction,
    split_sides,
    vertex_cover_from_semipd,
)
from domination.semipaired_solver import SemipairedSolution, verify_solution

BUDGET = OracleBudget()


# --- GP4 / GP5 ---

def test_gp4_of_single_vertex_is_p5():
    gg = gp4(complete_graph(1))
    assert gg.graph == path_graph(5)
    assert optimum_size(Problem.SPD, gg.graph, BUDGET) == 2


def test_gp4_counts():
    gg = gp4(cycle_graph(4))
    assert gg.graph.n == 20
    assert gg.graph.m == 20
    assert gg.role("z", 3) == 19


def test_gp4_witness_and_paired_lift():
    gg = gp4(path_graph(2))
    witness = gp4_semipd_witness(gg)
    assert len(witness) == 4
    assert verify_solution(gg.graph, witness)

    lifted = gp4_lift_paired(gg, min_paired_dominating(gg.source, BUDGET))
    assert len(lifted) == 6
    assert is_paired_dominating(gg.graph, lifted)
    assert optimum_size(Problem.PD, gg.graph, BUDGET) == 6


def test_gp4_lift_rejects_non_paired_set():
    gg = gp4(path_graph(3))
    semipaired_only = SemipairedSolution.from_pairs(3, [(0, 2)])
    with pytest.raises(InvalidSolutionError):
        gp4_lift_paired(gg, semipaired_only)


def test_gp5_counts_and_single_branch():
    assert gp5(cycle_graph(4)).graph.n == 24
    branch = gp5(complete_graph(1)).graph
    assert list(branch.edges()) == [(0, 3), (1, 2), (2, 3), (3, 4), (4, 5)]


def test_gp5_witness_and_semipaired_lift():
    gg = gp5(path_graph(2))
    witness = gp5_paired_witness(gg)
    assert len(witness) == 8
    assert is_paired_dominating(gg.graph, witness)

    lifted = gp5_lift_semipd(gg, min_semipaired_dominating(gg.source, BUDGET))
    assert len(lifted) == 6
    assert verify_solution(gg.graph, lifted)
    assert optimum_size(Problem.SPD, gg.graph, BUDGET) == 6


@pytest.mark.parametrize("source", [path_graph(3), cycle_graph(3)])
def test_gp4_pull_back_of_every_paired_optimum(source):
    gg = gp4(source)
    best = min_paired_dominating(source, BUDGET)
    for pd2 in minimum_solutions(Problem.PD, gg.graph, BUDGET):
        projected = gp4_project_paired(gg, pd2)
        assert is_paired_dominating(source, projected)
        assert len(projected) <= len(pd2) - 2 * source.n
        assert len(projected) == len(best)


@pytest.mark.parametrize("source", [path_graph(3), cycle_graph(3)])
def test_gp5_pull_back_of_every_semipaired_optimum(source):
    gg = gp5(source)
    best = min_semipaired_dominating(source, BUDGET)
    for s2 in minimum_solutions(Problem.SPD, gg.graph, BUDGET):
        projected = gp5_project_semipd(gg, s2)
        assert verify_solution(source, projected)
        assert len(projected) <= len(s2) - 2 * source.n
        assert len(projected) == len(best)


def test_gp4_pull_back_of_inflated_set():
    gg = gp4(path_graph(2))
    # Both sources pair into their paths, which also hold x and y.
    pairs = [(0, 2), (1, 3), (4, 6), (5, 7)]
    pd2 = SemipairedSolution.from_pairs(gg.graph.n, pairs)
    assert is_paired_dominating(gg.graph, pd2)
    projected = gp4_project_paired(gg, pd2)
    assert projected.pairs == ((0, 1),)


def test_pull_backs_reject_bad_input():
    gg = gp4(path_graph(3))
    with pytest.raises(InvalidSolutionError):
        gp4_project_paired(gg, gp4_semipd_witness(gg))
    with pytest.raises(InvalidSolutionError):
        gp5_project_semipd(gp5(path_graph(3)), SemipairedSolution.from_pairs(18, [(0, 1)]))
    with pytest.raises(PreconditionError):
        gp5_project_semipd(gp4(path_graph(3)), gp4_semipd_witness(gg))


def test_pull_back_needs_two_source_vertices():
    gg = gp4(complete_graph(1))
    with pytest.raises(PreconditionError):
        gp4_project_paired(gg, min_paired_dominating(gg.graph, BUDGET))


def test_gadgets_need_connected_sources():
    disconnected = build_graph(4, [(0, 1), (2, 3)])
    for build in (gp4, gp5, split_reduction, apx_reduction):
        with pytest.raises(PreconditionError):
            build(disconnected)


def test_maps_check_the_gadget_kind():
    with pytest.raises(PreconditionError):
        gp5_paired_witness(gp4(path_graph(2)))


# --- SPLIT ---

def test_split_of_single_edge():
    gg = split_reduction(path_graph(2))
    assert gg.graph.n == 8
    assert is_split_partition(gg.graph, *split_sides(gg))

    s = semipd_from_dominating(gg, vertex_set(gg.source, [0]))
    assert s.pairs == ((0, 4),)
    assert verify_solution(gg.graph, s)
    assert dominating_from_semipd(gg, s).sorted() == (0,)
    assert optimum_size(Problem.SPD, gg.graph, BUDGET) == 2


def test_split_of_path_pulls_back_optima():
    gg = split_reduction(path_graph(3))
    assert gg.graph.n == 12
    assert optimum_size(Problem.SPD, gg.graph, BUDGET) == 2
    for s in minimum_solutions(Problem.SPD, gg.graph, BUDGET):
        d = dominating_from_semipd(gg, s)
        assert is_dominating_set(gg.source, d)
        assert 2 * len(d) <= len(s)


def test_split_rejects_trivial_graph():
    with pytest.raises(PreconditionError):
        split_reduction(complete_graph(1))


def test_split_maps_reject_bad_input():
    gg = split_reduction(path_graph(3))
    with pytest.raises(InvalidSolutionError):
        semipd_from_dominating(gg, vertex_set(gg.source, [0]))
    with pytest.raises(InvalidSolutionError):
        dominating_from_semipd(gg, SemipairedSolution.from_pairs(12, [(0, 1)]))


@settings(deadline=None, max_examples=40)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 12), cap=st.integers(2, 5))
def test_split_property(seed, n, cap):
    gg = split_reduction(random_bounded_degree_graph(seed, n, cap))
    assert gg.graph.n == 4 * n
    assert is_split_partition(gg.graph, *split_sides(gg))


# --- APX4 ---

def test_apx_of_single_edge():
    gg = apx_reduction(path_graph(2))
    assert gg.graph.n == 14
    assert is_bipartite(gg.graph)

    s = semipd_from_vertex_cover(gg, vertex_set(gg.source, [0]))
    assert len(s) == 6
    assert verify_solution(gg.graph, s)
    assert vertex_cover_from_semipd(gg, s).sorted() == (0,)
    assert optimum_size(Problem.SPD, gg.graph, BUDGET) == 6


def test_apx_pull_back_of_inflated_set():
    gg = apx_reduction(path_graph(2))
    pairs = [(0, 2), (1, 3), (6, 10), (7, 11), (8, 12)]
    s = SemipairedSolution.from_pairs(gg.graph.n, pairs)
    assert verify_solution(gg.graph, s)
    vc = vertex_cover_from_semipd(gg, s)
    assert is_vertex_cover(gg.source, vc)
    assert len(vc) <= 3


APX_BUDGET = OracleBudget(max_n=30)


@pytest.mark.parametrize("source, n, tau", [(path_graph(3), 22, 1), (path_graph(4), 30, 2), (cycle_graph(3), 24, 2)])
def test_apx_matches_cover_number(source, n, tau):
    gg = apx_reduction(source)
    assert gg.graph.n == n
    assert optimum_size(Problem.SPD, gg.graph, APX_BUDGET) == 2 * tau + 2 * source.n
    s = min_semipaired_dominating(gg.graph, APX_BUDGET)
    assert len(vertex_cover_from_semipd(gg, s)) == tau


def test_apx_rejects_high_degree():
    with pytest.raises(PreconditionError):
        apx_reduction(star_graph(4))


def test_apx_rejects_non_cover():
    gg = apx_reduction(path_graph(3))
    with pytest.raises(InvalidSolutionError):
        semipd_from_vertex_cover(gg, vertex_set(gg.source, [0]))


@settings(deadline=None, max_examples=40)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 12))
def test_apx_structure(seed, n):
    g = random_bounded_degree_graph(seed, n, 3)
    gg = apx_reduction(g)
    assert gg.graph.n == 6 * n + 2 * g.m
    assert gg.graph.max_degree() <= 4
    assert is_bipartite(gg.graph)


# --- DEGSPLIT ---

def test_degree_split_of_star():
    gg = degree_split(star_graph(4))
    g2 = gg.graph
    assert g2.n == 11
    assert g2.max_degree() <= 3
    r = {role: gg.role(role, 0) for role in ("v_1", "v_2", "v_3", "v_4", "v_5", "v_6", "v_7")}
    assert set(g2.neighbors(r["v_7"])) == {r["v_3"], r["v_4"]}
    inner = {r[x] for x in ("v_2", "v_3", "v_4", "v_5", "v_7")}
    gadget = set(r.values())
    for x in inner:
        assert set(g2.neighbors(x)) <= gadget
    assert set(g2.neighbors(r["v_1"])) == {1, 2, r["v_2"]}
    assert set(g2.neighbors(r["v_6"])) == {3, 4, r["v_5"]}
    assert optimum_size(Problem.SPD, g2, BUDGET) == 4


def test_degree_split_without_degree_four_is_identity():
    g = path_graph(4)
    gg = degree_split(g)
    assert gg.graph == g
    s = min_semipaired_dominating(g, BUDGET)
    assert lift_semipd_degree_split(g, gg, s) == s
    assert project_semipd_degree_split(g, gg, s) == s


def test_degree_split_rejects_degree_five():
    with pytest.raises(PreconditionError):
        degree_split(star_graph(5))


def test_lift_and_project_on_star():
    g = star_graph(4)
    gg = degree_split(g)
    s = SemipairedSolution.from_pairs(5, [(0, 1)])
    lifted = lift_semipd_degree_split(g, gg, s)
    assert len(lifted) == 4
    assert verify_solution(gg.graph, lifted)
    assert (gg.role("v_4", 0), gg.role("v_6", 0)) in lifted.pairs

    projected = project_semipd_degree_split(g, gg, lifted)
    assert len(projected) <= 2
    assert verify_solution(g, projected)


def test_project_every_optimum_of_split_star():
    g = star_graph(4)
    gg = degree_split(g)
    for s2 in minimum_solutions(Problem.SPD, gg.graph, BUDGET):
        projected = project_semipd_degree_split(g, gg, s2)
        assert verify_solution(g, projected)
        assert len(projected) <= len(s2) - 2


def test_lift_rejects_invalid_source_set():
    g = star_graph(4)
    with pytest.raises(InvalidSolutionError):
        lift_semipd_degree_split(g, degree_split(g), SemipairedSolution.from_pairs(5, [(1, 2)]))


def test_lift_bridges_a_pair_through_the_split_vertex():
    bowtie = bowtie_graph()
    gg = degree_split(bowtie)
    # 0 and 4 end up on opposite ends of the gadget of 2.
    s = SemipairedSolution.from_pairs(5, [(0, 4)])
    lifted = lift_semipd_degree_split(bowtie, gg, s)
    assert verify_solution(gg.graph, lifted)
    assert len(lifted) == 4
    r = {role: gg.role(role, 2) for role in ("v_1", "v_3", "v_4", "v_6")}
    assert lifted.pairs == ((r["v_1"], r["v_3"]), (r["v_4"], r["v_6"]))


def test_lift_raises_when_splitting_costs_more():
    # The pendants on 0 and 4 force a vertex near each end of the gadget of 2.
    g = build_graph(7, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4), (0, 5), (4, 6)])
    gg = degree_split(g)
    assert gg.graph.n == 13
    s = SemipairedSolution.from_pairs(7, [(0, 4)])
    assert optimum_size(Problem.SPD, g, BUDGET) == 2
    assert optimum_size(Problem.SPD, gg.graph, BUDGET) == 6
    with pytest.raises(LiftError):
        lift_semipd_degree_split(g, gg, s)


# --- dispatch and role maps ---

@pytest.mark.parametrize("kind", list(GadgetKind))
def test_build_gadget_tags_output(kind):
    gg = build_gadget(kind, path_graph(3))
    assert gg.tag is kind
    assert gg.origin_n == 3


def test_role_map_lists_vertices_in_id_order():
    lines = emit_role_map(degree_split(star_graph(4))).splitlines()
    assert lines[:3] == ["v 0 0", "v_1 0 0", "v 1 1"]
    assert lines[-1] == "v_7 0 10"
    assert emit_role_map(gp4(complete_graph(1))).splitlines() == [
        "v 0 0", "w 0 1", "x 0 2", "y 0 3", "z 0 4",
    ]
