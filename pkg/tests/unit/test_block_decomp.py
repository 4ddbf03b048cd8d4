import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domination.block_decomp import (
    blocks_are_cliques,
    build_block_tree,
    compute_beo,
    decompose,
    emit_block_tree,
    is_block_graph,
    order_from_permutation,
    processing_order,
    verify_beo,
)
from domination.errors import GraphError, PreconditionError
from domination.generators import (
    bowtie_graph,
    complete_graph,
    cycle_graph,
    path_graph,
    random_block_graph,
    random_bounded_degree_graph,
    star_graph,
)
from domination.graph_core import build_graph


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_bowtie_blocks_and_cut_vertex():
    d = decompose(bowtie_graph())
    assert sorted(d.blocks) == [(0, 1, 2), (2, 3, 4)]
    assert d.cut_vertices == frozenset({2})
    assert len(d.block_membership[2]) == 2
    assert len(d.block_membership[0]) == 1


def test_decompose_preconditions():
    with pytest.raises(PreconditionError):
        decompose(complete_graph(1))
    with pytest.raises(PreconditionError):
        decompose(build_graph(4, [(0, 1), (2, 3)]))


def test_deep_path_does_not_recurse():
    d = decompose(path_graph(5000))
    assert len(d.blocks) == 4999
    assert len(d.cut_vertices) == 4998


@pytest.mark.parametrize("g, expected", [
    (bowtie_graph(), True),
    (path_graph(2), True),
    (complete_graph(1), True),
    (complete_graph(4), True),
    (star_graph(3), True),
    (cycle_graph(4), False),
    (build_graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]), False),
    (build_graph(4, [(0, 1), (2, 3)]), False),
])
def test_is_block_graph(g, expected):
    assert is_block_graph(g) is expected


def test_beo_of_path():
    g = path_graph(3)
    o = compute_beo(g, decompose(g))
    assert o.beo == (0, 1, 2)
    assert o.F == (1, 2, 2)
    assert o.rank == (0, 1, 2)
    assert o.last == 2


def test_beo_requires_block_graph():
    g = cycle_graph(4)
    with pytest.raises(PreconditionError):
        compute_beo(g, decompose(g))


def test_block_tree_of_path():
    g = path_graph(3)
    t = build_block_tree(g, compute_beo(g, decompose(g)))
    assert t.root == 2
    assert t.parent == (1, 2, 2)
    assert t.level == (2, 1, 0)
    assert t.order == (0, 1, 2)
    assert emit_block_tree(t) == "0 1 2\n1 2 1\n2 2 0\n"


def test_siblings_share_a_block():
    k4 = complete_graph(4)
    t = build_block_tree(k4, compute_beo(k4, decompose(k4)))
    assert t.root == 3
    assert t.children[3] == (0, 1, 2)
    assert t.siblings(k4, 0) == (1, 2)
    assert t.siblings(k4, 3) == ()

    star = star_graph(3)
    t = build_block_tree(star, compute_beo(star, decompose(star)))
    assert t.siblings(star, t.order[0]) == ()


def test_block_tree_rejects_bad_parent_map():
    g = path_graph(3)
    o = order_from_permutation(g, [2, 1, 0])
    bad = o.__class__(beo=o.beo, F=(1, 1, 1), rank=o.rank)
    with pytest.raises(PreconditionError):
        build_block_tree(g, bad)


def test_order_from_permutation_rejects_non_permutation():
    g = path_graph(3)
    with pytest.raises(GraphError):
        order_from_permutation(g, [0, 0, 1])
    with pytest.raises(GraphError):
        order_from_permutation(g, [0, 1])


def test_verify_beo():
    g = path_graph(4)
    assert verify_beo(g, [0, 1, 2, 3])
    # 1 comes first and its later neighbors 0 and 2 are not adjacent.
    assert not verify_beo(g, [1, 0, 2, 3])


def test_processing_order_rejects_cycle():
    with pytest.raises(PreconditionError):
        processing_order(cycle_graph(5))


@settings(deadline=None, max_examples=60)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 60), clique=st.integers(2, 5))
def test_random_block_graph_pipeline(seed, n, clique):
    g = random_block_graph(seed, n, clique)
    d = decompose(g)
    assert blocks_are_cliques(g, d)

    o = compute_beo(g, d)
    assert sorted(o.beo) == list(range(n))
    assert verify_beo(g, o.beo)

    _, tree, order = processing_order(g)
    assert verify_beo(g, tree.order)
    assert order.F == order_from_permutation(g, tree.order).F
    assert order.beo[-1] == tree.root
    assert all(tree.level[v] == tree.level[tree.parent[v]] + 1 for v in range(n) if v != tree.root)


@settings(deadline=None, max_examples=100)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 30), clique=st.integers(2, 5))
def test_one_block_per_pair_hangs_on_the_cut_vertex(seed, n, clique):
    g = random_block_graph(seed, n, clique)
    d = decompose(g)
    o = compute_beo(g, d)
    for c in d.cut_vertices:
        members = d.block_membership[c]
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                assert any(all(o.F[x] == c for x in d.blocks[k] if x != c) for k in (a, b))


@settings(deadline=None, max_examples=100)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 14), clique=st.integers(2, 5))
def test_forward_neighborhoods_nest(seed, n, clique):
    g = random_block_graph(seed, n, clique)
    _, _, order = processing_order(g)
    rank = order.rank

    def forward(v, floor):
        return {x for x in g.adjacency[v] + (v,) if rank[x] >= floor}

    for v in range(n):
        for w in g.adjacency[v]:
            if rank[w] > rank[v]:
                assert forward(v, rank[v]) <= forward(w, rank[v])


def test_bowtie_cut_vertex_is_internal():
    g = bowtie_graph()
    _, tree, _ = processing_order(g)
    assert tree.root != 2
    assert tree.children[2] == (0, 1)


@settings(deadline=None, max_examples=60)
@given(seed=st.integers(0, 10_000), n=st.integers(3, 40), clique=st.integers(2, 5))
def test_cut_vertices_are_internal(seed, n, clique):
    g = random_block_graph(seed, n, clique)
    d, tree, _ = processing_order(g)
    for c in d.cut_vertices:
        assert tree.children[c]


@settings(deadline=None, max_examples=60)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 25), cap=st.integers(2, 5))
def test_blocks_match_networkx(seed, n, cap):
    g = random_bounded_degree_graph(seed, n, cap)
    h = to_nx(g)
    d = decompose(g)
    assert {frozenset(b) for b in d.blocks} == {frozenset(c) for c in nx.biconnected_components(h)}
    assert d.cut_vertices == frozenset(nx.articulation_points(h))
    expected = all(
        h.subgraph(c).number_of_edges() == len(c) * (len(c) - 1) // 2
        for c in nx.biconnected_components(h)
    )
    assert is_block_graph(g) is expected
