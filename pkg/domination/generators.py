"""
Random instances and small named graphs.

Every random generator takes an explicit seed and draws from its own
`random.Random`, so the same arguments always give the same graph.
"""
import logging
import random
from itertools import combinations, permutations

from domination.errors import GraphError
from domination.graph_core import Graph, build_graph, is_connected

logger = logging.getLogger(__name__)


def random_block_graph(seed: int, n_target: int, max_clique: int) -> Graph:
    """
    Grows a block graph by gluing cliques of 2..max_clique vertices onto
    uniformly chosen existing vertices until exactly n_target vertices exist.
    """
    if n_target < 2:
        raise GraphError(f"random_block_graph needs n_target >= 2, got {n_target}")
    if max_clique < 2:
        raise GraphError(f"random_block_graph needs max_clique >= 2, got {max_clique}")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    count = 1
    while count < n_target:
        size = rng.randint(2, min(max_clique, n_target - count + 1))
        anchor = rng.randrange(count)
        clique = [anchor] + list(range(count, count + size - 1))
        edges.extend(combinations(clique, 2))
        count += size - 1
    return build_graph(n_target, edges)


def random_bounded_degree_graph(seed: int, n: int, max_deg: int) -> Graph:
    """
    A random spanning tree that respects the degree cap, plus up to n extra
    edges sampled by rejection.
    """
    if n < 1:
        raise GraphError(f"random_bounded_degree_graph needs n >= 1, got {n}")
    if max_deg < 1:
        raise GraphError(f"random_bounded_degree_graph needs max_deg >= 1, got {max_deg}")
    if max_deg == 1 and n > 2:
        raise GraphError(f"no connected graph on n={n} vertices has maximum degree 1")
    rng = random.Random(seed)
    degree = [0] * n
    edges: set[tuple[int, int]] = set()
    for v in range(1, n):
        open_slots = [u for u in range(v) if degree[u] < max_deg]
        u = rng.choice(open_slots)
        edges.add((u, v))
        degree[u] += 1
        degree[v] += 1

    for _ in range(rng.randint(0, n)):
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        pair = (min(u, v), max(u, v))
        if pair in edges or degree[u] >= max_deg or degree[v] >= max_deg:
            continue
        edges.add(pair)
        degree[u] += 1
        degree[v] += 1
    return build_graph(n, sorted(edges))


# =================================================================
# NAMED GRAPHS
# =================================================================

def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"a cycle needs n >= 3, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, combinations(range(n), 2))


def star_graph(leaves: int) -> Graph:
    """
    K_{1,leaves} with center 0.
    """
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def bowtie_graph() -> Graph:
    # Triangles 0-1-2 and 2-3-4 sharing vertex 2.
    return build_graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def connected_graph_catalog(n: int) -> list[Graph]:
    """
    All connected graphs on n vertices up to isomorphism, each in its
    lexicographically smallest labelling. Exhaustive, so keep n <= 5.
    """
    if n < 1:
        raise GraphError(f"catalog needs n >= 1, got {n}")
    if n > 5:
        raise GraphError(f"catalog enumeration is exhaustive; n={n} is too large")
    slots = list(combinations(range(n), 2))
    perms = list(permutations(range(n)))
    seen: set[tuple[tuple[int, int], ...]] = set()
    catalog = []
    for mask in range(1 << len(slots)):
        edges = [slots[i] for i in range(len(slots)) if mask >> i & 1]
        if len(edges) < n - 1 or not is_connected(build_graph(n, edges)):
            continue
        canonical = min(
            tuple(sorted((min(p[a], p[b]), max(p[a], p[b])) for a, b in edges))
            for p in perms
        )
        if canonical in seen:
            continue
        seen.add(canonical)
        catalog.append(build_graph(n, canonical))
    logger.debug("catalog n=%d: %d connected graphs", n, len(catalog))
    return catalog
