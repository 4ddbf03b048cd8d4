"""
Blocks, cut vertices, block-elimination orderings (BEO) and the block tree T(G).

The pipeline for a block graph is

    decompose -> compute_beo -> build_block_tree -> order_from_permutation(tree.order)

and the last step yields the reverse-BFS ordering the block-graph solver walks.
"""
import heapq
import logging
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from domination.errors import GraphError, PreconditionError
from domination.graph_core import Graph, is_connected

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[tuple[int, ...], ...]
    cut_vertices: frozenset[int]
    block_membership: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class BlockOrder:
    """
    beo[i] is the vertex with rank i; rank is the inverse permutation.
    F[v] is the highest-ranked neighbor of v, and F of the last vertex is itself.
    """
    beo: tuple[int, ...]
    F: tuple[int, ...]
    rank: tuple[int, ...]

    @property
    def last(self) -> int:
        return self.beo[-1]


@dataclass(frozen=True)
class BlockTree:
    """
    T(G) rooted at the last BEO vertex; parent[root] == root.
    `order` is the reverse of the BFS ordering (children visited in ascending id).
    """
    root: int
    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    level: tuple[int, ...]
    order: tuple[int, ...]

    def siblings(self, g: Graph, v: int) -> tuple[int, ...]:
        """
        Children of parent(v) that share a block with v.
        """
        if v == self.root:
            return ()
        return tuple(w for w in self.children[self.parent[v]] if w != v and g.has_edge(v, w))


# =================================================================
# 1. BLOCKS AND CUT VERTICES
# =================================================================

def decompose(g: Graph) -> BlockDecomposition:
    """
    Lowpoint DFS with an edge stack, iterative so deep paths do not hit
    the recursion limit. Each popped edge group is one block.
    """
    if g.n < 2:
        raise PreconditionError(f"decomposition needs n >= 2, got n={g.n}")
    n = g.n
    adj = g.adjacency
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    cursor = [0] * n
    edge_stack: list[tuple[int, int]] = []
    blocks: list[tuple[int, ...]] = []

    disc[0] = 0
    clock = 1
    stack = [0]
    while stack:
        u = stack[-1]
        i = cursor[u]
        if i < len(adj[u]):
            cursor[u] = i + 1
            w = adj[u][i]
            if disc[w] == -1:
                parent[w] = u
                disc[w] = low[w] = clock
                clock += 1
                edge_stack.append((u, w))
                stack.append(w)
            elif w != parent[u] and disc[w] < disc[u]:
                # Back edge to an ancestor.
                if disc[w] < low[u]:
                    low[u] = disc[w]
                edge_stack.append((u, w))
            continue

        stack.pop()
        p = parent[u]
        if p == -1:
            continue
        if low[u] < low[p]:
            low[p] = low[u]
        if low[u] >= disc[p]:
            members = set()
            while True:
                a, b = edge_stack.pop()
                members.add(a)
                members.add(b)
                if a == p and b == u:
                    break
            blocks.append(tuple(sorted(members)))
    if -1 in disc:
        raise PreconditionError("decomposition needs a connected graph")

    membership: list[list[int]] = [[] for _ in range(n)]
    for index, block in enumerate(blocks):
        for v in block:
            membership[v].append(index)
    cut_vertices = frozenset(v for v in range(n) if len(membership[v]) >= 2)

    logger.debug("decomposed n=%d into %d blocks, %d cut vertices", n, len(blocks), len(cut_vertices))
    return BlockDecomposition(
        blocks=tuple(blocks),
        cut_vertices=cut_vertices,
        block_membership=tuple(tuple(ms) for ms in membership),
    )


def blocks_are_cliques(g: Graph, d: BlockDecomposition) -> bool:
    # Edges partition over blocks, so all blocks are cliques iff the clique
    # edge counts add up to m.
    return sum(len(b) * (len(b) - 1) // 2 for b in d.blocks) == g.m


def is_block_graph(g: Graph) -> bool:
    if g.n == 1:
        return True
    if g.n == 0 or not is_connected(g):
        return False
    return blocks_are_cliques(g, decompose(g))


# =================================================================
# 2. BLOCK-ELIMINATION ORDERING
# =================================================================

def compute_beo(g: Graph, d: BlockDecomposition) -> BlockOrder:
    """
    Repeatedly peels the end block with the smallest minimum vertex id,
    numbering its non-cut vertices in ascending id, then numbers the final block.
    """
    if not blocks_are_cliques(g, d):
        raise PreconditionError("graph is not a block graph")

    blocks = d.blocks
    live_blocks = [len(ms) for ms in d.block_membership]
    cut_count = [sum(1 for v in b if live_blocks[v] >= 2) for b in blocks]
    removed = [False] * len(blocks)
    remaining = len(blocks)

    heap = [(b[0], index) for index, b in enumerate(blocks) if cut_count[index] == 1]
    heapq.heapify(heap)

    beo: list[int] = []
    while remaining > 1:
        _, index = heapq.heappop(heap)
        if removed[index]:
            continue
        block = blocks[index]
        x = next(v for v in block if live_blocks[v] >= 2)
        beo.extend(v for v in block if v != x)
        removed[index] = True
        remaining -= 1

        live_blocks[x] -= 1
        if live_blocks[x] == 1:
            # x is no longer a cut vertex of the remaining graph.
            other = next(b for b in d.block_membership[x] if not removed[b])
            cut_count[other] -= 1
            if cut_count[other] == 1:
                heapq.heappush(heap, (blocks[other][0], other))

    final = next(index for index, gone in enumerate(removed) if not gone)
    beo.extend(blocks[final])
    return order_from_permutation(g, beo)


def order_from_permutation(g: Graph, ordering: Sequence[int]) -> BlockOrder:
    """
    Wraps a vertex permutation as a BlockOrder, deriving rank and F.
    Does not check the BEO property; see verify_beo.
    """
    rank = _rank_of(g, ordering)
    F = []
    for v in range(g.n):
        best = v
        for w in g.adjacency[v]:
            if rank[w] > rank[best]:
                best = w
        F.append(best)
    last = ordering[-1]
    F[last] = last
    return BlockOrder(beo=tuple(ordering), F=tuple(F), rank=tuple(rank))


def _rank_of(g: Graph, ordering: Sequence[int]) -> list[int]:
    if len(ordering) != g.n:
        raise GraphError(f"ordering has {len(ordering)} entries, expected {g.n}")
    rank = [-1] * g.n
    for position, v in enumerate(ordering):
        if not 0 <= v < g.n or rank[v] != -1:
            raise GraphError(f"ordering is not a permutation of [0, {g.n}): bad entry {v}")
        rank[v] = position
    return rank


def verify_beo(g: Graph, ordering: Sequence[int]) -> bool:
    """
    For every vertex, its higher-ranked neighbors must be pairwise adjacent.
    O(sum of deg^2); meant for test-scale graphs.
    """
    rank = _rank_of(g, ordering)
    sets = g.neighbor_sets
    for v in range(g.n):
        later = [w for w in g.adjacency[v] if rank[w] > rank[v]]
        for i, a in enumerate(later):
            for b in later[i + 1:]:
                if b not in sets[a]:
                    return False
    return True


# =================================================================
# 3. BLOCK TREE T(G)
# =================================================================

def build_block_tree(g: Graph, o: BlockOrder) -> BlockTree:
    n = g.n
    root = o.last
    children: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        if v == root:
            continue
        f = o.F[v]
        if o.rank[f] <= o.rank[v] or not g.has_edge(v, f):
            raise PreconditionError(f"F({v})={f} is not a higher-ranked neighbor of {v}")
        children[f].append(v)

    level = [0] * n
    bfs = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for c in children[u]:
            level[c] = level[u] + 1
            bfs.append(c)
            queue.append(c)
    if len(bfs) != n:
        raise PreconditionError("F does not induce a spanning tree")

    return BlockTree(
        root=root,
        parent=o.F,
        children=tuple(tuple(cs) for cs in children),
        level=tuple(level),
        order=tuple(reversed(bfs)),
    )


def emit_block_tree(t: BlockTree) -> str:
    return "".join(f"{v} {t.parent[v]} {t.level[v]}\n" for v in range(len(t.parent)))


def processing_order(g: Graph) -> tuple[BlockDecomposition, BlockTree, BlockOrder]:
    """
    Full pipeline for a connected block graph: decomposition, block tree, and
    the reverse-BFS ordering wrapped as a BlockOrder.
    """
    d = decompose(g)
    tree = build_block_tree(g, compute_beo(g, d))
    # In reverse-BFS rank every neighbor of v is a child, a sibling or the
    # parent, and the parent outranks the rest, so F is the tree parent.
    rank = [0] * g.n
    for position, v in enumerate(tree.order):
        rank[v] = position
    return d, tree, BlockOrder(beo=tree.order, F=tree.parent, rank=tuple(rank))
