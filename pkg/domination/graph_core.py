"""
Simple undirected graphs in canonical adjacency-list form.

Vertex ids are 0-based everywhere. A Graph is immutable once built; every
neighbor list is a strictly ascending tuple, so two graphs with the same edges
compare (and hash) equal.
"""
import logging
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Union

from domination.errors import GraphError, ParseError

logger = logging.getLogger(__name__)

# Distance reported for vertices BFS cannot reach.
UNREACHABLE = -1


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]

    @cached_property
    def m(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(nbrs) for nbrs in self.adjacency)

    def neighbors(self, v: int) -> tuple[int, ...]:
        check_vertex(self, v)
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        check_vertex(self, v)
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(nbrs) for nbrs in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.adjacency[u]
        i = bisect_left(nbrs, v)
        return i < len(nbrs) and nbrs[i] == v

    def within_two(self, u: int, v: int) -> bool:
        """
        True iff 1 <= d(u, v) <= 2.
        """
        if u == v:
            return False
        sets = self.neighbor_sets
        return v in sets[u] or not sets[u].isdisjoint(sets[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        """
        Edges (u, v) with u < v, in lexicographic order.
        """
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs[bisect_left(nbrs, u + 1):]:
                yield (u, v)


@dataclass(frozen=True)
class VertexSet:
    members: frozenset[int]
    n: int

    def __post_init__(self):
        for v in self.members:
            if not 0 <= v < self.n:
                raise GraphError(f"vertex {v} out of range for n={self.n}")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __contains__(self, v: object) -> bool:
        return v in self.members

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))


def vertex_set(g: Graph, ids: Iterable[int]) -> VertexSet:
    return VertexSet(frozenset(ids), g.n)


def check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """
    Builds the canonical Graph on vertices 0..n-1.
    Duplicate pairs collapse to one edge; self-loops and out-of-range ids are rejected.
    """
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    lists: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an id outside [0, {n})", pair=(u, v))
        if u == v:
            raise GraphError(f"edge ({u}, {v}) is a self-loop", pair=(u, v))
        lists[u].append(v)
        lists[v].append(u)
    adjacency = tuple(tuple(sorted(set(nbrs))) for nbrs in lists)
    return Graph(n, adjacency)


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return False
    dist = bfs_distances(g, 0)
    return UNREACHABLE not in dist


def has_isolated_vertex(g: Graph) -> bool:
    return any(len(nbrs) == 0 for nbrs in g.adjacency)


def closed_neighborhood(g: Graph, v: int) -> VertexSet:
    check_vertex(g, v)
    return VertexSet(frozenset(g.adjacency[v]) | {v}, g.n)


def dominated_by(g: Graph, members: Iterable[int]) -> set[int]:
    """
    N[S] for a vertex collection S.
    """
    covered: set[int] = set()
    for v in members:
        covered.add(v)
        covered.update(g.adjacency[v])
    return covered


def bfs_distances(g: Graph, src: int) -> list[int]:
    check_vertex(g, src)
    dist = [UNREACHABLE] * g.n
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if dist[w] == UNREACHABLE:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def is_bipartite(g: Graph) -> bool:
    color = [UNREACHABLE] * g.n
    for start in range(g.n):
        if color[start] != UNREACHABLE:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if color[w] == UNREACHABLE:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return False
    return True


# =================================================================
# EDGE-LIST TEXT FORMAT
# =================================================================
# Header `n m`, then exactly m lines `u v` with u < v. Ids are 0-based ASCII decimals.

def is_decimal(tok: str) -> bool:
    return tok.isascii() and tok.isdigit()


def parse_edge_list(text: str) -> Graph:
    lines = text.splitlines()
    # Trailing blank lines are tolerated; blank lines elsewhere are not.
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError(1, "missing header `n m`")

    header = lines[0].split()
    if len(header) != 2 or not all(is_decimal(tok) for tok in header):
        raise ParseError(1, f"malformed header {lines[0]!r}, expected `n m`")
    n, m = int(header[0]), int(header[1])

    body = lines[1:]
    if len(body) != m:
        raise ParseError(len(lines), f"header declares {m} edges, found {len(body)}")

    edges = []
    seen: dict[tuple[int, int], int] = {}
    for offset, line in enumerate(body, start=2):
        tokens = line.split()
        if len(tokens) != 2 or not all(is_decimal(tok) for tok in tokens):
            raise ParseError(offset, f"malformed edge {line!r}, expected `u v`")
        u, v = int(tokens[0]), int(tokens[1])
        for vid in (u, v):
            if vid >= n:
                raise ParseError(offset, f"id {vid} >= n={n}")
        if u == v:
            raise ParseError(offset, f"self-loop on {u}")
        if u > v:
            raise ParseError(offset, f"edge {u} {v} must be written with u < v")
        if (u, v) in seen:
            raise ParseError(offset, f"duplicate edge {u} {v}, first on line {seen[(u, v)]}")
        seen[(u, v)] = offset
        edges.append((u, v))
    return build_graph(n, edges)


def emit_edge_list(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def read_graph(path: Union[str, Path]) -> Graph:
    g = parse_edge_list(Path(path).read_text(encoding="ascii"))
    logger.debug("read %s: n=%d m=%d", path, g.n, g.m)
    return g


def write_graph(path: Union[str, Path], g: Graph) -> None:
    Path(path).write_text(emit_edge_list(g), encoding="ascii", newline="\n")
