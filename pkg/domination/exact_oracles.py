"""
Exact minimum dominating, paired dominating, semipaired dominating and
vertex cover sets for small graphs.

All four searches walk k-subsets in lexicographic order for k = 1, 2, ...
(even k only for the paired variants), so the first hit is both minimum and
the lexicographically smallest minimum set. Graphs are held as bitmasks.
"""
import logging
import time
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator, Optional, Union

from domination.errors import BudgetExceeded, GraphError, PreconditionError
from domination.graph_core import Graph, VertexSet, dominated_by, has_isolated_vertex
from domination.semipaired_solver import SemipairedSolution, verify_solution

logger = logging.getLogger(__name__)

# The wall clock is only read once per this many search nodes.
_CLOCK_STRIDE = 4096


class Problem(str, Enum):
    DOM = "dom"
    PD = "pd"
    SPD = "spd"
    VC = "vc"


@dataclass(frozen=True)
class OracleBudget:
    max_n: int = 22
    max_subset_size: Optional[int] = None
    time_limit: float = 120.0

    def __post_init__(self):
        if self.max_n <= 0:
            raise ValueError(f"max_n must be positive, got {self.max_n}")
        if self.max_subset_size is not None and self.max_subset_size <= 0:
            raise ValueError(f"max_subset_size must be positive, got {self.max_subset_size}")
        if self.time_limit <= 0:
            raise ValueError(f"time_limit must be positive, got {self.time_limit}")

    @classmethod
    def from_config(cls, cfg) -> "OracleBudget":
        return cls(max_n=cfg.budget_n, time_limit=cfg.time_limit)

    def admit(self, g: Graph) -> None:
        if g.n > self.max_n:
            raise BudgetExceeded("max_n", self.max_n, f"graph has n={g.n}")

    def admit_size(self, k: int) -> None:
        if self.max_subset_size is not None and k > self.max_subset_size:
            raise BudgetExceeded("max_subset_size", self.max_subset_size, f"search reached k={k}")


Solution = Union[VertexSet, SemipairedSolution]


class _Clock:
    def __init__(self, budget: OracleBudget):
        self.budget = budget
        self.deadline = time.monotonic() + budget.time_limit
        self.ticks = 0

    def tick(self) -> None:
        self.ticks += 1
        if self.ticks % _CLOCK_STRIDE == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("time_limit", self.budget.time_limit, f"after {self.ticks} search nodes")


def _masks(g: Graph) -> tuple[list[int], list[int]]:
    """
    Open and closed neighborhoods as bitmasks.
    """
    open_nbrs = [0] * g.n
    for v, nbrs in enumerate(g.adjacency):
        mask = 0
        for w in nbrs:
            mask |= 1 << w
        open_nbrs[v] = mask
    closed = [open_nbrs[v] | (1 << v) for v in range(g.n)]
    return open_nbrs, closed


def _partner_masks(g: Graph, within: int) -> list[int]:
    open_nbrs, _ = _masks(g)
    if within == 1:
        return open_nbrs
    masks = []
    for v in range(g.n):
        mask = open_nbrs[v]
        for w in g.adjacency[v]:
            mask |= open_nbrs[w]
        masks.append(mask & ~(1 << v))
    return masks


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# =================================================================
# 1. PAIRINGS
# =================================================================

def _pairings(members: list[int], partner: list[int]) -> Iterator[list[tuple[int, int]]]:
    """
    Every perfect matching of `members` in the graph given by `partner`
    masks; the lowest unmatched member is always matched first, so matchings
    come out in lexicographic order.
    """
    remaining = 0
    for v in members:
        remaining |= 1 << v
    pairs: list[tuple[int, int]] = []

    def extend(left: int) -> Iterator[list[tuple[int, int]]]:
        if not left:
            yield list(pairs)
            return
        low = left & -left
        v = low.bit_length() - 1
        rest = left ^ low
        for w in _bits(partner[v] & rest):
            pairs.append((v, w))
            yield from extend(rest & ~(1 << w))
            pairs.pop()

    yield from extend(remaining)


def _require_even(s: VertexSet) -> None:
    if len(s) % 2:
        raise GraphError(f"a pairing needs an even vertex set, got |s|={len(s)}")


def pairings(g: Graph, s: VertexSet, within: int = 2) -> Iterator[SemipairedSolution]:
    """
    All partitions of s into 2-sets at distance <= `within` (1 or 2).
    """
    _require_even(s)
    partner = _partner_masks(g, within)
    for pairs in _pairings(s.sorted(), partner):
        yield SemipairedSolution.from_pairs(g.n, pairs)


def has_semipairing(g: Graph, s: VertexSet) -> Optional[SemipairedSolution]:
    return next(pairings(g, s, within=2), None)


# =================================================================
# 2. DEFINITIONAL CHECKS
# =================================================================

def is_dominating_set(g: Graph, s: VertexSet) -> bool:
    return len(dominated_by(g, s.members)) == g.n


def is_vertex_cover(g: Graph, s: VertexSet) -> bool:
    return all(u in s or v in s for u, v in g.edges())


def is_paired_dominating(g: Graph, s: SemipairedSolution) -> bool:
    return bool(verify_solution(g, s)) and all(g.has_edge(u, v) for u, v in s.pairs)


# =================================================================
# 3. SUBSET SEARCHES
# =================================================================

class _DominationSearch:
    """
    Lexicographic DFS over k-subsets that dominate g. `partner` (if given)
    is the pair relation: a chosen vertex with no possible partner left is
    pruned, and complete sets are accepted only if they admit a pairing.
    """
    def __init__(self, g: Graph, clock: _Clock, partner: Optional[list[int]] = None):
        self.n = g.n
        self.clock = clock
        self.partner = partner
        _, self.closed = _masks(g)
        self.full = (1 << g.n) - 1

    def walk(self, k: int) -> Iterator[Solution]:
        yield from self._dfs(0, [], 0, 0, k)

    def _lower_bound(self, undominated: int, available: int) -> int:
        # Undominated vertices with pairwise disjoint available closed
        # neighborhoods each need their own pick; small ones are packed first.
        reaches = []
        for u in _bits(undominated):
            reach = self.closed[u] & available
            if not reach:
                return self.n + 1
            reaches.append((bin(reach).count("1"), reach))
        reaches.sort()
        used = 0
        count = 0
        for _, reach in reaches:
            if not reach & used:
                used |= reach
                count += 1
        return count

    def _dfs(self, start: int, chosen: list[int], chosen_mask: int, covered: int, left: int) -> Iterator[Solution]:
        self.clock.tick()
        if left == 0:
            if covered != self.full:
                return
            if self.partner is None:
                yield VertexSet(frozenset(chosen), self.n)
                return
            pairs = next(_pairings(chosen, self.partner), None)
            if pairs is not None:
                yield SemipairedSolution.from_pairs(self.n, pairs)
            return

        available = self.full & ~((1 << start) - 1)
        undominated = self.full & ~covered
        if self._lower_bound(undominated, available) > left:
            return
        if self.partner is not None:
            pool = chosen_mask | available
            if any(not self.partner[c] & pool for c in chosen):
                return

        for v in range(start, self.n - left + 1):
            chosen.append(v)
            yield from self._dfs(v + 1, chosen, chosen_mask | (1 << v), covered | self.closed[v], left - 1)
            chosen.pop()


class _CoverSearch:
    """
    Lexicographic DFS over k-subsets that cover every edge. Vertices skipped
    below `start` are excluded, so all their neighbors are forced.
    """
    def __init__(self, g: Graph, clock: _Clock):
        self.n = g.n
        self.clock = clock
        self.open, _ = _masks(g)

    def walk(self, k: int) -> Iterator[VertexSet]:
        yield from self._dfs(0, [], 0, k)

    def _dfs(self, start: int, chosen: list[int], chosen_mask: int, left: int) -> Iterator[VertexSet]:
        self.clock.tick()
        excluded = ((1 << start) - 1) & ~chosen_mask
        forced = 0
        for x in _bits(excluded):
            if self.open[x] & excluded:
                return
            forced |= self.open[x] & ~chosen_mask
        if bin(forced).count("1") > left:
            return
        if left == 0:
            rest = ((1 << self.n) - 1) & ~chosen_mask
            if not any(self.open[x] & rest for x in _bits(rest)):
                yield VertexSet(frozenset(chosen), self.n)
            return

        for v in range(start, self.n - left + 1):
            chosen.append(v)
            yield from self._dfs(v + 1, chosen, chosen_mask | (1 << v), left - 1)
            chosen.pop()


def _check_pairable(g: Graph, problem: Problem) -> None:
    if g.n == 0 or has_isolated_vertex(g):
        raise PreconditionError(f"{problem.value} needs a graph without isolated vertices")


def _search(problem: Problem, g: Graph, clock: _Clock) -> tuple[Callable[[int], Iterator[Solution]], range]:
    """
    The subset walk for `problem` and the cardinalities worth trying, ascending.
    """
    if problem is Problem.VC:
        return _CoverSearch(g, clock).walk, range(0, g.n + 1)
    if problem is Problem.DOM:
        return _DominationSearch(g, clock).walk, range(1 if g.n else 0, g.n + 1)
    _check_pairable(g, problem)
    partner = _partner_masks(g, 1 if problem is Problem.PD else 2)
    return _DominationSearch(g, clock, partner).walk, range(2, g.n + 1, 2)


def solutions_at_size(problem: Problem, g: Graph, k: int, budget: OracleBudget) -> Iterator[Solution]:
    """
    Every feasible solution with exactly k vertices, in lexicographic order of
    the vertex set (one pairing per set for the paired variants).
    """
    budget.admit(g)
    walk, sizes = _search(problem, g, _Clock(budget))
    if k in sizes:
        budget.admit_size(k)
        yield from walk(k)


def feasible_at_size(problem: Problem, g: Graph, k: int, budget: OracleBudget) -> Optional[Solution]:
    """
    The lexicographically smallest feasible solution of exactly k vertices, or None.
    """
    return next(solutions_at_size(problem, g, k, budget), None)


def _minimum(problem: Problem, g: Graph, budget: OracleBudget) -> Solution:
    budget.admit(g)
    clock = _Clock(budget)
    walk, sizes = _search(problem, g, clock)
    for k in sizes:
        budget.admit_size(k)
        found = next(walk(k), None)
        if found is not None:
            logger.debug("%s optimum on n=%d: %d (%d search nodes)", problem.value, g.n, k, clock.ticks)
            return found
    raise PreconditionError(f"{problem.value} has no feasible solution on this graph")


def minimum_solutions(problem: Problem, g: Graph, b: OracleBudget) -> Iterator[Solution]:
    """
    All minimum solutions, lexicographically smallest first.
    """
    first = _minimum(problem, g, b)
    yield from solutions_at_size(problem, g, len(first), b)


def min_dominating_set(g: Graph, b: OracleBudget) -> VertexSet:
    return _minimum(Problem.DOM, g, b)


def min_semipaired_dominating(g: Graph, b: OracleBudget) -> SemipairedSolution:
    return _minimum(Problem.SPD, g, b)


def min_paired_dominating(g: Graph, b: OracleBudget) -> SemipairedSolution:
    return _minimum(Problem.PD, g, b)


def min_vertex_cover(g: Graph, b: OracleBudget) -> VertexSet:
    return _minimum(Problem.VC, g, b)


def solve_exact(problem: Problem, g: Graph, b: OracleBudget) -> Solution:
    return _minimum(problem, g, b)


def optimum_size(problem: Problem, g: Graph, b: OracleBudget) -> int:
    return len(_minimum(problem, g, b))
