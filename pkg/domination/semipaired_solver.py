"""
Minimum semipaired domination on block graphs in one linear pass, the solution
verifier, and the per-iteration trace.
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Union

from domination.block_decomp import processing_order
from domination.errors import GraphError, InvariantViolation, ParseError, PreconditionError
from domination.graph_core import UNREACHABLE, Graph, VertexSet, bfs_distances, dominated_by, is_decimal

logger = logging.getLogger(__name__)

# Marks "no vertex" in the m and partner arrays.
NO_VERTEX = -1


@dataclass(frozen=True)
class SemipairedSolution:
    vertices: VertexSet
    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "SemipairedSolution":
        normalized = tuple(sorted((min(u, v), max(u, v)) for u, v in pairs))
        members = frozenset(v for pair in normalized for v in pair)
        return cls(VertexSet(members, n), normalized)

    def __len__(self) -> int:
        return len(self.vertices)

    def partner_map(self) -> dict[int, int]:
        partners = {}
        for u, v in self.pairs:
            partners[u] = v
            partners[v] = u
        return partners


@dataclass(frozen=True)
class Verdict:
    ok: bool
    diagnostic: str = "ok"

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class SolverState:
    """
    D: 1 once dominated. L: 0 unselected, 1 selected but unpaired, 2 paired.
    m[v]: vertex still waiting for a partner near v, or NO_VERTEX.
    partner: recorded when L turns 2.
    """
    D: bytearray
    L: bytearray
    m: list[int]
    partner: list[int]

    @classmethod
    def fresh(cls, n: int) -> "SolverState":
        return cls(bytearray(n), bytearray(n), [NO_VERTEX] * n, [NO_VERTEX] * n)


@dataclass
class IterationRecord:
    i: int
    vertex: int
    case: str = "none"
    selected: list[int] = field(default_factory=list)
    dominated: list[int] = field(default_factory=list)
    candidates: list[int] = field(default_factory=list)
    pairs: list[tuple[int, int]] = field(default_factory=list)
    m_updates: list[tuple[int, int]] = field(default_factory=list)

    def to_line(self) -> str:
        parts = [str(self.i), self.case, f"v={self.vertex}"]
        if self.selected:
            parts.append("sel=" + ",".join(map(str, self.selected)))
        if self.dominated:
            parts.append("dom=" + ",".join(map(str, sorted(self.dominated))))
        if self.candidates:
            parts.append("C=" + ",".join(map(str, self.candidates)))
        for u, v in self.pairs:
            parts.append(f"pair={u}:{v}")
        for v, k in self.m_updates:
            parts.append(f"m[{v}]=" + ("-" if k == NO_VERTEX else str(k)))
        return " ".join(parts)


# =================================================================
# 1. VERIFICATION
# =================================================================

def verify_solution(g: Graph, s: SemipairedSolution) -> Verdict:
    """
    Checks, in order: exact partition into 2-sets, pair distance <= 2, domination.
    """
    seen: set[int] = set()
    for u, v in s.pairs:
        for x in (u, v):
            if not 0 <= x < g.n:
                return Verdict(False, f"partition: vertex {x} out of range")
        if u == v:
            return Verdict(False, f"partition: pair ({u}, {v}) repeats a vertex")
        for x in (u, v):
            if x in seen:
                return Verdict(False, f"partition: vertex {x} appears in two pairs")
            seen.add(x)
    if seen != set(s.vertices.members):
        extra = sorted(set(s.vertices.members) - seen)
        return Verdict(False, f"partition: vertices {extra} are not covered by pairs")

    for u, v in s.pairs:
        if not g.within_two(u, v):
            return Verdict(False, f"distance: pair ({u}, {v}) at distance {_distance_label(g, u, v)}")

    covered = dominated_by(g, s.vertices.members)
    if len(covered) != g.n:
        missing = next(v for v in range(g.n) if v not in covered)
        return Verdict(False, f"domination: vertex {missing} is not dominated")
    return Verdict(True)


def _distance_label(g: Graph, u: int, v: int) -> str:
    d = bfs_distances(g, u)[v]
    return "inf" if d == UNREACHABLE else str(d)


# =================================================================
# 2. BLOCK-GRAPH SOLVER
# =================================================================

class SemipairedSolver:
    """
    One greedy pass over the reverse-BFS ordering of T(G).
    With `check_invariants` every iteration boundary is audited and an
    InvariantViolation is raised on the first broken state invariant.
    """
    def __init__(self, g: Graph, record: bool = False, check_invariants: bool = False):
        if g.n < 2:
            raise PreconditionError(f"semipaired domination needs n >= 2, got n={g.n}")
        self.g = g
        self.decomposition, self.tree, self.order = processing_order(g)
        self.state = SolverState.fresh(g.n)
        self.record = record
        self.check_invariants = check_invariants
        self.log: list[IterationRecord] = []
        self._current: Optional[IterationRecord] = None

    # --- state transitions -------------------------------------------

    def _select(self, v: int) -> None:
        if self.state.L[v] != 0:
            raise InvariantViolation(f"vertex {v} selected twice")
        self.state.L[v] = 1
        if self._current is not None:
            self._current.selected.append(v)

    def _dominate(self, v: int) -> None:
        D = self.state.D
        cur = self._current
        if not D[v]:
            D[v] = 1
            if cur is not None:
                cur.dominated.append(v)
        for w in self.g.adjacency[v]:
            if not D[w]:
                D[w] = 1
                if cur is not None:
                    cur.dominated.append(w)

    def _pair(self, a: int, b: int) -> None:
        st = self.state
        st.L[a] = st.L[b] = 2
        st.partner[a] = b
        st.partner[b] = a
        if self._current is not None:
            self._current.pairs.append((min(a, b), max(a, b)))

    def _set_m(self, v: int, k: int) -> None:
        self.state.m[v] = k
        if self._current is not None:
            self._current.m_updates.append((v, k))

    def _first_unselected_neighbor(self, v: int) -> int:
        L = self.state.L
        for u in self.g.adjacency[v]:
            if L[u] == 0:
                return u
        raise InvariantViolation(f"no unselected neighbor left for {v}")

    # --- main loop ---------------------------------------------------

    def run(self) -> SemipairedSolution:
        g = self.g
        st = self.state
        D, L, m = st.D, st.L, st.m
        F, rank, beo = self.order.F, self.order.rank, self.order.beo
        n = g.n

        for i, v in enumerate(beo):
            last = i == n - 1
            fired = []
            if self.record:
                self._current = IterationRecord(i=i + 1, vertex=v)

            # (a) v undominated: take its parent.
            if not D[v] and not last:
                fired.append("a")
                j = F[v]
                self._select(j)
                self._dominate(j)
                pending = [u for u in g.adjacency[j] if m[u] != NO_VERTEX]
                if m[j] != NO_VERTEX:
                    pending.append(j)
                if self._current is not None:
                    self._current.candidates = sorted(pending, key=rank.__getitem__)
                if not pending:
                    self._set_m(F[j], j)
                else:
                    k = min(pending, key=rank.__getitem__)
                    self._pair(j, m[k])
                    self._set_m(k, NO_VERTEX)

            # (b) somebody selected below v still waits for a partner.
            if D[v] and m[v] != NO_VERTEX:
                fired.append("b")
                k = m[v]
                f = F[v]
                if L[f] == 0:
                    self._select(f)
                    self._dominate(f)
                    self._pair(k, f)
                elif L[v] == 0:
                    self._select(v)
                    self._pair(k, v)
                    self._dominate(v)
                else:
                    u = self._first_unselected_neighbor(k)
                    self._select(u)
                    self._pair(k, u)
                    self._dominate(u)
                self._set_m(v, NO_VERTEX)

            # (c) the root is still undominated after everything below it.
            if last and not D[v]:
                fired.append("c")
                u = self._first_unselected_neighbor(v)
                self._select(v)
                self._select(u)
                self._pair(v, u)
                self._dominate(v)
                self._dominate(u)

            if self._current is not None:
                self._current.case = "".join(fired) or "none"
                self.log.append(self._current)
                self._current = None
            if self.check_invariants:
                self._audit(i)

        unpaired = [v for v in range(n) if L[v] == 1]
        if unpaired:
            raise InvariantViolation(f"vertices {unpaired} selected but never paired")
        pairs = [(v, st.partner[v]) for v in range(n) if L[v] == 2 and v < st.partner[v]]
        solution = SemipairedSolution.from_pairs(n, pairs)
        logger.debug("solved n=%d: gamma_pr2=%d", n, len(solution))
        return solution

    def _audit(self, i: int) -> None:
        g = self.g
        st = self.state
        beo = self.order.beo
        v = beo[i]
        # D never reverts and m is only ever set above rank i, so checking the
        # current vertex covers the whole prefix.
        if not st.D[v]:
            raise InvariantViolation(f"rank {i + 1}: vertex {v} left undominated")
        if st.m[v] != NO_VERTEX:
            raise InvariantViolation(f"rank {i + 1}: m({v}) still set after processing")
        for x in range(g.n):
            k = st.m[x]
            if k != NO_VERTEX:
                if self.order.rank[x] <= i:
                    raise InvariantViolation(f"rank {i + 1}: m({x}) set on a processed vertex")
                if st.L[k] != 1:
                    raise InvariantViolation(f"rank {i + 1}: m({x})={k} but L({k})={st.L[k]}")
                for u in (x, *g.adjacency[x]):
                    if u != k and st.L[u] == 1:
                        raise InvariantViolation(
                            f"rank {i + 1}: m({x})={k} while {u} in N[{x}] has L=1")
            if st.L[x] == 2:
                p = st.partner[x]
                if p == NO_VERTEX or st.L[p] != 2 or st.partner[p] != x or not g.within_two(x, p):
                    raise InvariantViolation(f"rank {i + 1}: L({x})=2 without a valid partner")


def solve_block_graph(g: Graph) -> SemipairedSolution:
    return SemipairedSolver(g).run()


def trace(g: Graph) -> list[IterationRecord]:
    solver = SemipairedSolver(g, record=True, check_invariants=True)
    solver.run()
    return solver.log


# =================================================================
# 3. SOLUTION FILES
# =================================================================
# Line 1 `k`, then k lines `u v`.

def emit_solution(s: SemipairedSolution) -> str:
    out = [str(len(s.pairs))]
    out.extend(f"{u} {v}" for u, v in s.pairs)
    return "\n".join(out) + "\n"


def parse_solution(text: str, n: int) -> SemipairedSolution:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines or not is_decimal(lines[0].strip()):
        raise ParseError(1, "missing pair count `k`")
    k = int(lines[0])
    if len(lines) - 1 != k:
        raise ParseError(len(lines), f"header declares {k} pairs, found {len(lines) - 1}")
    pairs = []
    for offset, line in enumerate(lines[1:], start=2):
        tokens = line.split()
        if len(tokens) != 2 or not all(is_decimal(tok) for tok in tokens):
            raise ParseError(offset, f"malformed pair {line!r}, expected `u v`")
        u, v = int(tokens[0]), int(tokens[1])
        for x in (u, v):
            if x >= n:
                raise ParseError(offset, f"id {x} >= n={n}")
        pairs.append((u, v))
    try:
        return SemipairedSolution.from_pairs(n, pairs)
    except GraphError as exc:
        raise ParseError(1, str(exc)) from exc


def read_solution(path: Union[str, Path], n: int) -> SemipairedSolution:
    return parse_solution(Path(path).read_text(encoding="ascii"), n)


def write_solution(path: Union[str, Path], s: SemipairedSolution) -> None:
    Path(path).write_text(emit_solution(s), encoding="ascii", newline="\n")
