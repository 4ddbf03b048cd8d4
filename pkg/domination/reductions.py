"""
Reduction gadgets and the constructive solution maps between a source graph
and its gadget graph.

Vertex ids of every gadget are laid out in role blocks so that role vertices
can be addressed arithmetically; `GadgetGraph.vmap` names them all.

    GP4       v=i, w=n+i, x=2n+i, y=3n+i, z=4n+i
    GP5       v=i, a=n+i, b=2n+i, c=3n+i, d=4n+i, e=5n+i
    SPLIT     v^1=i, v^2=n+i, u^1=2n+i, u^2=3n+i
    APX4      v^1=i, v^2=n+i, e^1=2n+j, e^2=2n+m+j, then w, x, y, z blocks of n
    DEGSPLIT  unsplit v keeps id v; a split v has v_1=v and v_2..v_7 appended
              in blocks of six, one block per degree-4 vertex in ascending order
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import product
from typing import Callable, Iterable, Iterator, Optional

from domination.errors import InvalidSolutionError, InvariantViolation, LiftError, PreconditionError
from domination.exact_oracles import (
    OracleBudget,
    Problem,
    feasible_at_size,
    is_dominating_set,
    is_paired_dominating,
    is_vertex_cover,
    pairings,
)
from domination.graph_core import Graph, VertexSet, build_graph, dominated_by, is_connected, vertex_set
from domination.semipaired_solver import SemipairedSolution, verify_solution

logger = logging.getLogger(__name__)

GADGET_ROLES = ("v_1", "v_2", "v_3", "v_4", "v_5", "v_6", "v_7")


class GadgetKind(str, Enum):
    GP4 = "gp4"
    GP5 = "gp5"
    SPLIT = "split"
    APX4 = "apx4"
    DEGSPLIT = "degsplit"


@dataclass(frozen=True, eq=False)
class GadgetGraph:
    """
    A constructed graph plus the source it came from. vmap keys are
    (role, index), where index is a source vertex or, for e^1/e^2, the
    position of the source edge in `source.edges()`.
    """
    graph: Graph
    tag: GadgetKind
    origin_n: int
    vmap: dict[tuple[str, int], int]
    source: Graph

    def role(self, name: str, index: int) -> int:
        return self.vmap[(name, index)]

    def require(self, kind: GadgetKind) -> None:
        if self.tag is not kind:
            raise PreconditionError(f"expected a {kind.value} gadget, got {self.tag.value}")

    @cached_property
    def owner(self) -> tuple[int, ...]:
        """
        owner[x] is the source vertex whose role block contains x; -1 for edge copies.
        """
        owners = [-1] * self.graph.n
        for (name, index), vid in self.vmap.items():
            if name not in ("e^1", "e^2"):
                owners[vid] = index
        return tuple(owners)


def _require_connected(g: Graph, what: str) -> None:
    if not is_connected(g):
        raise PreconditionError(f"{what} needs a connected graph")


def _require_valid(g: Graph, s: SemipairedSolution) -> None:
    verdict = verify_solution(g, s)
    if not verdict:
        raise InvalidSolutionError(verdict.diagnostic)


def _layered(g: Graph, tag: GadgetKind, roles: Iterable[str], extra_edges: Iterable[tuple[int, int]]) -> GadgetGraph:
    n = g.n
    names = list(roles)
    vmap = {(name, i): block * n + i for block, name in enumerate(names) for i in range(n)}
    edges = list(g.edges())
    edges.extend(extra_edges)
    return GadgetGraph(build_graph(len(names) * n, edges), tag, n, vmap, g)


# =================================================================
# 1. GP4 / GP5
# =================================================================

def gp4(h: Graph) -> GadgetGraph:
    """
    Pendant path v-w-x-y-z on every vertex of h.
    """
    _require_connected(h, "gp4")
    n = h.n
    extra = []
    for i in range(n):
        w, x, y, z = n + i, 2 * n + i, 3 * n + i, 4 * n + i
        extra += [(i, w), (w, x), (x, y), (y, z)]
    return _layered(h, GadgetKind.GP4, ("v", "w", "x", "y", "z"), extra)


def gp5(h: Graph) -> GadgetGraph:
    """
    Path a-b-c-d-e joined to every vertex of h at its center c.
    """
    _require_connected(h, "gp5")
    n = h.n
    extra = []
    for i in range(n):
        a, b, c, d, e = (k * n + i for k in range(1, 6))
        extra += [(i, c), (c, b), (c, d), (b, a), (d, e)]
    return _layered(h, GadgetKind.GP5, ("v", "a", "b", "c", "d", "e"), extra)


def gp4_semipd_witness(gg: GadgetGraph) -> SemipairedSolution:
    gg.require(GadgetKind.GP4)
    n = gg.origin_n
    return SemipairedSolution.from_pairs(gg.graph.n, ((gg.role("w", i), gg.role("y", i)) for i in range(n)))


def gp4_lift_paired(gg: GadgetGraph, pd: SemipairedSolution) -> SemipairedSolution:
    """
    A paired dominating set of h extended by the adjacent pair (x_i, y_i) on every path.
    """
    gg.require(GadgetKind.GP4)
    if not is_paired_dominating(gg.source, pd):
        raise InvalidSolutionError("not a paired dominating set of the source graph")
    pairs = list(pd.pairs)
    pairs += [(gg.role("x", i), gg.role("y", i)) for i in range(gg.origin_n)]
    return SemipairedSolution.from_pairs(gg.graph.n, pairs)


def gp5_paired_witness(gg: GadgetGraph) -> SemipairedSolution:
    gg.require(GadgetKind.GP5)
    pairs = []
    for i in range(gg.origin_n):
        pairs += [(gg.role("a", i), gg.role("b", i)), (gg.role("c", i), gg.role("d", i))]
    return SemipairedSolution.from_pairs(gg.graph.n, pairs)


def gp5_lift_semipd(gg: GadgetGraph, s: SemipairedSolution) -> SemipairedSolution:
    """
    A semipaired dominating set of h plus (b_i, d_i), paired through c_i.
    """
    gg.require(GadgetKind.GP5)
    _require_valid(gg.source, s)
    pairs = list(s.pairs)
    pairs += [(gg.role("b", i), gg.role("d", i)) for i in range(gg.origin_n)]
    return SemipairedSolution.from_pairs(gg.graph.n, pairs)


def _settle(h: Graph, kept: set[int], partner: dict[int, int], orphans: Iterable[int],
            close: Callable[[int, int], bool]) -> SemipairedSolution:
    """
    Completes a set of h in place. Each orphan (kept, no partner yet) takes
    another orphan within reach, else its smallest unkept neighbor, and is
    dropped when every neighbor is already kept. A vertex left undominated
    afterwards enters together with its smallest neighbor.
    """
    for y in sorted(orphans):
        if y in partner or y not in kept:
            continue
        mate = next((z for z in sorted(kept) if z != y and z not in partner and close(y, z)), None)
        if mate is None:
            mate = next((u for u in h.adjacency[y] if u not in kept), None)
            if mate is None:
                kept.discard(y)
                continue
            kept.add(mate)
        partner[y] = mate
        partner[mate] = y

    covered = dominated_by(h, kept)
    for v in range(h.n):
        if v in covered:
            continue
        u = h.adjacency[v][0]
        kept.update((v, u))
        partner[v], partner[u] = u, v
        covered |= dominated_by(h, (v, u))
    return SemipairedSolution.from_pairs(h.n, ((a, b) for a, b in partner.items() if a < b))


def _pull_back_attached(gg: GadgetGraph, s2: SemipairedSolution, close: Callable[[int, int], bool]) -> SemipairedSolution:
    """
    Keeps the source vertices of s2 (ids below n) and their source-side pairs,
    re-partners the ones paired into their attached path, and checks |result| <= |s2| - 2n.
    """
    h = gg.source
    n = gg.origin_n
    if n < 2:
        raise PreconditionError(f"{gg.tag.value} pull-back needs a source with n >= 2")
    mates = s2.partner_map()
    kept = {v for v in s2.vertices if v < n}
    partner = {v: mates[v] for v in kept if mates[v] < n}
    projected = _settle(h, kept, partner, [v for v in kept if v not in partner], close)
    limit = len(s2) - 2 * n
    if len(projected) > limit:
        raise InvariantViolation(f"pull-back of size {len(projected)} exceeds |s'| - 2n = {limit}")
    return projected


def gp4_project_paired(gg: GadgetGraph, pd2: SemipairedSolution) -> SemipairedSolution:
    """
    A paired dominating set of h with at most |pd2| - 2n vertices, from one of
    the gp4 graph. Every path keeps two of x_i, y_i, z_i, so dropping them
    pays for replacing w_i by a neighbor of v_i.
    """
    gg.require(GadgetKind.GP4)
    if not is_paired_dominating(gg.graph, pd2):
        raise InvalidSolutionError("not a paired dominating set of the gp4 graph")
    h = gg.source
    projected = _pull_back_attached(gg, pd2, h.has_edge)
    if not is_paired_dominating(h, projected):
        raise InvariantViolation(f"pull-back {list(projected.pairs)} is not a paired dominating set")
    return projected


def gp5_project_semipd(gg: GadgetGraph, s2: SemipairedSolution) -> SemipairedSolution:
    """
    A semipaired dominating set of h with at most |s2| - 2n vertices, from one
    of the gp5 graph. a_i, b_i, d_i, e_i are dropped; a vertex semipaired with
    some c_j, b_i or d_i is re-partnered inside h.
    """
    gg.require(GadgetKind.GP5)
    _require_valid(gg.graph, s2)
    h = gg.source
    projected = _pull_back_attached(gg, s2, h.within_two)
    verdict = verify_solution(h, projected)
    if not verdict:
        raise InvariantViolation(f"pull-back is not a semipaired dominating set: {verdict.diagnostic}")
    return projected


# =================================================================
# 2. SPLIT GRAPHS (domination <-> semipaired domination)
# =================================================================

def split_reduction(g: Graph) -> GadgetGraph:
    _require_connected(g, "split_reduction")
    if g.n < 2:
        raise PreconditionError("split_reduction needs a non-trivial graph (n >= 2)")
    n = g.n
    clique = list(range(n)) + list(range(2 * n, 3 * n))
    edges = [(a, b) for i, a in enumerate(clique) for b in clique[i + 1:]]
    for i in range(n):
        for j in (i, *g.adjacency[i]):
            edges.append((n + i, j))
            edges.append((3 * n + i, 2 * n + j))
    vmap = {}
    for block, name in enumerate(("v^1", "v^2", "u^1", "u^2")):
        for i in range(n):
            vmap[(name, i)] = block * n + i
    return GadgetGraph(build_graph(4 * n, edges), GadgetKind.SPLIT, n, vmap, g)


def split_sides(gg: GadgetGraph) -> tuple[list[int], list[int]]:
    """
    The clique V1 u U1 and the independent set V2 u U2.
    """
    gg.require(GadgetKind.SPLIT)
    n = gg.origin_n
    return list(range(n)) + list(range(2 * n, 3 * n)), list(range(n, 2 * n)) + list(range(3 * n, 4 * n))


def is_split_partition(g: Graph, clique: Iterable[int], independent: Iterable[int]) -> bool:
    k = list(clique)
    s = list(independent)
    if sorted(k + s) != list(range(g.n)):
        return False
    if any(not g.has_edge(a, b) for i, a in enumerate(k) for b in k[i + 1:]):
        return False
    return not any(g.has_edge(a, b) for i, a in enumerate(s) for b in s[i + 1:])


def semipd_from_dominating(gg: GadgetGraph, d: VertexSet) -> SemipairedSolution:
    gg.require(GadgetKind.SPLIT)
    if not is_dominating_set(gg.source, d):
        raise InvalidSolutionError("not a dominating set of the source graph")
    return SemipairedSolution.from_pairs(gg.graph.n, ((gg.role("v^1", i), gg.role("u^1", i)) for i in d))


def dominating_from_semipd(gg: GadgetGraph, s: SemipairedSolution) -> VertexSet:
    """
    Keeps the V or the U half of s, whichever is smaller (V on ties),
    replaces each kept independent-side vertex that no kept clique vertex
    dominates by its smallest neighbor, and reads the clique side back as source ids.
    """
    gg.require(GadgetKind.SPLIT)
    _require_valid(gg.graph, s)
    n = gg.origin_n
    g2 = gg.graph
    v_side = [x for x in s.vertices if x < 2 * n]
    u_side = [x for x in s.vertices if x >= 2 * n]
    if len(u_side) < len(v_side):
        kept, base = u_side, 2 * n
    else:
        kept, base = v_side, 0

    kept_set = set(kept)
    chosen = {x - base for x in kept if x < base + n}
    for x in kept:
        if x >= base + n and not any(w in kept_set for w in g2.adjacency[x]):
            chosen.add(min(g2.adjacency[x]) - base)

    d = vertex_set(gg.source, chosen)
    if not is_dominating_set(gg.source, d) or 2 * len(d) > len(s):
        raise InvariantViolation(f"pull-back of a size-{len(s)} set gave {sorted(chosen)}")
    return d


# =================================================================
# 3. APX4 (vertex cover <-> semipaired domination, degree <= 4, bipartite)
# =================================================================

def apx_reduction(g: Graph) -> GadgetGraph:
    _require_connected(g, "apx_reduction")
    if g.max_degree() > 3:
        raise PreconditionError(f"apx_reduction needs maximum degree <= 3, got {g.max_degree()}")
    n = g.n
    edge_list = list(g.edges())
    m = len(edge_list)
    vmap: dict[tuple[str, int], int] = {}
    for i in range(n):
        vmap[("v^1", i)] = i
        vmap[("v^2", i)] = n + i
    for j in range(m):
        vmap[("e^1", j)] = 2 * n + j
        vmap[("e^2", j)] = 2 * n + m + j
    for block, name in enumerate(("w", "x", "y", "z")):
        for i in range(n):
            vmap[(name, i)] = 2 * n + 2 * m + block * n + i

    edges = []
    for i in range(n):
        w, x, y, z = (vmap[(name, i)] for name in ("w", "x", "y", "z"))
        edges += [(vmap[("v^1", i)], w), (vmap[("v^2", i)], w), (w, x), (x, y), (y, z)]
    for j, (a, b) in enumerate(edge_list):
        for layer in ("1", "2"):
            e = vmap[("e^" + layer, j)]
            edges += [(vmap[("v^" + layer, a)], e), (vmap[("v^" + layer, b)], e)]
    return GadgetGraph(build_graph(6 * n + 2 * m, edges), GadgetKind.APX4, n, vmap, g)


def semipd_from_vertex_cover(gg: GadgetGraph, vc: VertexSet) -> SemipairedSolution:
    gg.require(GadgetKind.APX4)
    if not is_vertex_cover(gg.source, vc):
        raise InvalidSolutionError("not a vertex cover of the source graph")
    pairs = [(gg.role("v^1", i), gg.role("v^2", i)) for i in vc]
    pairs += [(gg.role("w", i), gg.role("y", i)) for i in range(gg.origin_n)]
    return SemipairedSolution.from_pairs(gg.graph.n, pairs)


def vertex_cover_from_semipd(gg: GadgetGraph, s: SemipairedSolution) -> VertexSet:
    """
    Restricts s to the layer (V1 u E1 or V2 u E2) it meets least, layer 1 on
    ties, then swaps every edge vertex with no selected endpoint for its
    smaller endpoint. The layer's vertex copies form the cover.
    """
    gg.require(GadgetKind.APX4)
    _require_valid(gg.graph, s)
    n = gg.origin_n
    edge_list = list(gg.source.edges())
    m = len(edge_list)

    layers = []
    for layer in ("1", "2"):
        v_ids = {gg.role("v^" + layer, i): i for i in range(n)}
        e_ids = {gg.role("e^" + layer, j): j for j in range(m)}
        layers.append((v_ids, e_ids, [x for x in s.vertices if x in v_ids or x in e_ids]))
    v_ids, e_ids, kept = min(layers, key=lambda layer: len(layer[2]))

    cover = {v_ids[x] for x in kept if x in v_ids}
    for x in kept:
        if x in e_ids:
            a, b = edge_list[e_ids[x]]
            if a not in cover and b not in cover:
                cover.add(a)

    vc = vertex_set(gg.source, cover)
    if not is_vertex_cover(gg.source, vc) or 2 * len(vc) > len(s) - 2 * n:
        raise InvariantViolation(f"pull-back of a size-{len(s)} set gave cover {sorted(cover)}")
    return vc


# =================================================================
# 4. DEGREE SPLITTING (max degree 4 -> max degree 3)
# =================================================================

def degree_split(g: Graph) -> GadgetGraph:
    """
    Replaces every degree-4 vertex v by the path v_1 ... v_6 plus v_7 joined
    to v_3 and v_4. The two lowest-id neighbors of v attach to v_1, the other
    two to v_6.
    """
    if g.max_degree() > 4:
        raise PreconditionError(f"degree_split needs maximum degree <= 4, got {g.max_degree()}")
    n = g.n
    split = [v for v in range(n) if len(g.adjacency[v]) == 4]
    vmap = {("v", v): v for v in range(n)}
    for t, v in enumerate(split):
        vmap[("v_1", v)] = v
        for k in range(2, 8):
            vmap[(f"v_{k}", v)] = n + 6 * t + (k - 2)

    def attach(a: int, b: int) -> int:
        nbrs = g.adjacency[a]
        if len(nbrs) != 4:
            return a
        return vmap[("v_1", a)] if b in nbrs[:2] else vmap[("v_6", a)]

    edges = [(attach(a, b), attach(b, a)) for a, b in g.edges()]
    for v in split:
        p = [vmap[(role, v)] for role in GADGET_ROLES]
        edges += [(p[0], p[1]), (p[1], p[2]), (p[2], p[3]), (p[3], p[4]), (p[4], p[5]),
                  (p[6], p[2]), (p[6], p[3])]
    logger.debug("degree_split: %d of %d vertices split", len(split), n)
    return GadgetGraph(build_graph(n + 6 * len(split), edges), GadgetKind.DEGSPLIT, n, vmap, g)


def _split_vertices(gg: GadgetGraph) -> list[int]:
    return [index for (name, index) in gg.vmap if name == "v_7"]


def _candidate_pairings(g: Graph, s: SemipairedSolution) -> Iterator[tuple[tuple[int, int], ...]]:
    yield s.pairs
    for other in pairings(g, s.vertices):
        if other.pairs != s.pairs:
            yield other.pairs


def _bridge(g: Graph, split: set[int], s: SemipairedSolution, a: int, b: int, used: set[int]) -> Optional[int]:
    """
    A split vertex outside s adjacent to both unsplit ends of the pair (a, b).
    Its gadget ends dominate a and b, so {v_1, v_3, v_4, v_6} can stand in for the pair.
    """
    if a in split or b in split:
        return None
    common = g.neighbor_sets[a] & g.neighbor_sets[b]
    return next((w for w in sorted(common) if w in split and w not in s.vertices and w not in used), None)


def _lift_pairs(g: Graph, gg: GadgetGraph, s: SemipairedSolution,
                pairs: Iterable[tuple[int, int]]) -> Optional[SemipairedSolution]:
    """
    The case-by-case lift of one semipairing of s, or None when some pair
    cannot be realized or the result does not dominate the split graph.
    """
    g2 = gg.graph
    split = set(_split_vertices(gg))

    def reps(v: int) -> tuple[int, ...]:
        return (gg.role("v_1", v), gg.role("v_6", v)) if v in split else (v,)

    chosen: dict[int, int] = {}
    bridged: set[int] = set()
    lifted = []
    for a, b in pairs:
        match = next(((ra, rb) for ra, rb in product(reps(a), reps(b)) if g2.within_two(ra, rb)), None)
        if match is not None:
            chosen[a], chosen[b] = match
            lifted.append(match)
            continue
        w = _bridge(g, split, s, a, b, bridged)
        if w is None:
            return None
        bridged.add(w)

    for v in sorted(split):
        r = {role: gg.role(role, v) for role in GADGET_ROLES}
        if v in bridged:
            lifted += [(r["v_1"], r["v_3"]), (r["v_4"], r["v_6"])]
        elif v in s.vertices:
            # v_4, v_6 when v pairs through v_1, else v_1, v_3.
            lifted.append((r["v_4"], r["v_6"]) if chosen[v] == r["v_1"] else (r["v_1"], r["v_3"]))

    selected = {x for pair in lifted for x in pair}
    for v in sorted(split):
        if v in s.vertices or v in bridged:
            continue
        r = {role: gg.role(role, v) for role in GADGET_ROLES}
        # v_3, v_5 when v_1 is dominated from outside the gadget, else v_2, v_4.
        if any(w in selected for w in g2.adjacency[r["v_1"]] if w != r["v_2"]):
            lifted.append((r["v_3"], r["v_5"]))
        else:
            lifted.append((r["v_2"], r["v_4"]))

    out = SemipairedSolution.from_pairs(g2.n, lifted)
    return out if verify_solution(g2, out) else None


def lift_semipd_degree_split(g: Graph, gg: GadgetGraph, s: SemipairedSolution,
                             budget: OracleBudget = OracleBudget()) -> SemipairedSolution:
    """
    A semipaired dominating set of the split graph with exactly |s| + 2k
    vertices, k being the number of split vertices.

    Every semipairing of s is tried with the gadget cases; a pair whose only
    short paths cross a gadget is replaced by that gadget's four ends and
    middle vertices. When no semipairing survives, an exact search of the
    split graph at size |s| + 2k (bounded by `budget`) decides. LiftError
    means the split graph has no set of that size at all.
    """
    gg.require(GadgetKind.DEGSPLIT)
    _require_valid(g, s)
    for candidate in _candidate_pairings(g, s):
        lifted = _lift_pairs(g, gg, s, candidate)
        if lifted is not None:
            return lifted

    target = len(s) + 2 * len(_split_vertices(gg))
    logger.debug("no gadget lift of %s, searching the split graph at size %d", list(s.vertices), target)
    found = feasible_at_size(Problem.SPD, gg.graph, target, budget)
    if found is None:
        raise LiftError(f"split graph has no semipaired dominating set of size |s| + 2k = {target}")
    return found


def project_semipd_degree_split(g: Graph, gg: GadgetGraph, s2: SemipairedSolution) -> SemipairedSolution:
    """
    Keeps every unsplit vertex of s2 and every split vertex whose gadget holds
    at least three vertices of s2, pairs what crossing pairs of s2 allow, and
    repairs the leftovers.
    """
    gg.require(GadgetKind.DEGSPLIT)
    _require_valid(gg.graph, s2)
    split = _split_vertices(gg)
    owner = gg.owner

    weight = {v: 0 for v in split}
    kept = set()
    for x in s2.vertices:
        v = owner[x]
        if v in weight:
            weight[v] += 1
        else:
            kept.add(v)
    kept.update(v for v, phi in weight.items() if phi >= 3)

    partner: dict[int, int] = {}
    for x, y in s2.pairs:
        a, b = owner[x], owner[y]
        if a != b and a in kept and b in kept and a not in partner and b not in partner:
            partner[a] = b
            partner[b] = a

    projected = _settle(g, kept, partner, [y for y in kept if y not in partner], g.within_two)
    verdict = verify_solution(g, projected)
    if not verdict:
        raise InvariantViolation(f"projected set is not a semipaired dominating set: {verdict.diagnostic}")
    if len(projected) > len(s2) - 2 * len(split):
        raise InvariantViolation(f"projection of size {len(projected)} exceeds |s'| - 2k = {len(s2) - 2 * len(split)}")
    return projected


# =================================================================
# 5. DISPATCH AND ROLE MAPS
# =================================================================

GADGETS = {
    GadgetKind.GP4: gp4,
    GadgetKind.GP5: gp5,
    GadgetKind.SPLIT: split_reduction,
    GadgetKind.APX4: apx_reduction,
    GadgetKind.DEGSPLIT: degree_split,
}


def build_gadget(kind: GadgetKind, g: Graph) -> GadgetGraph:
    return GADGETS[kind](g)


def emit_role_map(gg: GadgetGraph) -> str:
    """
    One `role index vertex_id` line per named role vertex, by vertex id.
    """
    rows = sorted(gg.vmap.items(), key=lambda item: (item[1], item[0]))
    return "".join(f"{name} {index} {vid}\n" for (name, index), vid in rows)
