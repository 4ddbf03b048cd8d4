"""
Wall-clock timing of the block-graph solver on random block graphs.
"""
import logging
import time
from dataclasses import dataclass
from typing import Callable, Iterable

from domination.generators import random_block_graph
from domination.graph_core import Graph
from domination.semipaired_solver import SemipairedSolution, solve_block_graph

logger = logging.getLogger(__name__)

DEFAULT_SIZES = (10_000, 100_000, 1_000_000)


@dataclass(frozen=True)
class BenchRow:
    n: int
    m: int
    millis: float
    size: int

    def to_line(self) -> str:
        return f"{self.n} {self.m} {self.millis:.1f}"


def time_solve(g: Graph, solver: Callable[[Graph], SemipairedSolution] = solve_block_graph) -> tuple[float, SemipairedSolution]:
    start = time.perf_counter()
    s = solver(g)
    return (time.perf_counter() - start) * 1000.0, s


def run_bench(
    sizes: Iterable[int],
    seed: int,
    max_clique: int,
    solver: Callable[[Graph], SemipairedSolution] = solve_block_graph,
) -> list[BenchRow]:
    """
    One row per size. Graph generation is not timed.
    """
    rows = []
    for n in sizes:
        g = random_block_graph(seed, n, max_clique)
        millis, s = time_solve(g, solver)
        logger.info("bench n=%d m=%d: %.1f ms, gamma_pr2=%d", g.n, g.m, millis, len(s))
        rows.append(BenchRow(g.n, g.m, millis, len(s)))
    return rows


def growth_factors(rows: list[BenchRow]) -> list[float]:
    """
    Time ratio between consecutive rows, normalized to a 10x step in n.
    """
    factors = []
    for prev, cur in zip(rows, rows[1:]):
        if prev.millis <= 0:
            continue
        scale = cur.n / prev.n
        factors.append((cur.millis / prev.millis) * (10.0 / scale))
    return factors


def parse_sizes(text: str) -> list[int]:
    """
    Comma-separated sizes; accepts `1e5` style exponents.
    """
    sizes = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        value = int(float(token)) if "e" in token.lower() else int(token)
        if value < 2:
            raise ValueError(f"benchmark sizes must be >= 2, got {value}")
        sizes.append(value)
    if not sizes:
        raise ValueError("no benchmark sizes given")
    return sizes
