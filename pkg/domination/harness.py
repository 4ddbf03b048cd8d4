"""
Property suites run by the `harness` subcommand.

Each suite is a check over one trial. Random suites draw their instance from
a generator seeded by (seed, suite, trial); fixed suites walk a catalog and
run min(trials, len(catalog)) trials. Results are always reported by trial
index, whatever order the workers finish in.
"""
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Optional

from domination.errors import BudgetExceeded, DominationError, LiftError
from domination.exact_oracles import (
    OracleBudget,
    Problem,
    is_dominating_set,
    is_paired_dominating,
    is_vertex_cover,
    min_dominating_set,
    min_paired_dominating,
    min_semipaired_dominating,
    min_vertex_cover,
    minimum_solutions,
    optimum_size,
)
from domination.generators import (
    complete_graph,
    connected_graph_catalog,
    cycle_graph,
    path_graph,
    random_block_graph,
    random_bounded_degree_graph,
    star_graph,
)
from domination.graph_core import Graph, emit_edge_list, is_bipartite
from domination.reductions import (
    apx_reduction,
    degree_split,
    dominating_from_semipd,
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
from domination.semipaired_solver import SemipairedSolution, solve_block_graph, trace, verify_solution

logger = logging.getLogger(__name__)

PASS, FAIL, SKIP = "pass", "fail", "skip"

DEGREE_SPLIT_DRAWS = 50
APX_MAX_N = 30


@dataclass(frozen=True)
class HarnessSettings:
    seed: int = 7
    trials: int = 100
    n_max: int = 12
    budget: OracleBudget = field(default_factory=OracleBudget)
    workers: int = 1
    solver: Callable[[Graph], SemipairedSolution] = solve_block_graph

    @classmethod
    def from_config(cls, cfg, solver: Callable[[Graph], SemipairedSolution] = solve_block_graph) -> "HarnessSettings":
        return cls(
            seed=cfg.seed,
            trials=cfg.trials,
            n_max=cfg.n_max,
            budget=OracleBudget.from_config(cfg),
            workers=cfg.workers,
            solver=solver,
        )


@dataclass
class TrialOutcome:
    suite: str
    trial: int
    status: str
    detail: str = ""
    graph: Optional[Graph] = None


@dataclass
class SuiteReport:
    name: str
    outcomes: list[TrialOutcome]

    def count(self, status: str) -> int:
        return sum(1 for o in self.outcomes if o.status == status)

    @property
    def passed(self) -> bool:
        return self.count(FAIL) == 0

    @property
    def failures(self) -> list[TrialOutcome]:
        return [o for o in self.outcomes if o.status == FAIL]


class Counterexample(Exception):
    pass


class Trial:
    """
    Per-trial context: a private random stream and the graph under test,
    which is dumped when the check fails.
    """
    def __init__(self, suite: str, index: int, settings: HarnessSettings):
        self.suite = suite
        self.index = index
        self.settings = settings
        self.rng = random.Random(f"{settings.seed}:{suite}:{index}")
        self.graph: Optional[Graph] = None

    def use(self, g: Graph) -> Graph:
        self.graph = g
        return g

    def expect(self, condition: bool, detail: str) -> None:
        if not condition:
            raise Counterexample(detail)

    def size(self, n_low: int, n_high: int) -> int:
        return self.rng.randint(n_low, max(n_low, n_high))


def _opt(problem: Problem, g: Graph, t: Trial) -> int:
    return optimum_size(problem, g, t.settings.budget)


# =================================================================
# 1. RANDOM SUITES
# =================================================================

def check_optimality(t: Trial) -> None:
    n = t.size(2, t.settings.n_max)
    g = t.use(random_block_graph(t.rng.randrange(2**31), n, t.rng.randint(2, 4)))
    s = t.settings.solver(g)
    verdict = verify_solution(g, s)
    t.expect(verdict.ok, f"solver output rejected: {verdict.diagnostic}")
    best = _opt(Problem.SPD, g, t)
    t.expect(len(s) == best, f"solver found {len(s)}, optimum is {best}")


def check_validity(t: Trial) -> None:
    n = t.size(2, 100 * t.settings.n_max)
    g = t.use(random_block_graph(t.rng.randrange(2**31), n, t.rng.randint(2, 6)))
    s = t.settings.solver(g)
    verdict = verify_solution(g, s)
    t.expect(verdict.ok, f"solver output rejected: {verdict.diagnostic}")
    t.expect(len(s) % 2 == 0, f"odd solution size {len(s)}")


def check_trace(t: Trial) -> None:
    n = t.size(2, t.settings.n_max)
    g = t.use(random_block_graph(t.rng.randrange(2**31), n, t.rng.randint(2, 4)))
    log = trace(g)
    t.expect(len(log) == g.n, f"trace has {len(log)} iterations for n={g.n}")


def _random_connected(t: Trial, n_high: int, cap: Optional[int] = None, n_low: int = 2) -> Graph:
    n = t.size(n_low, n_high)
    if cap is None:
        cap = t.rng.randint(2, max(2, n - 1)) if n > 2 else 1
    return t.use(random_bounded_degree_graph(t.rng.randrange(2**31), n, cap))


def check_domination_chain(t: Trial) -> None:
    g = _random_connected(t, t.settings.n_max)
    dom = _opt(Problem.DOM, g, t)
    spd = _opt(Problem.SPD, g, t)
    pd = _opt(Problem.PD, g, t)
    t.expect(dom <= spd <= pd, f"gamma={dom}, gamma_pr2={spd}, gamma_pr={pd}")


def check_structure(t: Trial) -> None:
    gg = split_reduction(_random_connected(t, t.settings.n_max))
    clique, independent = split_sides(gg)
    t.expect(is_split_partition(gg.graph, clique, independent), "split_reduction output is not split")

    g3 = _random_connected(t, t.settings.n_max, cap=3)
    apx = apx_reduction(g3).graph
    t.expect(is_bipartite(apx), "apx_reduction output is not bipartite")
    t.expect(apx.max_degree() <= 4, f"apx_reduction output has degree {apx.max_degree()}")

    g4 = _random_connected(t, t.settings.n_max, cap=4)
    ds = degree_split(g4).graph
    t.expect(ds.max_degree() <= 3, f"degree_split output has degree {ds.max_degree()}")


def _degree_four_count(g: Graph) -> int:
    return sum(1 for nbrs in g.adjacency if len(nbrs) == 4)


def check_degree_split(t: Trial) -> None:
    budget = t.settings.budget
    if t.index == 0:
        g = t.use(star_graph(4))
    else:
        # Redraw until some vertex gets split and the split graph fits the oracle budget.
        for _ in range(DEGREE_SPLIT_DRAWS):
            g = _random_connected(t, max(5, min(9, t.settings.n_max)), cap=4, n_low=5)
            k = _degree_four_count(g)
            if k and g.n + 6 * k <= budget.max_n:
                break
    gg = degree_split(g)
    k = _degree_four_count(g)
    s = min_semipaired_dominating(g, budget)
    best_split = min_semipaired_dominating(gg.graph, budget)

    projected = project_semipd_degree_split(g, gg, best_split)
    t.expect(len(projected) <= len(best_split) - 2 * k, f"projection has size {len(projected)}")

    try:
        lifted = lift_semipd_degree_split(g, gg, s, budget)
    except LiftError:
        t.expect(len(best_split) > len(s) + 2 * k, f"lift failed, yet gamma_pr2(split)={len(best_split)}")
        logger.warning("trial %d: splitting %d vertices raises gamma_pr2 from %d to %d",
                       t.index, k, len(s), len(best_split))
        return
    t.expect(verify_solution(gg.graph, lifted).ok and len(lifted) == len(s) + 2 * k,
             f"lift of size {len(lifted)} rejected")
    t.expect(len(best_split) == len(s) + 2 * k,
             f"gamma_pr2(split)={len(best_split)}, gamma_pr2={len(s)}, k={k}")


# =================================================================
# 2. FIXED SUITES
# =================================================================

def _small_sources() -> list[Graph]:
    return [complete_graph(2), path_graph(3), cycle_graph(3)]


def check_gp4(t: Trial, h: Graph) -> None:
    gg = gp4(h)
    t.use(gg.graph)
    best = _opt(Problem.SPD, gg.graph, t)
    t.expect(best == 2 * h.n, f"gamma_pr2(gp4)={best}, expected {2 * h.n}")
    witness = gp4_semipd_witness(gg)
    t.expect(verify_solution(gg.graph, witness).ok and len(witness) == 2 * h.n, "gp4 witness rejected")


def check_gp5(t: Trial, h: Graph) -> None:
    gg = gp5(h)
    t.use(gg.graph)
    best = _opt(Problem.PD, gg.graph, t)
    t.expect(best == 4 * h.n, f"gamma_pr(gp5)={best}, expected {4 * h.n}")
    t.expect(is_paired_dominating(gg.graph, gp5_paired_witness(gg)), "gp5 witness rejected")


def check_gp4_paired(t: Trial, h: Graph) -> None:
    gg = gp4(h)
    t.use(h)
    pd = min_paired_dominating(h, t.settings.budget)
    best = _opt(Problem.PD, gg.graph, t)
    t.expect(best == 2 * h.n + len(pd), f"gamma_pr(gp4)={best}, 2n+gamma_pr={2 * h.n + len(pd)}")
    lifted = gp4_lift_paired(gg, pd)
    t.expect(is_paired_dominating(gg.graph, lifted) and len(lifted) == best, "lifted paired set rejected")
    for pd2 in minimum_solutions(Problem.PD, gg.graph, t.settings.budget):
        back = gp4_project_paired(gg, pd2)
        t.expect(is_paired_dominating(h, back) and len(back) == len(pd), f"pull-back {list(back.pairs)} rejected")


def check_gp5_semipaired(t: Trial, h: Graph) -> None:
    gg = gp5(h)
    t.use(h)
    s = min_semipaired_dominating(h, t.settings.budget)
    best = _opt(Problem.SPD, gg.graph, t)
    t.expect(best == 2 * h.n + len(s), f"gamma_pr2(gp5)={best}, 2n+gamma_pr2={2 * h.n + len(s)}")
    lifted = gp5_lift_semipd(gg, s)
    t.expect(verify_solution(gg.graph, lifted).ok and len(lifted) == best, "lifted semipaired set rejected")
    for s2 in minimum_solutions(Problem.SPD, gg.graph, t.settings.budget):
        back = gp5_project_semipd(gg, s2)
        t.expect(verify_solution(h, back).ok and len(back) == len(s), f"pull-back {list(back.pairs)} rejected")


def check_split_domination(t: Trial, g: Graph) -> None:
    gg = split_reduction(t.use(g))
    budget = t.settings.budget
    d = min_dominating_set(g, budget)
    s = min_semipaired_dominating(gg.graph, budget)
    t.expect(len(s) == 2 * len(d), f"gamma_pr2(split)={len(s)}, 2*gamma={2 * len(d)}")
    forward = semipd_from_dominating(gg, d)
    t.expect(verify_solution(gg.graph, forward).ok and len(forward) == 2 * len(d), "forward map rejected")
    back = dominating_from_semipd(gg, s)
    t.expect(is_dominating_set(g, back) and 2 * len(back) <= len(s), f"pull-back {list(back)} rejected")


def check_apx_cover(t: Trial, g: Graph) -> None:
    gg = apx_reduction(t.use(g))
    # P4 and C3 need 30 and 24 vertices.
    budget = replace(t.settings.budget, max_n=max(t.settings.budget.max_n, APX_MAX_N))
    vc = min_vertex_cover(g, budget)
    s = min_semipaired_dominating(gg.graph, budget)
    expected = 2 * len(vc) + 2 * g.n
    t.expect(len(s) == expected, f"gamma_pr2(apx)={len(s)}, 2*tau+2n={expected}")
    forward = semipd_from_vertex_cover(gg, vc)
    t.expect(verify_solution(gg.graph, forward).ok and len(forward) == expected, "forward map rejected")
    back = vertex_cover_from_semipd(gg, s)
    t.expect(is_vertex_cover(g, back) and len(back) == len(vc), f"pull-back {list(back)} rejected")


FIXED_SOURCES: dict[str, Callable[[], list[Graph]]] = {
    "gp4": lambda: [complete_graph(1), complete_graph(2), path_graph(3), cycle_graph(3), cycle_graph(4), complete_graph(4)],
    "gp5": _small_sources,
    "gp4_paired": _small_sources,
    "gp5_semipaired": _small_sources,
    "split_domination": lambda: [g for n in range(2, 6) for g in connected_graph_catalog(n)],
    "apx_cover": lambda: [complete_graph(2), path_graph(3), path_graph(4), cycle_graph(3)],
}

RANDOM_CHECKS: dict[str, Callable[[Trial], None]] = {
    "optimality": check_optimality,
    "validity": check_validity,
    "trace": check_trace,
    "domination_chain": check_domination_chain,
    "structure": check_structure,
    "degree_split": check_degree_split,
}

FIXED_CHECKS: dict[str, Callable[[Trial, Graph], None]] = {
    "gp4": check_gp4,
    "gp5": check_gp5,
    "gp4_paired": check_gp4_paired,
    "gp5_semipaired": check_gp5_semipaired,
    "split_domination": check_split_domination,
    "apx_cover": check_apx_cover,
}

SUITES = (
    "optimality", "validity", "trace", "domination_chain", "structure",
    "gp4", "gp5", "gp4_paired", "gp5_semipaired", "split_domination", "apx_cover", "degree_split",
)


# =================================================================
# 3. RUNNER
# =================================================================

def planned_trials(suite: str, settings: HarnessSettings) -> int:
    if suite in FIXED_SOURCES:
        return min(settings.trials, len(FIXED_SOURCES[suite]()))
    return settings.trials


def run_trial(suite: str, index: int, settings: HarnessSettings) -> TrialOutcome:
    t = Trial(suite, index, settings)
    try:
        if suite in FIXED_CHECKS:
            FIXED_CHECKS[suite](t, FIXED_SOURCES[suite]()[index])
        else:
            RANDOM_CHECKS[suite](t)
    except Counterexample as exc:
        return TrialOutcome(suite, index, FAIL, str(exc), t.graph)
    except BudgetExceeded as exc:
        return TrialOutcome(suite, index, SKIP, str(exc), t.graph)
    except DominationError as exc:
        return TrialOutcome(suite, index, FAIL, f"{type(exc).__name__}: {exc}", t.graph)
    return TrialOutcome(suite, index, PASS)


def _run_packed(job: tuple[str, int, HarnessSettings]) -> TrialOutcome:
    return run_trial(*job)


def run_suite(suite: str, settings: HarnessSettings) -> SuiteReport:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    jobs = [(suite, i, settings) for i in range(planned_trials(suite, settings))]
    if settings.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=settings.workers) as pool:
            outcomes = list(pool.map(_run_packed, jobs))
    else:
        outcomes = [_run_packed(job) for job in jobs]
    outcomes.sort(key=lambda o: o.trial)
    report = SuiteReport(suite, outcomes)
    logger.info("suite %s: %d trials, %d failed, %d skipped",
                suite, len(outcomes), report.count(FAIL), report.count(SKIP))
    return report


def run_harness(settings: HarnessSettings, suites: Optional[list[str]] = None) -> list[SuiteReport]:
    if settings.trials == 0:
        logger.warning("0 trials requested: every property passes vacuously")
    return [run_suite(name, settings) for name in (suites or SUITES)]


def format_report(reports: list[SuiteReport], trials: int, human: bool = True) -> list[str]:
    out = []
    if trials == 0:
        out.append("⚠️ 0 trials requested: every property passes vacuously" if human else "warning 0-trials")
    for r in reports:
        ran, failed, skipped = len(r.outcomes), r.count(FAIL), r.count(SKIP)
        if human:
            if failed:
                out.append(f"❌ {r.name}: {failed} of {ran} trials failed")
            else:
                out.append(f"✅ {r.name}: {ran - skipped} passed")
            if skipped:
                out.append(f"⏭️ {r.name}: {skipped} skipped (budget)")
            for o in r.failures:
                out.append(f"   trial {o.trial}: {o.detail}")
                if o.graph is not None:
                    out.extend("      " + line for line in emit_edge_list(o.graph).splitlines())
        else:
            status = "failed" if failed else "passed"
            out.append(f"suite {r.name} {status} trials={ran} failures={failed} skipped={skipped}")
            for o in r.failures:
                out.append(f"counterexample {r.name} {o.trial} {o.detail}")
    return out


def dump_counterexamples(reports: list[SuiteReport], directory: Path) -> list[Path]:
    """
    Writes each failing graph as `<suite>-<trial>.txt` in edge-list format.
    """
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for r in reports:
        for o in r.failures:
            if o.graph is None:
                continue
            path = directory / f"{r.name}-{o.trial}.txt"
            path.write_text(emit_edge_list(o.graph), encoding="ascii")
            written.append(path)
    return written
