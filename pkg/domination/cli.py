import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from config import RunConfig, configure_logging, get_config
from domination.benchmark import DEFAULT_SIZES, parse_sizes, run_bench
from domination.block_decomp import emit_block_tree, processing_order
from domination.errors import (
    BudgetExceeded,
    DominationError,
    GraphError,
    InvalidSolutionError,
    ParseError,
    PreconditionError,
)
from domination.exact_oracles import OracleBudget, Problem, solve_exact
from domination.generators import random_block_graph, random_bounded_degree_graph
from domination.graph_core import Graph, read_graph, write_graph
from domination.harness import SUITES, HarnessSettings, dump_counterexamples, format_report, run_harness
from domination.reductions import GadgetKind, build_gadget, emit_role_map
from domination.semipaired_solver import (
    SemipairedSolution,
    read_solution,
    solve_block_graph,
    trace,
    verify_solution,
    write_solution,
)

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_INVALID, EXIT_INPUT, EXIT_PRECONDITION, EXIT_BUDGET = 0, 1, 2, 3, 4

RANDOM_KINDS = ("random-block", "random-deg")


def _say(cfg: RunConfig, line: str) -> None:
    """
    Status line, shown in human format only.
    """
    if cfg.human:
        print(line)


# =================================================================
# SUBCOMMANDS
# =================================================================

def cmd_solve(args, cfg: RunConfig) -> int:
    g = read_graph(args.graph)
    _say(cfg, f"🔍 Solving {args.graph} (n={g.n}, m={g.m})")
    try:
        s = solve_block_graph(g)
    except PreconditionError as exc:
        print(f"❌ {exc}; use `exact {args.graph} --problem spd` for general graphs"
              if cfg.human else f"error precondition {exc}")
        return EXIT_PRECONDITION
    out = Path(cfg.out) if cfg.out else Path(f"{args.graph}.sol")
    write_solution(out, s)
    _say(cfg, f"✅ Solution written to {out}")
    print(f"gamma_pr2 {len(s)}")
    return EXIT_OK


def cmd_exact(args, cfg: RunConfig) -> int:
    g = read_graph(args.graph)
    problem = Problem(args.problem)
    budget = OracleBudget.from_config(cfg)
    _say(cfg, f"🔍 Exact {problem.value} on {args.graph} (n={g.n}, budget n<={budget.max_n}, {budget.time_limit}s)")
    solution = solve_exact(problem, g, budget)
    print(f"{problem.value} {len(solution)}")
    if isinstance(solution, SemipairedSolution):
        for u, v in solution.pairs:
            print(f"pair {u} {v}")
        if cfg.out:
            write_solution(cfg.out, solution)
    else:
        print("vertices " + " ".join(map(str, solution)))
        if cfg.out:
            Path(cfg.out).write_text(" ".join(map(str, solution)) + "\n", encoding="ascii")
    return EXIT_OK


def cmd_check(args, cfg: RunConfig) -> int:
    g = read_graph(args.graph)
    s = read_solution(args.solution, g.n)
    verdict = verify_solution(g, s)
    if verdict:
        print(f"✅ valid semipaired dominating set of size {len(s)}" if cfg.human else "valid")
        return EXIT_OK
    print(f"❌ invalid: {verdict.diagnostic}" if cfg.human else f"invalid {verdict.diagnostic}")
    return EXIT_INVALID


def _generate(args, cfg: RunConfig) -> tuple[Graph, Optional[str]]:
    if args.kind == "random-block":
        n = args.n if args.n is not None else cfg.n_max
        return random_block_graph(cfg.seed, n, cfg.max_clique), None
    if args.kind == "random-deg":
        n = args.n if args.n is not None else cfg.n_max
        return random_bounded_degree_graph(cfg.seed, n, args.max_deg), None
    if not args.graph:
        raise PreconditionError(f"gen {args.kind} needs a source graph (--graph)")
    gg = build_gadget(GadgetKind(args.kind), read_graph(args.graph))
    return gg.graph, emit_role_map(gg)


def cmd_gen(args, cfg: RunConfig) -> int:
    g, roles = _generate(args, cfg)
    out = Path(cfg.out)
    write_graph(out, g)
    if roles is not None:
        role_path = out.with_name(out.name + ".roles")
        role_path.write_text(roles, encoding="ascii")
        _say(cfg, f"✅ Role map written to {role_path}")
    _say(cfg, f"✅ {args.kind} graph written to {out}")
    print(f"{g.n} {g.m}")
    return EXIT_OK


def cmd_harness(args, cfg: RunConfig) -> int:
    settings = HarnessSettings.from_config(cfg)
    suites = args.suite or list(SUITES)
    _say(cfg, f"🔍 Harness: seed={cfg.seed} trials={cfg.trials} n_max={cfg.n_max} workers={cfg.workers}")
    reports = run_harness(settings, suites)
    for line in format_report(reports, cfg.trials, human=cfg.human):
        print(line)
    if cfg.out:
        written = dump_counterexamples(reports, Path(cfg.out))
        if written:
            _say(cfg, f"⚠️ {len(written)} counterexample graph(s) written to {cfg.out}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_INVALID


def cmd_bench(args, cfg: RunConfig) -> int:
    sizes = parse_sizes(args.sizes) if args.sizes else list(DEFAULT_SIZES)
    _say(cfg, f"🔍 Benchmark: sizes={sizes} seed={cfg.seed} max_clique={cfg.max_clique}")
    rows = run_bench(sizes, cfg.seed, cfg.max_clique)
    for row in rows:
        print(row.to_line())
    if cfg.out:
        Path(cfg.out).write_text("".join(row.to_line() + "\n" for row in rows), encoding="ascii")
    return EXIT_OK


def cmd_decompose(args, cfg: RunConfig) -> int:
    g = read_graph(args.graph)
    d, tree, _ = processing_order(g)
    _say(cfg, f"🔍 {len(d.blocks)} blocks, {len(d.cut_vertices)} cut vertices, root {tree.root}")
    sys.stdout.write(emit_block_tree(tree))
    return EXIT_OK


def cmd_trace(args, cfg: RunConfig) -> int:
    g = read_graph(args.graph)
    log = trace(g)
    for record in log:
        print(record.to_line())
    selected = sum(len(r.selected) for r in log)
    _say(cfg, f"✅ {len(log)} iterations, gamma_pr2 {selected}")
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "exact": cmd_exact,
    "check": cmd_check,
    "gen": cmd_gen,
    "harness": cmd_harness,
    "bench": cmd_bench,
    "decompose": cmd_decompose,
    "trace": cmd_trace,
}


# =================================================================
# PARSER
# =================================================================

def build_parser() -> argparse.ArgumentParser:
    # Flags default to None so unset ones fall back to SPD_* variables.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int)
    common.add_argument("--trials", type=int)
    common.add_argument("--n-max", dest="n_max", type=int)
    common.add_argument("--budget-n", dest="budget_n", type=int)
    common.add_argument("--time-limit", dest="time_limit", type=int)
    common.add_argument("--max-clique", dest="max_clique", type=int)
    common.add_argument("--workers", type=int)
    common.add_argument("--format", choices=("human", "lines"))
    common.add_argument("--out")

    parser = argparse.ArgumentParser(
        prog="spd",
        description="Minimum semipaired domination: block-graph solver, exact oracles and reduction gadgets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="solve a block graph in linear time")
    p.add_argument("graph")

    p = sub.add_parser("exact", parents=[common], help="brute-force optimum on a small graph")
    p.add_argument("graph")
    p.add_argument("--problem", choices=[pr.value for pr in Problem], default=Problem.SPD.value)

    p = sub.add_parser("check", parents=[common], help="verify a semipaired solution file")
    p.add_argument("graph")
    p.add_argument("solution")

    p = sub.add_parser("gen", parents=[common], help="write a gadget or random graph")
    p.add_argument("kind", choices=[k.value for k in GadgetKind] + list(RANDOM_KINDS))
    p.add_argument("--graph", help="source graph for gadget kinds")
    p.add_argument("--n", type=int)
    p.add_argument("--max-deg", dest="max_deg", type=int, default=3)

    p = sub.add_parser("harness", parents=[common], help="run the property suites")
    p.add_argument("--suite", action="append", choices=SUITES)

    p = sub.add_parser("bench", parents=[common], help="time the solver on random block graphs")
    p.add_argument("--sizes", help="comma-separated vertex counts, e.g. 1e4,1e5,1e6")

    p = sub.add_parser("decompose", parents=[common], help="print the block tree as `v parent level`")
    p.add_argument("graph")

    p = sub.add_parser("trace", parents=[common], help="print the block-graph solver's per-iteration log")
    p.add_argument("graph")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = get_config(args)
    except RuntimeError as exc:
        print(exc)
        return EXIT_INPUT
    configure_logging(cfg.log_level)
    if args.command == "gen" and not cfg.out:
        print("❌ gen needs --out <path>" if cfg.human else "error input gen needs --out")
        return EXIT_INPUT

    try:
        return COMMANDS[args.command](args, cfg)
    except (ParseError, OSError) as exc:
        print(f"❌ {exc}" if cfg.human else f"error input {exc}")
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"❌ {exc}" if cfg.human else f"error precondition {exc}")
        return EXIT_PRECONDITION
    except BudgetExceeded as exc:
        print(f"❌ {exc}" if cfg.human else f"error budget {exc.cap} {exc.limit}")
        return EXIT_BUDGET
    except InvalidSolutionError as exc:
        print(f"❌ {exc}" if cfg.human else f"invalid {exc.diagnostic}")
        return EXIT_INVALID
    except (GraphError, ValueError) as exc:
        print(f"❌ {exc}" if cfg.human else f"error input {exc}")
        return EXIT_INPUT
    except DominationError as exc:
        print(f"❌ {exc}" if cfg.human else f"error internal {exc}")
        return EXIT_INVALID
