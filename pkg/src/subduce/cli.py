"""Command line driver: ``subduce solve | verify | table | dump-rep | graph``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import __version__
from .hecke_rep import generator_matrix, verify_hecke_relations
from .solver import (
    DEFAULT_TOL,
    SDCSolution,
    full_oracle,
    solve,
    verify_solution,
)
from .subduction import Mode, SubductionProblem, assemble_system, build_graph
from .tableaux import (
    Partition,
    count_skew_fillings,
    enumerate_syt,
    hook_dimension,
    lr_multiplicity,
    partitions,
)

log = logging.getLogger("subduce")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CACHE_ENV = "SUBDUCE_CACHE_DIR"
CHECK_TOL = 1e-9
# brute-force full systems are only solved up to this many unknowns
ORACLE_MAX_UNKNOWNS = 4096
ORACLE_MAX_F = 6
HECKE_CHECK_MAX_DIM = 5000

# reference subduction cases reproduced by `table` when no sizes are given
BENCHMARK_CASES = [
    ((4, 2), (2, 1), (2, 1)),
    ((3, 2, 1), (2, 1), (2, 1)),
    ((4, 2, 1), (3, 1), (2, 1)),
    ((4, 3, 2), (3, 2), (3, 1)),
    ((4, 3, 2, 1), (3, 2, 1), (3, 1)),
    ((5, 4, 3, 2), (4, 3, 2), (3, 2)),
    ((5, 4, 3, 2, 1), (4, 3, 2, 1), (4, 1)),
]


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    lam: Partition | None = None
    lam1: Partition | None = None
    lam2: Partition | None = None
    q: float = 1.0
    tol: float = DEFAULT_TOL
    check_tol: float = CHECK_TOL
    mode: Mode = Mode.REDUCED
    format: str = "text"
    out: Path | None = None
    cache_dir: Path | None = None
    index: int | None = None
    f: int | None = None
    f1: int | None = None
    kernel: bool = False

    def problem(self) -> SubductionProblem:
        if self.lam is None or self.lam1 is None or self.lam2 is None:
            raise UsageError("--lambda, --lambda1 and --lambda2 are all required")
        try:
            return SubductionProblem(self.lam, self.lam1, self.lam2)
        except ValueError as exc:
            raise UsageError(str(exc)) from None


def num(x: float) -> str:
    return f"{x:.12g}"


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lambda", dest="lam", type=_partition, metavar="PARTS")
    common.add_argument("--lambda1", dest="lam1", type=_partition, metavar="PARTS")
    common.add_argument("--lambda2", dest="lam2", type=_partition, metavar="PARTS")
    common.add_argument("--q", type=_positive, default=1.0, help="deformation parameter (default 1)")
    common.add_argument("--tol", type=_positive, default=DEFAULT_TOL, help="relative rank tolerance")
    common.add_argument(
        "--check-tol", type=_positive, default=CHECK_TOL, help="threshold for verification residuals"
    )
    common.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.REDUCED.value)
    common.add_argument("--out", type=Path, help="write output here instead of stdout")
    common.add_argument("--cache-dir", type=Path, help=f"solution cache (env {CACHE_ENV})")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="subduce", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"subduce {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("solve", parents=[common], help="compute canonical subduction coefficients")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")

    p = sub.add_parser("verify", parents=[common], help="run the invariant and oracle checks")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("table", parents=[common], help="multiplicities and unknown counts")
    p.add_argument("--f", type=int, help="size of lambda")
    p.add_argument("--f1", type=int, help="size of lambda1")
    p.add_argument("--kernel", action="store_true", help="also solve each reduced system")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")

    p = sub.add_parser("dump-rep", parents=[common], help="export generator matrices of [lambda]")
    p.add_argument("--index", type=int, help="single generator index (default: all)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("graph", parents=[common], help="export the subduction graph or system")
    p.add_argument("--format", choices=["dot", "json", "csv", "text"], default="dot")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cache = args.cache_dir
    if os.environ.get(CACHE_ENV):
        cache = Path(os.environ[CACHE_ENV])
    return RunConfig(
        subcommand=args.subcommand,
        lam=args.lam,
        lam1=args.lam1,
        lam2=args.lam2,
        q=args.q,
        tol=args.tol,
        check_tol=args.check_tol,
        mode=Mode(args.mode),
        format=args.format,
        out=args.out,
        cache_dir=cache,
        index=getattr(args, "index", None),
        f=getattr(args, "f", None),
        f1=getattr(args, "f1", None),
        kernel=getattr(args, "kernel", False),
    )


# ---------------------------------------------------------------------------
# solve


def cache_key(problem: SubductionProblem, q: float, tol: float, mode: Mode) -> str:
    payload = json.dumps(
        [problem.to_json(), repr(float(q)), repr(float(tol)), mode.value, __version__]
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def solve_cached(config: RunConfig, problem: SubductionProblem) -> tuple[SDCSolution, str]:
    """Return the solution and its canonical JSON, via the cache when configured."""
    path = None
    if config.cache_dir is not None:
        path = config.cache_dir / f"{cache_key(problem, config.q, config.tol, config.mode)}.json"
        if path.is_file():
            text = path.read_text()
            log.info("cache hit %s", path)
            return SDCSolution.from_json(text), text
    solution = solve(problem, config.q, config.tol, config.mode)
    text = solution.to_json()
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(text)
        tmp.replace(path)
    return solution, text


def _mismatch_payload(config: RunConfig) -> str:
    data = {
        "problem": {
            "lambda": config.lam.to_json(),
            "lambda1": config.lam1.to_json(),
            "lambda2": config.lam2.to_json(),
        },
        "q": config.q,
        "tol": config.tol,
        "mode": config.mode.value,
        "multiplicity": 0,
        "unknowns": 0,
        "version": __version__,
        "coefficients": [],
    }
    return json.dumps(data, separators=(",", ":")) + "\n"


def solution_text(solution: SDCSolution, report=None) -> str:
    lines = [
        f"problem      {solution.problem}",
        f"q            {num(solution.q)}",
        f"multiplicity {solution.multiplicity}",
        f"unknowns     {len(solution.skews) * len(solution.tableaux2)}",
    ]
    if report is not None:
        lines.append(f"verified     {'yes' if report.passed else 'NO'}")
    if solution.multiplicity:
        lines.append("")
        lines.append(f"{'skew':<24} {'m2':<16} {'eta':>3}  value")
        for t, m2, e, v in solution.records():
            lines.append(f"{str(t):<24} {str(m2):<16} {e:>3}  {num(v)}")
    return "\n".join(lines) + "\n"


def cmd_solve(config: RunConfig) -> tuple[int, str]:
    if config.lam is None or config.lam1 is None or config.lam2 is None:
        raise UsageError("--lambda, --lambda1 and --lambda2 are all required")
    if config.lam1.size + config.lam2.size != config.lam.size:
        log.warning(
            "|%s| + |%s| != |%s|: no such block, multiplicity 0", config.lam1, config.lam2, config.lam
        )
        if config.format == "json":
            return EXIT_OK, _mismatch_payload(config)
        if config.format == "csv":
            return EXIT_OK, "skew,m2,eta,value\n"
        return EXIT_OK, "multiplicity 0\n"
    problem = config.problem()
    solution, text = solve_cached(config, problem)
    report = verify_solution(solution, tol=config.check_tol, completeness=False)
    status = EXIT_OK if report.passed else EXIT_FAIL
    if not report.passed:
        log.error("verification failed: %s", report.as_dict())
    if config.format == "json":
        return status, text
    if config.format == "csv":
        return status, solution.to_csv()
    return status, solution_text(solution, report)


# ---------------------------------------------------------------------------
# verify


def run_verification(config: RunConfig) -> dict:
    problem = config.problem()
    solution, _ = solve_cached(config, problem)
    report = verify_solution(solution, tol=config.check_tol)
    result: dict = {
        "problem": problem.to_json(),
        "q": config.q,
        "mode": config.mode.value,
        "lr_multiplicity": lr_multiplicity(problem.lam, problem.lam1, problem.lam2),
        "solution": report.as_dict(),
        "oracle": None,
        "hecke": [],
    }
    wants_oracle = config.mode is Mode.FULL or problem.f <= ORACLE_MAX_F
    if wants_oracle:
        if problem.full_unknowns() <= ORACLE_MAX_UNKNOWNS:
            result["oracle"] = full_oracle(problem, config.q, config.tol).as_dict()
        else:
            log.warning("full system has %d unknowns; oracle skipped", problem.full_unknowns())
    for shape in (problem.lam, problem.lam1, problem.lam2):
        if hook_dimension(shape) <= HECKE_CHECK_MAX_DIM:
            rel = verify_hecke_relations(shape, config.q, 1e-10)
            result["hecke"].append(rel.as_dict())
    passed = report.passed and all(h["pass"] for h in result["hecke"])
    if result["oracle"] is not None:
        passed = passed and result["oracle"]["pass"]
    result["pass"] = passed
    return result


def verification_text(result: dict) -> str:
    sol = result["solution"]
    lines = [
        f"problem       [{_p(result['problem']['lambda'])}] -> "
        f"[{_p(result['problem']['lambda1'])}] x [{_p(result['problem']['lambda2'])}]",
        f"q             {num(result['q'])}",
        f"multiplicity  {sol['multiplicity']} (LR {result['lr_multiplicity']})",
    ]
    for name in ("system", "ortho_row", "ortho_col", "coupling"):
        value = sol[f"residual_{name}"]
        if value is None:
            continue
        ok = sol["checks"].get(name, True)
        lines.append(f"{name:<13} {num(value):<20} {'ok' if ok else 'FAIL'}")
    oracle = result["oracle"]
    if oracle is not None:
        lines.append(
            f"full kernel   dim {oracle['kernel_dim_full']} vs reduced {oracle['kernel_dim_reduced']}"
        )
        for name in ("selection", "identity", "projector"):
            key = "projector_distance" if name == "projector" else f"{name}_residual"
            check = "projector" if name == "projector" else f"{name}_rule"
            lines.append(
                f"{name:<13} {num(oracle[key]):<20} {'ok' if oracle['checks'][check] else 'FAIL'}"
            )
    for rel in result["hecke"]:
        worst = max(rel["braid"], rel["commute"], rel["quadratic"])
        lines.append(
            f"relations [{_p(rel['shape'])}] {num(worst):<14} {'ok' if rel['pass'] else 'FAIL'}"
        )
    lines.append("PASS" if result["pass"] else "FAIL")
    return "\n".join(lines) + "\n"


def _p(parts: Sequence[int]) -> str:
    return ",".join(map(str, parts))


def cmd_verify(config: RunConfig) -> tuple[int, str]:
    result = run_verification(config)
    status = EXIT_OK if result["pass"] else EXIT_FAIL
    if config.format == "json":
        return status, json.dumps(result, indent=2) + "\n"
    return status, verification_text(result)


# ---------------------------------------------------------------------------
# table


def table_row(problem: SubductionProblem, kernel: bool = False, q: float = 1.0, tol: float = DEFAULT_TOL) -> dict:
    """Counts for one case, from hook lengths and skew counting only."""
    f_lam = hook_dimension(problem.lam)
    f_1 = hook_dimension(problem.lam1)
    f_2 = hook_dimension(problem.lam2)
    skew = count_skew_fillings(problem.lam, problem.lam1)
    row = {
        "lambda": problem.lam.to_json(),
        "lambda1": problem.lam1.to_json(),
        "lambda2": problem.lam2.to_json(),
        "multiplicity": lr_multiplicity(problem.lam, problem.lam1, problem.lam2),
        "full_unknowns": f_lam * f_1 * f_2,
        "reduced_unknowns": skew * f_2,
    }
    if kernel:
        from .solver import kernel_dimension

        row["kernel_dim"] = kernel_dimension(problem, q, tol)
    return row


def table_problems(config: RunConfig) -> list[SubductionProblem]:
    if config.lam is not None:
        return [config.problem()]
    if config.f is None and config.f1 is None:
        return [SubductionProblem.of(*case) for case in BENCHMARK_CASES]
    if config.f is None or config.f1 is None or not 0 < config.f1 < config.f:
        raise UsageError("table needs both --f and --f1 with 0 < f1 < f")
    out = []
    for lam in partitions(config.f):
        for lam1 in partitions(config.f1):
            if not lam.contains(lam1):
                continue
            for lam2 in partitions(config.f - config.f1):
                if lr_multiplicity(lam, lam1, lam2):
                    out.append(SubductionProblem(lam, lam1, lam2))
    return out


def cmd_table(config: RunConfig) -> tuple[int, str]:
    rows = [table_row(p, config.kernel, config.q, config.tol) for p in table_problems(config)]
    status = EXIT_OK
    if config.kernel and any(r["kernel_dim"] != r["multiplicity"] for r in rows):
        status = EXIT_FAIL
    if config.format == "json":
        return status, json.dumps(rows, indent=2) + "\n"
    fields = ["case", "multiplicity", "full_unknowns", "reduced_unknowns"]
    if config.kernel:
        fields.append("kernel_dim")
    cases = [f"[{_p(r['lambda'])}]->[{_p(r['lambda1'])}]x[{_p(r['lambda2'])}]" for r in rows]
    if config.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        for case, r in zip(cases, rows):
            writer.writerow([case] + [r[k] for k in fields[1:]])
        return status, buf.getvalue()
    width = max([len(c) for c in cases] + [4])
    lines = [f"{'case':<{width}}  " + "  ".join(f"{k:>16}" for k in fields[1:])]
    for case, r in zip(cases, rows):
        lines.append(f"{case:<{width}}  " + "  ".join(f"{r[k]:>16}" for k in fields[1:]))
    return status, "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# dump-rep and graph


def cmd_dump_rep(config: RunConfig) -> tuple[int, str]:
    if config.lam is None:
        raise UsageError("dump-rep needs --lambda")
    f = config.lam.size
    if config.index is not None and not 1 <= config.index < f:
        raise UsageError(f"--index must be in 1..{f - 1}")
    indices = [config.index] if config.index is not None else list(range(1, f))
    mats = [generator_matrix(config.lam, i, config.q) for i in indices]
    if config.format == "json":
        payload = {
            "shape": config.lam.to_json(),
            "q": config.q,
            "basis": [t.to_json() for t in enumerate_syt(config.lam)],
            "generators": {
                str(g.index): [[float(num(x)) for x in row] for row in g.dense()] for g in mats
            },
        }
        return EXIT_OK, json.dumps(payload) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    single = config.index is not None
    writer.writerow(["row", "col", "value"] if single else ["generator", "row", "col", "value"])
    for g in mats:
        for r, c, v in g.triplets():
            writer.writerow(([] if single else [g.index]) + [r, c, num(v)])
    return EXIT_OK, buf.getvalue()


def cmd_graph(config: RunConfig) -> tuple[int, str]:
    problem = config.problem()
    system = assemble_system(problem, config.q, config.mode)
    if config.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["row", "col", "value", "row_label", "col_label"])
        for r, c, v in system.triplets():
            writer.writerow(
                [r, c, num(v), " ".join(map(str, system.rows[r])), " ".join(map(str, system.columns[c]))]
            )
        return EXIT_OK, buf.getvalue()
    graph = build_graph(system)
    if config.format == "dot":
        return EXIT_OK, graph.to_dot()
    if config.format == "json":
        payload = {
            "problem": problem.to_json(),
            "mode": system.mode.value,
            "nodes": [graph.node_label(n) for n in graph.nodes],
            "edges": [list(e) for e in graph.edges],
            "components": graph.components,
        }
        return EXIT_OK, json.dumps(payload) + "\n"
    lines = [
        f"{problem} ({system.mode.value}): {len(graph.nodes)} nodes, "
        f"{len(graph.edges)} edges, {len(graph.components)} components"
    ]
    for comp in graph.components:
        lines.append("  " + ", ".join(graph.node_label(n) for n in comp))
    return EXIT_OK, "\n".join(lines) + "\n"


COMMANDS = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "table": cmd_table,
    "dump-rep": cmd_dump_rep,
    "graph": cmd_graph,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="subduce: %(levelname)s: %(message)s",
    )
    config = config_from_args(args)
    try:
        status, text = COMMANDS[config.subcommand](config)
    except UsageError as exc:
        print(f"subduce: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if config.out is not None:
        config.out.write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
