"""Command-line front end.

Exit codes: 0 success, 1 verify mismatch, 2 parse or usage error, 3 resource
limit hit by a solver, 4 oracle refused the instance (box larger than budget).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .engine import SolveStats, solve_basic, solve_improved
from .errors import BudgetExceeded, ParseError, ResourceError
from .instances import (
    DEFAULT_BUDGET,
    GeneratorConfig,
    brute_force_nd,
    generate_random,
    parse_problem,
    write_nd,
    write_problem,
)
from .ipsolver import Backend
from .model import NDSet, Problem

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_RESOURCE = 3
EXIT_BUDGET = 4

ALGORITHMS = {"basic": solve_basic, "improved": solve_improved}


@dataclass(frozen=True)
class RunReport:
    instance: str
    algorithm: str
    nd_size: int
    ip_count: int
    raw_scalar_solves: int
    cache_reuses: int
    infeasible_shortcuts: int
    wall_time: float


def run_algorithm(
    problem: Problem, algorithm: str, backend: Optional[Backend], instance: str = ""
) -> Tuple[NDSet, SolveStats, RunReport]:
    start = time.perf_counter()
    nd, stats = ALGORITHMS[algorithm](problem, backend)
    elapsed = time.perf_counter() - start
    report = RunReport(
        instance,
        algorithm,
        len(nd),
        stats.ip_count,
        stats.raw_scalar_solves,
        stats.cache_reuses,
        stats.infeasible_shortcuts,
        elapsed,
    )
    return nd, stats, report


def _read_problem(path: str) -> Problem:
    return parse_problem(Path(path).read_text())


def _write_text(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _backend(value: Optional[str]) -> Optional[Backend]:
    return None if value is None else Backend(value)


# --- commands ---------------------------------------------------------------


def cmd_solve(args) -> int:
    problem = _read_problem(args.input)
    nd, stats, report = run_algorithm(problem, args.algorithm, _backend(args.backend), args.input)
    _write_text(args.output, write_nd(nd, problem.num_objectives))
    if args.stats:
        payload = stats.as_dict()
        payload.update(algorithm=args.algorithm, nd_size=len(nd), wall_time=report.wall_time)
        Path(args.stats).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _ratio(a: float, b: float) -> float:
    return a / b if b else float("nan")


def cmd_compare(args) -> int:
    problem = _read_problem(args.input)
    backend = _backend(args.backend)
    nd_b, _, basic = run_algorithm(problem, "basic", backend, args.input)
    nd_i, _, improved = run_algorithm(problem, "improved", backend, args.input)
    fields = {
        "nd": len(nd_i),
        "ip_basic": basic.ip_count,
        "ip_improved": improved.ip_count,
        "ratio": round(_ratio(improved.ip_count, basic.ip_count), 4),
        "ip_per_nd": round(_ratio(improved.ip_count, len(nd_i)), 4),
        "same_nd": nd_b == nd_i,
    }
    print(" ".join(f"{k}={v}" for k, v in fields.items()))
    return EXIT_OK if nd_b == nd_i else EXIT_MISMATCH


def cmd_gen(args) -> int:
    cfg = GeneratorConfig(args.cols, args.rows, args.objectives, args.coeff_max, args.seed)
    text = f"# generated cols={cfg.cols} rows={cfg.rows} objectives={cfg.objectives} " \
        f"coeff_max={cfg.coeff_max} seed={cfg.seed}\n"
    _write_text(args.output, text + write_problem(generate_random(cfg)))
    return EXIT_OK


def cmd_verify(args) -> int:
    problem = _read_problem(args.input)
    oracle = brute_force_nd(problem, args.budget).nd
    backend = _backend(args.backend)
    results = {"oracle": oracle}
    for name in ALGORITHMS:
        results[name] = run_algorithm(problem, name, backend)[0]
    ok = True
    for name in ALGORITHMS:
        got = set(results[name])
        want = set(oracle)
        for v in sorted(want - got):
            print(f"{name}: missing {' '.join(map(str, v))}")
            ok = False
        for v in sorted(got - want):
            print(f"{name}: extra {' '.join(map(str, v))}")
            ok = False
    print(f"verify {'ok' if ok else 'MISMATCH'} nd={len(oracle)}")
    return EXIT_OK if ok else EXIT_MISMATCH


# --- bench ------------------------------------------------------------------

BENCH_COLUMNS = ("cols", "rows", "k", "coeff_max", "instances", "nd", "ip_basic", "ip_improved", "ratio", "ip_per_nd")


def load_suite(text: str) -> Tuple[List[GeneratorConfig], Optional[str]]:
    """Expand a suite document into generator configs.

    The document is a JSON object with ``settings`` (a list of objects holding
    ``cols``, ``rows``, ``objectives`` and optionally ``coeff_max``), ``seeds``
    (a list of seeds or a count meaning ``range(count)``; a setting may override
    it) and an optional ``backend``.
    """
    doc = json.loads(text) if text.strip() else {}
    if not isinstance(doc, dict):
        raise ValueError("suite must be a JSON object")
    default_seeds = doc.get("seeds", 20)
    configs = []
    for setting in doc.get("settings", []):
        seeds = setting.get("seeds", default_seeds)
        seeds = range(seeds) if isinstance(seeds, int) else seeds
        for seed in seeds:
            configs.append(
                GeneratorConfig(
                    setting["cols"],
                    setting["rows"],
                    setting["objectives"],
                    setting.get("coeff_max", 10),
                    seed,
                )
            )
    return configs, doc.get("backend")


def _bench_cell(cell: Tuple[GeneratorConfig, str, Optional[str]]) -> RunReport:
    cfg, algorithm, backend = cell
    name = f"{cfg.cols}x{cfg.rows}/k{cfg.objectives}/c{cfg.coeff_max}/s{cfg.seed}"
    return run_algorithm(generate_random(cfg), algorithm, _backend(backend), name)[2]


def worker_count() -> int:
    cap = os.environ.get("MOIPND_THREADS")
    workers = os.cpu_count() or 1
    if cap:
        workers = min(workers, max(1, int(cap)))
    return workers


def run_grid(
    configs: Sequence[GeneratorConfig],
    backend: Optional[str] = "bb",
    workers: int = 1,
    deadline: Optional[float] = None,
) -> List[Tuple[GeneratorConfig, RunReport, RunReport]]:
    """Solve every config with both algorithms.

    ``deadline`` is an absolute ``time.monotonic()`` value; instances not started
    before it are skipped, so the result may cover a prefix of ``configs``.
    """
    cells = [(cfg, alg, backend) for cfg in configs for alg in ALGORITHMS]
    if workers <= 1:
        reports = []
        for cell in cells:
            if deadline is not None and time.monotonic() > deadline:
                break
            reports.append(_bench_cell(cell))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_bench_cell, cells))
    pairs = []
    for i in range(0, len(reports) - 1, 2):
        pairs.append((configs[i // 2], reports[i], reports[i + 1]))
    return pairs


def summarize(pairs: Iterable[Tuple[GeneratorConfig, RunReport, RunReport]]) -> List[Dict]:
    """Per-setting means in the order settings first appear."""
    groups: Dict[tuple, list] = {}
    for cfg, basic, improved in pairs:
        groups.setdefault((cfg.cols, cfg.rows, cfg.objectives, cfg.coeff_max), []).append((basic, improved))
    rows = []
    for (cols, rows_, k, cmax), runs in groups.items():
        count = len(runs)

        def mean(values):
            return sum(values) / count

        rows.append(
            {
                "cols": cols,
                "rows": rows_,
                "k": k,
                "coeff_max": cmax,
                "instances": count,
                "nd": mean([i.nd_size for _, i in runs]),
                "ip_basic": mean([b.ip_count for b, _ in runs]),
                "ip_improved": mean([i.ip_count for _, i in runs]),
                "ratio": mean([_ratio(i.ip_count, b.ip_count) for b, i in runs]),
                "ip_per_nd": mean([_ratio(i.ip_count, i.nd_size) for _, i in runs]),
            }
        )
    return rows


def format_table(rows: Sequence[Dict]) -> str:
    lines = ["\t".join(BENCH_COLUMNS)]
    for row in rows:
        cells = []
        for col in BENCH_COLUMNS:
            v = row[col]
            cells.append(f"{v:.4f}" if isinstance(v, float) else str(v))
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def cmd_bench(args) -> int:
    configs, suite_backend = load_suite(Path(args.suite).read_text())
    backend = args.backend or suite_backend
    pairs = run_grid(configs, backend, worker_count())
    table = format_table(summarize(pairs))
    sys.stdout.write(table)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "table.tsv").write_text(table)
        runs = [asdict(r) for _, b, i in pairs for r in (b, i)]
        (out / "runs.json").write_text(json.dumps(runs, indent=2) + "\n")
    return EXIT_OK


# --- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moipnd", description="Enumerate nondominated sets of multi-objective integer programs.")
    sub = parser.add_subparsers(dest="command", required=True)
    backends = [b.value for b in Backend]

    p = sub.add_parser("solve", help="solve one instance")
    p.add_argument("--input", required=True)
    p.add_argument("--algorithm", choices=sorted(ALGORITHMS), default="improved")
    p.add_argument("--backend", choices=backends)
    p.add_argument("--output", help="ND file (default stdout)")
    p.add_argument("--stats", help="write solve statistics as JSON")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("compare", help="run both algorithms and report IP counts")
    p.add_argument("--input", required=True)
    p.add_argument("--backend", choices=backends)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("gen", help="write a random instance")
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--objectives", type=int, required=True)
    p.add_argument("--coeff-max", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check both algorithms against brute force")
    p.add_argument("--input", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--backend", choices=backends)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run a suite of generated instances")
    p.add_argument("--suite", required=True)
    p.add_argument("--out")
    p.add_argument("--backend", choices=backends)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"oracle refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
