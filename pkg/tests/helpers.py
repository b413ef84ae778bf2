"""Shared fixtures: the deterministic small-instance suite and golden trace data."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import List, Optional, Tuple

from moipnd.engine import CacheAnswer, SubproblemKey, solve_basic, solve_improved
from moipnd.instances import GeneratorConfig, SplitMix64, brute_force_nd, generate_random
from moipnd.model import NDSet, Problem

DATA = Path(__file__).parent / "data"

# stream index used only for drawing suite parameters
SUITE_STREAM = 7


def suite_configs(count: int = 200, seed: int = 2024) -> List[GeneratorConfig]:
    """n <= 10 binary variables, m in 2..5, k in 2..4, coeff_max in {10, 20}."""
    rng = SplitMix64(seed, SUITE_STREAM)
    configs = []
    for i in range(count):
        configs.append(
            GeneratorConfig(
                cols=rng.randint(4, 10),
                rows=rng.randint(2, 5),
                objectives=2 + i % 3,
                coeff_max=(10, 20)[rng.randint(0, 1)],
                seed=rng.next_u64(),
            )
        )
    return configs


@dataclass
class SuiteRun:
    cfg: GeneratorConfig
    problem: Problem
    oracle: NDSet
    basic: NDSet
    improved: NDSet
    ip_basic: int
    ip_improved: int
    answers: List[Tuple[SubproblemKey, CacheAnswer]] = field(default_factory=list)


@lru_cache(maxsize=1)
def suite_runs() -> Tuple[Tuple[SuiteRun, ...], float]:
    """Every suite instance solved three ways; also returns the wall time."""
    start = time.perf_counter()
    runs = []
    for cfg in suite_configs():
        problem = generate_random(cfg)
        oracle = brute_force_nd(problem).nd
        basic, sb = solve_basic(problem)
        answers = []
        improved, si = solve_improved(problem, audit=lambda k, a: answers.append((k, a)))
        runs.append(SuiteRun(cfg, problem, oracle, basic, improved, sb.ip_count, si.ip_count, answers))
    return tuple(runs), time.perf_counter() - start


def parse_key(text: str) -> SubproblemKey:
    parts = text.split()
    return SubproblemKey(int(parts[0]), tuple(None if p == "inf" else int(p) for p in parts[1:]))


@dataclass(frozen=True)
class TraceRow:
    key: SubproblemKey
    outcome: Optional[Tuple[int, ...]]
    answered_by: Optional[SubproblemKey]


def quad_trace() -> List[TraceRow]:
    rows = []
    for line in (DATA / "quad_trace.txt").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        key, outcome, source = (part.strip() for part in line.split("|"))
        rows.append(
            TraceRow(
                parse_key(key),
                None if outcome == "inf" else tuple(int(v) for v in outcome.split()),
                None if source == "-" else parse_key(source),
            )
        )
    return rows


RESULTS: List[Tuple[str, bool, str]] = []


def record(criterion: str, ok: bool, detail: str) -> None:
    """Log one acceptance verdict; the terminal summary prints them all."""
    RESULTS.append((criterion, ok, detail))
    print(f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}")
