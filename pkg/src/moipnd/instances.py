"""Problem files, random instance generation, point-set instances and the brute-force oracle."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import List, Sequence

from .errors import BudgetExceeded, ContractError, ParseError
from .model import (
    Constraint,
    NDSet,
    Problem,
    Sense,
    evaluate,
    filter_nondominated,
    is_feasible,
)

# The fourteen nondominated vectors of the quad-objective worked example.
QUAD_EXAMPLE_VECTORS = (
    (11, 19, 12, 14),
    (12, 11, 11, 13),
    (13, 9, 16, 11),
    (14, 8, 23, 13),
    (15, 16, 7, 12),
    (16, 15, 10, 13),
    (17, 13, 15, 11),
    (19, 15, 14, 11),
    (15, 17, 11, 10),
    (17, 16, 13, 11),
    (13, 19, 17, 10),
    (14, 11, 16, 9),
    (18, 15, 15, 9),
    (16, 18, 15, 9),
)


# --- file formats -----------------------------------------------------------


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line.split()


def _int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} {token!r} is not an integer", line) from None


def _rational(token: str, line: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{token!r} is not a rational number", line) from None


def parse_problem(text: str) -> Problem:
    """Read the line-oriented ``MOIP n m k`` format."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty problem file", 1)
    it = iter(lines)
    number, head = next(it)
    if len(head) != 4 or head[0] != "MOIP":
        raise ParseError("header must be 'MOIP <n> <m> <k>'", number)
    n, m, k = (_int(t, number, "header field") for t in head[1:])
    if n < 1:
        raise ParseError("need at least one variable", number)
    if m < 0:
        raise ParseError("constraint count cannot be negative", number)
    if k < 1:
        raise ParseError("need at least one objective", number)

    def take(what: str):
        try:
            return next(it)
        except StopIteration:
            last = lines[-1][0]
            raise ParseError(f"file ends before {what}", last) from None

    objectives = []
    for i in range(k):
        number, toks = take(f"objective row {i + 1}")
        if len(toks) != n:
            raise ParseError(f"objective row needs {n} integers, found {len(toks)}", number)
        objectives.append(tuple(_int(t, number, "objective coefficient") for t in toks))

    constraints = []
    for i in range(m):
        number, toks = take(f"constraint row {i + 1}")
        if len(toks) != n + 2:
            raise ParseError(f"constraint row needs {n} coefficients, a sense and a rhs", number)
        try:
            sense = Sense.parse(toks[n])
        except ValueError:
            raise ParseError(f"unknown sense {toks[n]!r}", number) from None
        coeffs = tuple(_rational(t, number) for t in toks[:n])
        constraints.append(Constraint(coeffs, sense, _rational(toks[n + 1], number)))

    bounds = []
    for j in range(n):
        number, toks = take(f"bounds of variable {j + 1}")
        if len(toks) != 2:
            raise ParseError("bounds line needs '<lower> <upper>'", number)
        lo, hi = (_int(t, number, "bound") for t in toks)
        if lo > hi:
            raise ParseError(f"lower bound {lo} exceeds upper bound {hi}", number)
        bounds.append((lo, hi))

    for number, _ in it:
        raise ParseError("unexpected content after the bounds section", number)
    return Problem(tuple(objectives), tuple(constraints), tuple(bounds))


def write_problem(problem: Problem) -> str:
    n, k = problem.num_vars, problem.num_objectives
    out = [f"MOIP {n} {len(problem.constraints)} {k}"]
    out += [" ".join(map(str, row)) for row in problem.objective_coeffs]
    for c in problem.constraints:
        out.append(" ".join([*map(str, c.coeffs), c.sense.value, str(c.rhs)]))
    out += [f"{lo} {hi}" for lo, hi in problem.var_bounds]
    return "\n".join(out) + "\n"


def write_nd(nd: NDSet, k: int) -> str:
    lines = [f"ND {len(nd)} {k}"] + [" ".join(map(str, v)) for v in nd]
    return "\n".join(lines) + "\n"


def parse_nd(text: str) -> NDSet:
    lines = list(_content_lines(text))
    if not lines or lines[0][1][0] != "ND" or len(lines[0][1]) != 3:
        raise ParseError("header must be 'ND <count> <k>'", lines[0][0] if lines else 1)
    number, head = lines[0]
    count, k = _int(head[1], number, "count"), _int(head[2], number, "k")
    body = lines[1:]
    if len(body) != count:
        raise ParseError(f"header announces {count} vectors, found {len(body)}", number)
    vectors = []
    for number, toks in body:
        if len(toks) != k:
            raise ParseError(f"vector needs {k} integers", number)
        vectors.append(tuple(_int(t, number, "value") for t in toks))
    return NDSet(tuple(vectors))


# --- point-set instances ----------------------------------------------------


def build_point_instance(vectors: Sequence[Sequence[int]]) -> Problem:
    """One binary variable per vector and ``sum(x) = 1``: the feasible image is the input set."""
    vectors = [tuple(int(v) for v in vec) for vec in vectors]
    if not vectors:
        raise ContractError("need at least one vector")
    k = len(vectors[0])
    if k < 1 or any(len(v) != k for v in vectors):
        raise ContractError("vectors must share one nonzero length")
    n = len(vectors)
    objectives = tuple(tuple(v[i] for v in vectors) for i in range(k))
    pick_one = Constraint((1,) * n, Sense.EQ, 1)
    return Problem(objectives, (pick_one,), ((0, 1),) * n)


def quad_example() -> Problem:
    """The shipped fourteen-point quad-objective instance."""
    text = resources.files("moipnd").joinpath("data/quad_example.moip").read_text()
    return parse_problem(text)


# --- random instances -------------------------------------------------------

_MASK = (1 << 64) - 1


class SplitMix64:
    """64-bit SplitMix generator; ``stream`` separates independent sequences per seed."""

    def __init__(self, seed: int, stream: int = 0):
        self.state = (seed ^ ((stream + 1) * 0xD1B54A32D192ED03)) & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]`` by rejection, free of modulo bias."""
        span = hi - lo + 1
        limit = ((1 << 64) // span) * span
        while True:
            x = self.next_u64()
            if x < limit:
                return lo + x % span


OBJECTIVE_STREAM = 0
CONSTRAINT_STREAM = 1


@dataclass(frozen=True)
class GeneratorConfig:
    cols: int
    rows: int
    objectives: int
    coeff_max: int = 10
    seed: int = 0

    def __post_init__(self):
        if min(self.cols, self.rows, self.objectives) < 1:
            raise ContractError("cols, rows and objectives must be at least 1")
        if self.coeff_max < 1:
            raise ContractError("coeff_max must be at least 1")
        object.__setattr__(self, "seed", self.seed & _MASK)


def generate_random(cfg: GeneratorConfig) -> Problem:
    """Binary covering instance with U[1, coeff_max] objective and row coefficients.

    Each row is ``a.x >= round(sum(a) * mean_upper / 2)``, so the all-ones point is
    always feasible.
    """
    n, m, k = cfg.cols, cfg.rows, cfg.objectives
    obj_rng = SplitMix64(cfg.seed, OBJECTIVE_STREAM)
    row_rng = SplitMix64(cfg.seed, CONSTRAINT_STREAM)
    objectives = tuple(
        tuple(obj_rng.randint(1, cfg.coeff_max) for _ in range(n)) for _ in range(k)
    )
    bounds = ((0, 1),) * n
    mean_upper = Fraction(sum(hi for _, hi in bounds), n)
    constraints = []
    for _ in range(m):
        row = tuple(row_rng.randint(1, cfg.coeff_max) for _ in range(n))
        rhs = math.floor(Fraction(sum(row)) * mean_upper / 2 + Fraction(1, 2))
        rhs = min(rhs, sum(a * hi for a, (_, hi) in zip(row, bounds)))
        constraints.append(Constraint(row, Sense.GE, rhs))
    return Problem(objectives, tuple(constraints), bounds)


# --- oracle -----------------------------------------------------------------

DEFAULT_BUDGET = 1 << 16


@dataclass(frozen=True)
class OracleReport:
    nd: NDSet
    feasible_points_enumerated: int
    image_size: int


def brute_force_nd(problem: Problem, budget: int = DEFAULT_BUDGET) -> OracleReport:
    """Enumerate the whole variable box and filter the feasible image by dominance."""
    size = problem.box_size()
    if size > budget:
        raise BudgetExceeded(f"variable box has {size} points, oracle budget is {budget}")
    ranges = [range(lo, hi + 1) for lo, hi in problem.var_bounds]
    image = set()
    feasible = 0
    for x in itertools.product(*ranges):
        if is_feasible(problem, x):
            feasible += 1
            image.add(evaluate(problem, x))
    return OracleReport(filter_nondominated(image), feasible, len(image))


def objective_image(problem: Problem, budget: int = DEFAULT_BUDGET) -> List[tuple]:
    """Distinct objective vectors of all feasible points, sorted."""
    size = problem.box_size()
    if size > budget:
        raise BudgetExceeded(f"variable box has {size} points, oracle budget is {budget}")
    ranges = [range(lo, hi + 1) for lo, hi in problem.var_bounds]
    return sorted({evaluate(problem, x) for x in itertools.product(*ranges) if is_feasible(problem, x)})
