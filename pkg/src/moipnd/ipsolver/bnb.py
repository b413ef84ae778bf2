"""Branch-and-bound over the exact LP relaxation."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..errors import ResourceError
from .rows import integer_row
from .scalar import INFEASIBLE, ScalarIP, ScalarResult, Status
from .simplex import OPTIMAL, ExactLP

NODE_LIMIT = 500_000


def _most_fractional(x: List[Fraction]) -> Optional[int]:
    best, best_dist = None, Fraction(0)
    for j, v in enumerate(x):
        if v.denominator == 1:
            continue
        frac = v - math.floor(v)
        dist = min(frac, 1 - frac)
        if dist > best_dist:
            best, best_dist = j, dist
    return best


class _Rows:
    """Integer-scaled constraint rows for exact feasibility checks."""

    def __init__(self, ip: ScalarIP):
        self.rows = [integer_row(c) for c in ip.constraints]
        self.bounds = ip.base.var_bounds

    def admit(self, x: Sequence[int]) -> bool:
        for v, (lo, hi) in zip(x, self.bounds):
            if not lo <= v <= hi:
                return False
        for row, sense, rhs in self.rows:
            if not sense.holds(sum(a * v for a, v in zip(row, x) if a and v), rhs):
                return False
        return True


def _build_lp(ip: ScalarIP) -> Optional[ExactLP]:
    rows, senses, rhs = [], [], []
    for c in ip.constraints:
        row, sense, b = integer_row(c)
        if not any(row):
            if not sense.holds(0, b):
                return None
            continue
        rows.append(row)
        senses.append(sense)
        rhs.append(b)
    lower = [lo for lo, _ in ip.base.var_bounds]
    upper = [hi for _, hi in ip.base.var_bounds]
    return ExactLP(rows, senses, rhs, list(ip.objective_row), lower, upper)


def solve_bb(ip: ScalarIP, node_limit: Optional[int] = None) -> ScalarResult:
    """Depth-first branch-and-bound, most-fractional branching.

    Children are solved eagerly; the one with the better bound is explored first,
    the down branch on ties. Nodes try rounding the LP point while no incumbent
    exists, and nonbasic ranges are shrunk by reduced cost once one does.
    """
    node_limit = NODE_LIMIT if node_limit is None else node_limit
    root = _build_lp(ip)
    if root is None or root.solve() != OPTIMAL:
        return INFEASIBLE
    cost = ip.objective_row
    checker = _Rows(ip)

    best_val: Optional[int] = None
    best_x: Optional[Tuple[int, ...]] = None

    stack = [(math.ceil(root.objective()), root)]
    nodes = 1
    while stack:
        bound, lp = stack.pop()
        if best_val is not None and bound >= best_val:
            continue
        x = lp.primal()
        j = _most_fractional(x)
        if j is None:
            val = sum(c * int(v) for c, v in zip(cost, x))
            if best_val is None or val < best_val:
                best_val, best_x = val, tuple(int(v) for v in x)
            continue
        if best_val is None:
            for guess in (
                [math.ceil(v) for v in x],
                [math.floor(v) for v in x],
                [math.floor(v + Fraction(1, 2)) for v in x],
            ):
                if checker.admit(guess):
                    best_val = sum(c * v for c, v in zip(cost, guess))
                    best_x = tuple(guess)
                    break
            if best_val is not None and bound >= best_val:
                continue
        if best_val is not None:
            lp.fix_by_reduced_cost(lp.objective(x), best_val - 1)

        down = math.floor(x[j])
        children = []
        for order, (lo, hi) in enumerate(((lp.lo[j], down), (down + 1, lp.hi[j]))):
            if lo > hi:
                continue
            child = lp.clone()
            child.set_bounds(j, lo, hi)
            nodes += 1
            if child.solve() != OPTIMAL:
                continue
            child_bound = math.ceil(child.objective())
            if best_val is None or child_bound < best_val:
                children.append((child_bound, order, child))
        if nodes > node_limit:
            raise ResourceError(f"branch-and-bound exceeded {node_limit} nodes")
        # pushed worst first so the better bound, then the down branch, pops next
        children.sort(key=lambda t: (t[0], t[1]), reverse=True)
        stack.extend((b, child) for b, _, child in children)

    if best_x is None:
        return INFEASIBLE
    return ScalarResult(Status.OPTIMAL, best_x, best_val)
