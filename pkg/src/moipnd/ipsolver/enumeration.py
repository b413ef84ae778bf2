"""Exhaustive enumeration backend: the correctness reference for small boxes."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..errors import ResourceError
from ..model import Problem, Sense
from .rows import integer_row
from .scalar import INFEASIBLE, ScalarIP, ScalarResult, Status

MAX_BOX = 1 << 22
_CHUNK = 1 << 16
_SAFE = 1 << 62


def _dtype_for(rows, spans) -> type:
    # int64 unless a dot product could overflow
    worst = 0
    for row, rhs in rows:
        worst = max(worst, sum(abs(a) * s for a, s in zip(row, spans)), abs(rhs))
    return np.int64 if worst < _SAFE else object


def _mask(points: np.ndarray, constraints, spans) -> np.ndarray:
    keep = np.ones(len(points), dtype=bool)
    for c in constraints:
        row, sense, rhs = integer_row(c)
        dtype = _dtype_for([(row, rhs)], spans)
        lhs = points.astype(dtype) @ np.array(row, dtype=dtype)
        if sense is Sense.LE:
            keep &= lhs <= rhs
        elif sense is Sense.GE:
            keep &= lhs >= rhs
        else:
            keep &= lhs == rhs
    return keep


@lru_cache(maxsize=16)
def feasible_points(problem: Problem) -> np.ndarray:
    """All integer points of the variable box that satisfy the base constraints.

    Rows come out in lexicographic order of the assignment.
    """
    size = problem.box_size()
    if size > MAX_BOX:
        raise ResourceError(f"enumeration box has {size} points, limit is {MAX_BOX}")
    lows = np.array([lo for lo, _ in problem.var_bounds], dtype=np.int64)
    radices = [hi - lo + 1 for lo, hi in problem.var_bounds]
    spans = [max(abs(lo), abs(hi)) for lo, hi in problem.var_bounds]
    parts = []
    for start in range(0, size, _CHUNK):
        idx = np.arange(start, min(size, start + _CHUNK), dtype=np.int64)
        digits = np.empty((len(idx), len(radices)), dtype=np.int64)
        for j in range(len(radices) - 1, -1, -1):
            digits[:, j] = idx % radices[j]
            idx //= radices[j]
        pts = digits + lows
        parts.append(pts[_mask(pts, problem.constraints, spans)])
    out = np.concatenate(parts) if parts else np.empty((0, len(radices)), dtype=np.int64)
    out.setflags(write=False)
    return out


def solve_enum(ip: ScalarIP) -> ScalarResult:
    pts = feasible_points(ip.base)
    if ip.extra_constraints and len(pts):
        spans = [max(abs(lo), abs(hi)) for lo, hi in ip.base.var_bounds]
        pts = pts[_mask(pts, ip.extra_constraints, spans)]
    if not len(pts):
        return INFEASIBLE
    row = list(ip.objective_row)
    spans = [max(abs(lo), abs(hi)) for lo, hi in ip.base.var_bounds]
    dtype = _dtype_for([(row, 0)], spans)
    values = pts.astype(dtype) @ np.array(row, dtype=dtype)
    best = int(np.argmin(values))
    return ScalarResult(Status.OPTIMAL, tuple(int(v) for v in pts[best]), int(values[best]))
