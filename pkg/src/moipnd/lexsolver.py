"""Lexicographic minimization of (f_1, ..., f_k) under upper bounds on f_2..f_k.

One call of :func:`solve_lex` is the unit counted as "one IP" by the engine,
even though it runs up to k scalar solves internally.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .errors import ContractError
from .ipsolver import Backend, ScalarIP, default_backend, solve_scalar
from .model import Constraint, ObjectiveVector, Problem, Sense

# upper bounds on objectives 2..k in order; None means unbounded
BoundVector = Tuple[Optional[int], ...]


class LexStatus(enum.Enum):
    FOUND = "found"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LexResult:
    status: LexStatus
    vector: Optional[ObjectiveVector] = None
    scalar_solves: int = 0

    @property
    def found(self) -> bool:
        return self.status is LexStatus.FOUND


def bound_constraints(problem: Problem, bounds: Sequence[Optional[int]]) -> Tuple[Constraint, ...]:
    """``f_j(x) <= l_j`` rows for the trailing objectives covered by ``bounds``."""
    k = problem.num_objectives
    first = k - len(bounds)
    return tuple(
        Constraint(problem.objective_coeffs[first + i], Sense.LE, limit)
        for i, limit in enumerate(bounds)
        if limit is not None
    )


def solve_lex(
    problem: Problem,
    bounds: Optional[Sequence[Optional[int]]] = None,
    backend: Optional[Backend] = None,
) -> LexResult:
    """Minimize f_1, then f_2 with f_1 pinned, and so on up to f_k.

    ``bounds`` holds one optional upper bound per objective 2..k. Stage i adds
    the equalities f_1 = v_1, ..., f_{i-1} = v_{i-1} from the earlier stages.
    """
    k = problem.num_objectives
    bounds = (None,) * (k - 1) if bounds is None else tuple(bounds)
    if len(bounds) != k - 1:
        raise ContractError(f"expected {k - 1} bounds for objectives 2..{k}, got {len(bounds)}")
    backend = default_backend(problem) if backend is None else Backend(backend)

    extra = bound_constraints(problem, bounds)
    values = []
    for i in range(k):
        res = solve_scalar(ScalarIP(problem, i, extra), backend)
        if not res.optimal:
            if i == 0:
                return LexResult(LexStatus.INFEASIBLE, scalar_solves=1)
            raise RuntimeError(f"stage {i + 1} infeasible after a feasible stage 1")
        values.append(res.value)
        extra = extra + (Constraint(problem.objective_coeffs[i], Sense.EQ, res.value),)
    return LexResult(LexStatus.FOUND, tuple(values), k)
