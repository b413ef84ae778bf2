"""Single-objective integer programs built on top of a multi-objective base problem."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from ..errors import ContractError
from ..model import Constraint, Problem, Sense


class Backend(enum.Enum):
    ENUM = "enum"
    BB = "bb"


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class ScalarIP:
    """Minimize one integer row over the base problem's feasible set plus extra rows.

    ``objective`` is either an objective index into ``base.objective_coeffs``
    (0-based) or an explicit integer coefficient row.
    """

    base: Problem
    objective: Union[int, Tuple[int, ...]] = 0
    extra_constraints: Tuple[Constraint, ...] = ()

    def __post_init__(self):
        n = self.base.num_vars
        if not isinstance(self.objective, int):
            row = tuple(self.objective)
            if len(row) != n or any(int(c) != c for c in row):
                raise ContractError("objective row must hold n integers")
            object.__setattr__(self, "objective", tuple(int(c) for c in row))
        elif not 0 <= self.objective < self.base.num_objectives:
            raise ContractError(f"objective index {self.objective} out of range")
        extra = tuple(
            c if isinstance(c, Constraint) else Constraint(*c) for c in self.extra_constraints
        )
        for c in extra:
            if len(c.coeffs) != n:
                raise ContractError("extra constraint row length does not match variable count")
        object.__setattr__(self, "extra_constraints", extra)

    @property
    def objective_row(self) -> Tuple[int, ...]:
        if isinstance(self.objective, int):
            return self.base.objective_coeffs[self.objective]
        return self.objective

    @property
    def constraints(self) -> Tuple[Constraint, ...]:
        return self.base.constraints + self.extra_constraints


@dataclass(frozen=True)
class ScalarResult:
    status: Status
    solution: Optional[Tuple[int, ...]] = None
    value: Optional[int] = None

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


INFEASIBLE = ScalarResult(Status.INFEASIBLE)


def tighten(ip: ScalarIP, row: Sequence, sense, rhs) -> ScalarIP:
    """Return a copy of ``ip`` with one more linear constraint; ``ip`` is untouched."""
    if len(row) != ip.base.num_vars:
        raise ContractError("constraint row length does not match variable count")
    sense = sense if isinstance(sense, Sense) else Sense.parse(sense)
    extra = ip.extra_constraints + (Constraint(tuple(row), sense, Fraction(rhs)),)
    return ScalarIP(ip.base, ip.objective, extra)


def solve_scalar(ip: ScalarIP, backend: Backend = Backend.BB) -> ScalarResult:
    """Optimal value and a minimizer of ``ip``, or INFEASIBLE."""
    backend = Backend(backend)
    if backend is Backend.ENUM:
        from .enumeration import solve_enum

        return solve_enum(ip)
    from .bnb import solve_bb

    return solve_bb(ip)


AUTO_ENUM_LIMIT = 1 << 20


def default_backend(problem: Problem) -> Backend:
    """Enumeration while the variable box stays small, branch-and-bound beyond."""
    return Backend.ENUM if problem.box_size() <= AUTO_ENUM_LIMIT else Backend.BB
