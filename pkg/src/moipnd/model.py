"""Core value types: problems, objective vectors, dominance and nondominated sets."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Tuple

from .errors import ContractError

ObjectiveVector = Tuple[int, ...]


class Sense(enum.Enum):
    LE = "<="
    GE = ">="
    EQ = "="

    @classmethod
    def parse(cls, token: str) -> "Sense":
        for sense in cls:
            if sense.value == token:
                return sense
        raise ValueError(f"unknown constraint sense {token!r}")

    def holds(self, lhs, rhs) -> bool:
        if self is Sense.LE:
            return lhs <= rhs
        if self is Sense.GE:
            return lhs >= rhs
        return lhs == rhs


@dataclass(frozen=True)
class Constraint:
    coeffs: Tuple[Fraction, ...]
    sense: Sense
    rhs: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))
        if not isinstance(self.sense, Sense):
            object.__setattr__(self, "sense", Sense.parse(self.sense))

    def lhs(self, x: Sequence[int]) -> Fraction:
        return sum((c * v for c, v in zip(self.coeffs, x) if c and v), Fraction(0))

    def satisfied_by(self, x: Sequence[int]) -> bool:
        return self.sense.holds(self.lhs(x), self.rhs)


@dataclass(frozen=True)
class Problem:
    """A multi-objective integer program, every objective minimized.

    ``objective_coeffs`` is a k x n integer matrix, ``constraints`` a tuple of
    :class:`Constraint` rows and ``var_bounds`` one inclusive ``(lower, upper)``
    integer pair per variable. Instances are immutable and hashable.
    """

    objective_coeffs: Tuple[Tuple[int, ...], ...]
    constraints: Tuple[Constraint, ...] = ()
    var_bounds: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        objs = tuple(tuple(row) for row in self.objective_coeffs)
        if not objs:
            raise ContractError("a problem needs at least one objective")
        n = len(objs[0])
        if n < 1:
            raise ContractError("a problem needs at least one variable")
        for row in objs:
            if len(row) != n:
                raise ContractError("objective rows differ in length")
            for c in row:
                if isinstance(c, bool) or int(c) != c:
                    raise ContractError(f"objective coefficient {c!r} is not an integer")
        objs = tuple(tuple(int(c) for c in row) for row in objs)

        cons = tuple(
            c if isinstance(c, Constraint) else Constraint(*c) for c in self.constraints
        )
        for c in cons:
            if len(c.coeffs) != n:
                raise ContractError("constraint row length does not match variable count")

        bounds = tuple((int(lo), int(hi)) for lo, hi in self.var_bounds)
        if len(bounds) != n:
            raise ContractError("every variable needs finite lower and upper bounds")
        for lo, hi in bounds:
            if lo > hi:
                raise ContractError(f"empty variable range [{lo}, {hi}]")

        object.__setattr__(self, "objective_coeffs", objs)
        object.__setattr__(self, "constraints", cons)
        object.__setattr__(self, "var_bounds", bounds)

    @property
    def num_vars(self) -> int:
        return len(self.objective_coeffs[0])

    @property
    def num_objectives(self) -> int:
        return len(self.objective_coeffs)

    def box_size(self) -> int:
        size = 1
        for lo, hi in self.var_bounds:
            size *= hi - lo + 1
        return size


def dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff ``a`` is no worse than ``b`` everywhere and better somewhere (minimization)."""
    if len(a) != len(b):
        raise ContractError(f"cannot compare vectors of length {len(a)} and {len(b)}")
    strict = False
    for x, y in zip(a, b):
        if x > y:
            return False
        if x < y:
            strict = True
    return strict


@dataclass(frozen=True)
class NDSet:
    """Duplicate-free objective vectors held in ascending lexicographic order.

    The constructor only canonicalizes; it does not filter dominated points.
    Use :func:`filter_nondominated` for that.
    """

    vectors: Tuple[ObjectiveVector, ...] = field(default=())

    def __post_init__(self):
        canon = tuple(sorted({tuple(int(v) for v in vec) for vec in self.vectors}))
        if canon and len({len(v) for v in canon}) != 1:
            raise ContractError("vectors of mixed length in one set")
        object.__setattr__(self, "vectors", canon)

    def __iter__(self) -> Iterator[ObjectiveVector]:
        return iter(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def __contains__(self, item) -> bool:
        return tuple(item) in set(self.vectors)

    def __bool__(self) -> bool:
        return bool(self.vectors)

    def union(self, other: Iterable[Sequence[int]]) -> "NDSet":
        return NDSet(self.vectors + tuple(tuple(v) for v in other))

    def is_pairwise_nondominated(self) -> bool:
        vs = self.vectors
        return not any(dominates(a, b) for a in vs for b in vs)


def filter_nondominated(points: Iterable[Sequence[int]]) -> NDSet:
    """Keep exactly the points that no other input point dominates."""
    pts = sorted({tuple(int(v) for v in p) for p in points})
    if pts and len({len(p) for p in pts}) != 1:
        raise ContractError("points of mixed length")
    kept: list[ObjectiveVector] = []
    # a dominator is lexicographically smaller, and some kept point then dominates too
    for p in pts:
        if not any(dominates(q, p) for q in kept):
            kept.append(p)
    return NDSet(tuple(kept))


def evaluate(problem: Problem, x: Sequence[int]) -> ObjectiveVector:
    if len(x) != problem.num_vars:
        raise ContractError("assignment length does not match variable count")
    return tuple(
        sum(c * v for c, v in zip(row, x)) for row in problem.objective_coeffs
    )


def is_feasible(problem: Problem, x: Sequence[int]) -> bool:
    if len(x) != problem.num_vars:
        raise ContractError("assignment length does not match variable count")
    for v, (lo, hi) in zip(x, problem.var_bounds):
        if v != int(v) or not lo <= v <= hi:
            return False
    return all(c.satisfied_by(x) for c in problem.constraints)
