"""Exact bounded-variable dual simplex on a fraction-free integer tableau.

Every row ``a.x (<=, >=, =) b`` gets a slack ``s`` with ``a.x + s = b`` and
bounds ``[0, inf)``, ``(-inf, 0]`` or ``[0, 0]``. Structural variables carry
finite integer bounds. The tableau stores ``d * B^-1 [A | I | r]`` as Python
integers where ``d = |det B|``; pivots use Bareiss's update, so each division is
exact and no rational arithmetic happens inside the loop. The last tableau row
holds ``d`` times the reduced costs.

With finite structural bounds, the all-slack basis with every structural at the
bound favoured by its cost sign is dual feasible, so the dual simplex never needs
a phase one. Bound changes (branching) keep dual feasibility, which lets a child
node restart from its parent's basis.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence

from ..errors import ResourceError
from ..model import Sense

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"


class ExactLP:
    """min c.x subject to integer rows, senses and rhs, and lower <= x <= upper."""

    def __init__(
        self,
        rows: Sequence[Sequence[int]],
        senses: Sequence[Sense],
        rhs: Sequence[int],
        cost: Sequence[int],
        lower: Sequence[int],
        upper: Sequence[int],
    ):
        m, n = len(rows), len(cost)
        self.m, self.n = m, n
        self.width = n + m
        self.cost = list(cost)
        self.lo: List[Optional[int]] = list(lower)
        self.hi: List[Optional[int]] = list(upper)
        for s in senses:
            self.lo.append(None if s is Sense.GE else 0)
            self.hi.append(None if s is Sense.LE else 0)
        self.at_upper = [c < 0 for c in cost] + [False] * m
        self.basic = [False] * n + [True] * m
        self.basis = list(range(n, n + m))
        self.d = 1
        self.pivots = 0

        start = [self.hi[j] if self.at_upper[j] else self.lo[j] for j in range(n)]
        table = []
        for i, row in enumerate(rows):
            unit = [0] * m
            unit[i] = 1
            resid = rhs[i] - sum(a * v for a, v in zip(row, start) if a and v)
            table.append(list(row) + unit + [resid])
        table.append(list(cost) + [0] * m + [-sum(c * v for c, v in zip(cost, start))])
        self.T = table

    def clone(self) -> "ExactLP":
        other = object.__new__(ExactLP)
        other.m, other.n, other.width = self.m, self.n, self.width
        other.cost = self.cost
        other.lo, other.hi = self.lo[:], self.hi[:]
        other.at_upper, other.basic = self.at_upper[:], self.basic[:]
        other.basis = self.basis[:]
        other.d = self.d
        other.pivots = 0
        other.T = [row[:] for row in self.T]
        return other

    def _nonbasic_value(self, j: int) -> int:
        return self.hi[j] if self.at_upper[j] else self.lo[j]

    def set_bounds(self, j: int, lower: int, upper: int) -> None:
        if self.basic[j]:
            self.lo[j], self.hi[j] = lower, upper
            return
        old = self._nonbasic_value(j)
        self.lo[j], self.hi[j] = lower, upper
        delta = self._nonbasic_value(j) - old
        if delta:
            last = self.width
            for row in self.T:
                if row[j]:
                    row[last] -= delta * row[j]

    def _leaving(self, bland: bool):
        d, last = self.d, self.width
        best, best_gap, best_dir = None, 0, 0
        for i, b in enumerate(self.basis):
            num = self.T[i][last]
            lo, hi = self.lo[b], self.hi[b]
            if lo is not None and num < lo * d:
                gap, direction = lo * d - num, 1
            elif hi is not None and num > hi * d:
                gap, direction = num - hi * d, -1
            else:
                continue
            if best is None:
                best, best_gap, best_dir = i, gap, direction
            elif bland:
                if b < self.basis[best]:
                    best, best_gap, best_dir = i, gap, direction
            elif gap > best_gap or (gap == best_gap and b < self.basis[best]):
                best, best_gap, best_dir = i, gap, direction
        return best, best_dir

    def _entering(self, r: int, direction: int) -> Optional[int]:
        row, obj = self.T[r], self.T[self.m]
        lo, hi, basic, at_upper = self.lo, self.hi, self.basic, self.at_upper
        best, best_num, best_den = None, 0, 1
        for j in range(self.width):
            a = row[j]
            if not a or basic[j] or (lo[j] is not None and lo[j] == hi[j]):
                continue
            # moving x_j off its bound must push the leaving variable toward feasibility
            if (a < 0) == (at_upper[j] == (direction > 0)):
                continue
            num, den = abs(obj[j]), abs(a)
            if best is None or num * best_den < best_num * den:
                best, best_num, best_den = j, num, den
        return best

    def _pivot(self, r: int, s: int, direction: int) -> None:
        T, d, last = self.T, self.d, self.width
        leaving = self.basis[r]
        enter_val = self._nonbasic_value(s)
        leave_val = self.lo[leaving] if direction > 0 else self.hi[leaving]
        if enter_val:
            for row in T:
                if row[s]:
                    row[last] += enter_val * row[s]
        if leave_val:
            T[r][last] -= leave_val * d

        pr = T[r]
        p = pr[s]
        for i, row in enumerate(T):
            if i == r:
                continue
            f = row[s]
            if f:
                T[i] = [(p * a - f * b) // d for a, b in zip(row, pr)]
            elif p != d:
                T[i] = [(p * a) // d for a in row]
        if p < 0:
            for i in range(len(T)):
                T[i] = [-a for a in T[i]]
            p = -p
        self.d = p

        self.basis[r] = s
        self.basic[s] = True
        self.basic[leaving] = False
        self.at_upper[leaving] = direction < 0
        self.pivots += 1

    def solve(self, max_pivots: Optional[int] = None) -> str:
        size = self.m + self.width
        switch = 4 * size
        limit = max_pivots if max_pivots is not None else 200 * size + 1000
        done = 0
        while True:
            r, direction = self._leaving(bland=done > switch)
            if r is None:
                return OPTIMAL
            s = self._entering(r, direction)
            if s is None:
                return INFEASIBLE
            self._pivot(r, s, direction)
            done += 1
            if done > limit:
                raise ResourceError(f"simplex exceeded {limit} pivots")

    def fix_by_reduced_cost(self, value: Fraction, cutoff: int) -> int:
        """Shrink nonbasic structural ranges that cannot lead to an objective <= ``cutoff``.

        Moving a nonbasic variable t steps off its bound raises the LP value by at
        least t times its reduced cost. Returns how many ranges were tightened.
        """
        room = cutoff - value
        if room < 0:
            return 0
        obj, d = self.T[self.m], self.d
        tightened = 0
        for j in range(self.n):
            lo, hi = self.lo[j], self.hi[j]
            if self.basic[j] or lo == hi:
                continue
            rc = obj[j]
            if rc > 0 and not self.at_upper[j]:
                steps = math.floor(room * d / rc)
                if lo + steps < hi:
                    self.hi[j] = lo + steps
                    tightened += 1
            elif rc < 0 and self.at_upper[j]:
                steps = math.floor(room * d / -rc)
                if hi - steps > lo:
                    self.lo[j] = hi - steps
                    tightened += 1
        return tightened

    def primal(self) -> List[Fraction]:
        """Current basic solution of the structural variables."""
        x: List[Fraction] = [Fraction(0)] * self.n
        for j in range(self.n):
            if not self.basic[j]:
                x[j] = Fraction(self._nonbasic_value(j))
        last = self.width
        for i, b in enumerate(self.basis):
            if b < self.n:
                x[b] = Fraction(self.T[i][last], self.d)
        return x

    def objective(self, x: Optional[List[Fraction]] = None) -> Fraction:
        x = self.primal() if x is None else x
        return sum((c * v for c, v in zip(self.cost, x) if c), Fraction(0))
