"""Recursive enumeration of the nondominated set, with and without subproblem reuse.

A subproblem is identified by ``(q, l_{q+1}, ..., l_k)``: lexicographically
minimize the first q objectives and then f_{q+1}, subject to ``f_j <= l_j``.
For q = 1 it is a single lexicographic solve. For q >= 2 it is solved by a loop
that starts with ``l_q`` unbounded, solves ``(q-1, l_q, l_{q+1}, ..., l_k)``,
collects the vectors found, lowers ``l_q`` to one below the largest f_q among
them, and stops at the first infeasible child. The whole problem is the same
loop at q = k with no bounds.

The improved variant keeps every solved subproblem. Before solving, it looks
for a cached relaxation: an infeasible one proves the new subproblem
infeasible, and a solved one whose vectors all satisfy the new bounds answers
it outright.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .errors import ContractError
from .ipsolver import Backend, default_backend
from .lexsolver import solve_lex
from .model import NDSet, Problem


def _fmt(limit: Optional[int]) -> str:
    return "∞" if limit is None else str(limit)


@dataclass(frozen=True)
class SubproblemKey:
    """Level ``q`` plus upper bounds on objectives q+1..k (``None`` is unbounded)."""

    q: int
    bounds: Tuple[Optional[int], ...] = ()

    def __post_init__(self):
        if self.q < 1:
            raise ContractError("subproblem level must be at least 1")
        object.__setattr__(self, "bounds", tuple(self.bounds))

    def __str__(self) -> str:
        return "(" + ",".join([str(self.q)] + [_fmt(b) for b in self.bounds]) + ")"

    def admits(self, vector) -> bool:
        """True when ``vector`` satisfies every bound of this key."""
        return all(
            limit is None or value <= limit
            for value, limit in zip(vector[self.q :], self.bounds)
        )


def _weaker_or_equal(a: Optional[int], b: Optional[int]) -> bool:
    if a is None:
        return True
    return b is not None and a >= b


def is_relaxation(a: SubproblemKey, b: SubproblemKey) -> bool:
    """True iff ``a`` has the same level as ``b`` and strictly weaker bounds."""
    if a.q != b.q or len(a.bounds) != len(b.bounds):
        return False
    strict = False
    for x, y in zip(a.bounds, b.bounds):
        if not _weaker_or_equal(x, y):
            return False
        if x != y:
            strict = True
    return strict


@dataclass(frozen=True)
class CacheEntry:
    key: SubproblemKey
    nd: Optional[NDSet]  # None records a proven-infeasible subproblem
    insertion_index: int

    @property
    def infeasible(self) -> bool:
        return self.nd is None


class Lookup(enum.Enum):
    REUSE = "reuse"
    PROVEN_INFEASIBLE = "proven_infeasible"
    NONE = "none"


@dataclass(frozen=True)
class CacheAnswer:
    kind: Lookup
    nd: Optional[NDSet] = None
    source: Optional[SubproblemKey] = None


_NO_ANSWER = CacheAnswer(Lookup.NONE)


class SubproblemCache:
    """Solved subproblems of one top-level solve, grouped by level, never evicted."""

    def __init__(self):
        self._by_level: Dict[int, List[CacheEntry]] = defaultdict(list)
        self._exact: Dict[SubproblemKey, CacheEntry] = {}
        self.examined = 0

    def __len__(self) -> int:
        return len(self._exact)

    def __iter__(self):
        for entries in self._by_level.values():
            yield from entries

    def insert(self, key: SubproblemKey, nd: Optional[NDSet]) -> CacheEntry:
        entry = CacheEntry(key, nd, len(self._exact))
        if key in self._exact:
            self._by_level[key.q].remove(self._exact[key])
        self._exact[key] = entry
        self._by_level[key.q].append(entry)
        return entry

    def find_usable_relaxation(self, key: SubproblemKey) -> CacheAnswer:
        hit = self._exact.get(key)
        if hit is not None:
            kind = Lookup.PROVEN_INFEASIBLE if hit.infeasible else Lookup.REUSE
            return CacheAnswer(kind, hit.nd, hit.key)
        for entry in reversed(self._by_level.get(key.q, ())):
            if not is_relaxation(entry.key, key):
                continue
            self.examined += 1
            if entry.infeasible:
                return CacheAnswer(Lookup.PROVEN_INFEASIBLE, None, entry.key)
            if all(key.admits(v) for v in entry.nd):
                return CacheAnswer(Lookup.REUSE, entry.nd, entry.key)
        return _NO_ANSWER


def find_usable_relaxation(cache: SubproblemCache, key: SubproblemKey) -> CacheAnswer:
    return cache.find_usable_relaxation(key)


def next_bound(nd_star: NDSet, level: int) -> int:
    """One below the largest value of objective ``level`` (1-based) in ``nd_star``."""
    if not nd_star:
        raise ContractError("next_bound needs a nonempty set")
    return max(v[level - 1] for v in nd_star) - 1


@dataclass
class SolveStats:
    ip_count: int = 0
    raw_scalar_solves: int = 0
    cache_reuses: int = 0
    infeasible_shortcuts: int = 0
    relaxations_examined: int = 0
    per_level_iterations: Dict[int, int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = asdict(self)
        out["per_level_iterations"] = {str(k): v for k, v in sorted(self.per_level_iterations.items())}
        return out


@dataclass(frozen=True)
class TraceEvent:
    """One subproblem visit. ``action`` is "solved", "reused" or "shortcut"."""

    key: SubproblemKey
    action: str
    nd: Optional[NDSet]
    source: Optional[SubproblemKey] = None


AuditHook = Callable[[SubproblemKey, CacheAnswer], None]


class _Recursion:
    def __init__(self, problem: Problem, backend, reuse: bool, trace, audit):
        self.problem = problem
        self.k = problem.num_objectives
        self.backend = default_backend(problem) if backend is None else Backend(backend)
        self.cache = SubproblemCache() if reuse else None
        self.stats = SolveStats()
        self.trace = trace
        self.audit = audit

    def solve(self, q: int, bounds: Tuple[Optional[int], ...]) -> Optional[NDSet]:
        key = SubproblemKey(q, bounds)
        cached = self.cache is not None and q < self.k
        if cached:
            answer = self.cache.find_usable_relaxation(key)
            if answer.kind is not Lookup.NONE:
                if answer.kind is Lookup.REUSE:
                    self.stats.cache_reuses += 1
                    action = "reused"
                else:
                    self.stats.infeasible_shortcuts += 1
                    action = "shortcut"
                if self.trace is not None:
                    self.trace.append(TraceEvent(key, action, answer.nd, answer.source))
                if self.audit is not None:
                    self.audit(key, answer)
                return answer.nd

        result = self._base(bounds) if q == 1 else self._loop(q, bounds)
        if cached:
            self.cache.insert(key, result)
        if self.trace is not None:
            self.trace.append(TraceEvent(key, "solved", result))
        return result

    def _base(self, bounds) -> Optional[NDSet]:
        lex = solve_lex(self.problem, bounds, self.backend)
        self.stats.ip_count += 1
        self.stats.raw_scalar_solves += lex.scalar_solves
        return NDSet((lex.vector,)) if lex.found else None

    def _loop(self, q: int, bounds) -> Optional[NDSet]:
        found = set()
        limit: Optional[int] = None
        iterations = self.stats.per_level_iterations
        while True:
            iterations[q] = iterations.get(q, 0) + 1
            sub = self.solve(q - 1, (limit,) + bounds)
            if sub is None:
                break
            found.update(sub)
            limit = next_bound(sub, q)
        return NDSet(tuple(found)) if found else None

    def run(self) -> Tuple[NDSet, SolveStats]:
        nd = self.solve(self.k, ())
        if self.cache is not None:
            self.stats.relaxations_examined = self.cache.examined
        return (nd if nd is not None else NDSet()), self.stats


def solve_basic(
    problem: Problem,
    backend: Optional[Backend] = None,
    trace: Optional[list] = None,
) -> Tuple[NDSet, SolveStats]:
    """The plain recursion: every subproblem is solved from scratch."""
    return _Recursion(problem, backend, False, trace, None).run()


def solve_improved(
    problem: Problem,
    backend: Optional[Backend] = None,
    trace: Optional[list] = None,
    audit: Optional[AuditHook] = None,
) -> Tuple[NDSet, SolveStats]:
    """The recursion with cached subproblems and relaxation reuse.

    ``audit`` is called with every key answered from the cache and the answer
    given, so callers can re-solve it directly and compare.
    """
    return _Recursion(problem, backend, True, trace, audit).run()


def solve_subproblem(
    problem: Problem, key: SubproblemKey, backend: Optional[Backend] = None
) -> Optional[NDSet]:
    """Solve one subproblem directly with the plain recursion; None if infeasible."""
    if len(key.bounds) != problem.num_objectives - key.q:
        raise ContractError(f"key {key} does not fit a {problem.num_objectives}-objective problem")
    return _Recursion(problem, backend, False, None, None).solve(key.q, key.bounds)
