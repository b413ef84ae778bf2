"""Single-objective integer programming backends."""

from .scalar import (
    INFEASIBLE,
    Backend,
    ScalarIP,
    ScalarResult,
    Status,
    default_backend,
    solve_scalar,
    tighten,
)

__all__ = [
    "INFEASIBLE",
    "Backend",
    "ScalarIP",
    "ScalarResult",
    "Status",
    "default_backend",
    "solve_scalar",
    "tighten",
]
