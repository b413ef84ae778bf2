"""Nondominated set enumeration for multi-objective integer programs."""

from .errors import BudgetExceeded, ContractError, ParseError, ResourceError
from .model import (
    Constraint,
    NDSet,
    Problem,
    Sense,
    dominates,
    evaluate,
    filter_nondominated,
    is_feasible,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "ContractError",
    "ParseError",
    "ResourceError",
    "Constraint",
    "NDSet",
    "Problem",
    "Sense",
    "dominates",
    "evaluate",
    "filter_nondominated",
    "is_feasible",
]
