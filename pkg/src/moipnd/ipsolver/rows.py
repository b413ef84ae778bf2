"""Integer scaling of rational constraint rows."""

from __future__ import annotations

from math import lcm
from typing import List, Tuple

from ..model import Constraint, Sense


def integer_row(c: Constraint) -> Tuple[List[int], Sense, int]:
    """Scale a rational row and its rhs by the lcm of their denominators."""
    scale = lcm(*(f.denominator for f in c.coeffs), c.rhs.denominator)
    coeffs = [int(f * scale) for f in c.coeffs]
    return coeffs, c.sense, int(c.rhs * scale)
