"""Expanded evaluation matrix: append ``v`` equally spaced virtual alternatives.

Virtual alternative ``d`` (1-based) takes, on every criterion, the point
``min + (d - 1) / (v - 1) * (max - min)`` of that criterion's observed range,
so ``d = 1`` is the all-minima row and ``d = v`` the all-maxima row.
"""

from __future__ import annotations

import numpy as np

from .core import EvaluationMatrix, Origin, validate_matrix
from .errors import DegenerateColumn, InvalidLevel


def virtual_label(d: int, v: int) -> str:
    return f"virtual_{d}_of_{v}"


def _check_level(v: int) -> int:
    if isinstance(v, bool) or int(v) != v or v < 2:
        raise InvalidLevel(v)
    return int(v)


def virtual_evaluations(col_min: float, col_max: float, v: int) -> np.ndarray:
    v = _check_level(v)
    if not col_min < col_max:
        raise DegenerateColumn() if col_min == col_max else ValueError("col_min must be < col_max")
    # linspace pins both endpoints exactly
    return np.linspace(col_min, col_max, v)


def virtual_rows(values: np.ndarray, v: int) -> np.ndarray:
    """``v x m`` block of virtual evaluations for every column of ``values``."""
    v = _check_level(v)
    lo, hi = values.min(axis=0), values.max(axis=0)
    degenerate = np.flatnonzero(lo == hi)
    if degenerate.size:
        raise DegenerateColumn(int(degenerate[0]) + 1)
    return np.linspace(lo, hi, v)


def expand_matrix(matrix: EvaluationMatrix, v: int) -> EvaluationMatrix:
    validate_matrix(matrix)
    block = virtual_rows(matrix.values, v)
    return matrix.append(block, [virtual_label(d, v) for d in range(1, v + 1)], Origin.VIRTUAL)


def strip_virtual(matrix: EvaluationMatrix) -> EvaluationMatrix:
    return matrix.select(lambda r: r.origin is not Origin.VIRTUAL)
