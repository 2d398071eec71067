"""Input checks shared by the estimator wrappers and the command line."""
from __future__ import annotations

import numbers

import numpy as np

from .geometry import PointSet


def check_points(X, *, min_points: int = 0) -> PointSet:
    """Coerce an ``(n, 2)`` array-like of integers (or a PointSet) to a PointSet."""
    if isinstance(X, PointSet):
        S = X
    else:
        rows = X.tolist() if isinstance(X, np.ndarray) else list(X)
        pts = []
        for i, row in enumerate(rows):
            if len(row) != 2:
                raise ValueError(f"row {i} has {len(row)} coordinates, expected 2")
            pts.append(tuple(_as_int(v, i) for v in row))
        S = PointSet(pts)
    if len(S) < min_points:
        raise ValueError(f"need at least {min_points} points, got {len(S)}")
    return S


def _as_int(v, row: int) -> int:
    if isinstance(v, bool):
        raise TypeError(f"row {row}: booleans are not coordinates")
    if isinstance(v, numbers.Integral):
        return int(v)
    if isinstance(v, numbers.Real) and float(v).is_integer():
        return int(v)
    raise ValueError(f"row {row}: coordinate {v!r} is not an integer")


def check_k(k, *, name: str = "k") -> int:
    if isinstance(k, bool) or not isinstance(k, numbers.Integral) or k < 0:
        raise ValueError(f"{name} must be a non-negative integer, got {k!r}")
    return int(k)
