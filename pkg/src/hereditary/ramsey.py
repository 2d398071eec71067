"""Exact small Ramsey-type values: general-position sets without convex q-gons.

``compute_ramsey_r(q)`` is the largest size of a general-position planar set
containing no ``q`` points in convex position. The values for ``q <= 5`` are
the classical ones (every 5 points in general position contain a convex
quadrilateral; the largest convex-pentagon-free set has 8 points).
:func:`search_free_sets` is the independent exhaustive search over integer
grids used to back those numbers with committed fixtures.
"""
from __future__ import annotations

import itertools
import time

from .exceptions import UnsupportedQ
from .geometry import cross, is_convex_position

_KNOWN_R = {3: 2, 4: 4, 5: 8}


def compute_ramsey_r(q: int) -> int:
    if q not in _KNOWN_R:
        raise UnsupportedQ(f"exact value only known here for q in 3..5, got {q}")
    return _KNOWN_R[q]


def happy_ending_number(k: int) -> int | None:
    """Smallest N such that N general-position points always hold a convex k-gon."""
    if k <= 3:
        return max(k, 0)
    if k in _KNOWN_R:
        return _KNOWN_R[k] + 1
    return None


def search_free_sets(q: int, grid: int, *, target: int | None = None, time_limit: float | None = None):
    """Largest general-position subset of the ``grid x grid`` lattice with no convex q-gon.

    Backtracking over lattice points in row-major order. Returns
    ``(best_size, witness, complete)``; ``complete`` is False when the search
    stopped early (``target`` reached or time limit hit).
    """
    pts = [(x, y) for y in range(grid) for x in range(grid)]
    best: list = []
    chosen: list = []
    deadline = None if time_limit is None else time.monotonic() + time_limit
    state = {"stopped": False}

    def ok(p):
        for a, b in itertools.combinations(chosen, 2):
            if cross(a, b, p) == 0:
                return False
        for sub in itertools.combinations(chosen, q - 1):
            if is_convex_position(sub + (p,)):
                return False
        return True

    def rec(start):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
            if target is not None and len(best) >= target:
                state["stopped"] = True
                return
        if deadline is not None and time.monotonic() > deadline:
            state["stopped"] = True
            return
        for i in range(start, len(pts)):
            if len(chosen) + (len(pts) - i) <= len(best):
                return
            p = pts[i]
            if ok(p):
                chosen.append(p)
                rec(i + 1)
                chosen.pop()
                if state["stopped"]:
                    return

    rec(0)
    return len(best), best, not state["stopped"]
