"""Exact integer geometry: orientation, order types, line arrangements, convexity.

Every predicate works on Python integers, so there is no rounding and no
overflow regardless of coordinate magnitude.
"""
from __future__ import annotations

import enum
import functools
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .exceptions import DuplicatePoint, InconsistentArray, TooFewPoints


class Orientation(enum.IntEnum):
    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1


class Point(NamedTuple):
    x: int
    y: int


def cross(p, q, r) -> int:
    """Twice the signed area of triangle pqr."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def orient(p, q, r) -> Orientation:
    d = cross(p, q, r)
    if d > 0:
        return Orientation.COUNTERCLOCKWISE
    if d < 0:
        return Orientation.CLOCKWISE
    return Orientation.COLLINEAR


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class PointSet:
    """An ordered list of distinct integer points with optional labels."""

    points: tuple
    labels: tuple | None = None

    def __init__(self, points: Iterable, labels: Iterable | None = None):
        pts = tuple(Point(int(p[0]), int(p[1])) for p in points)
        seen = {}
        for i, p in enumerate(pts):
            if p in seen:
                raise DuplicatePoint(seen[p], i, p)
            seen[p] = i
        labs = None
        if labels is not None:
            labs = tuple(None if lab is None else str(lab) for lab in labels)
            if len(labs) != len(pts):
                raise ValueError("labels must match points one to one")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "labels", labs)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def label(self, i) -> str | None:
        return None if self.labels is None else self.labels[i]

    def subset(self, indices: Iterable[int]) -> "PointSet":
        idx = list(indices)
        labs = None if self.labels is None else [self.labels[i] for i in idx]
        return PointSet([self.points[i] for i in idx], labs)


class Line(NamedTuple):
    """The line ``a*x + b*y = c`` in canonical form."""

    a: int
    b: int
    c: int

    @classmethod
    def through(cls, p, q) -> "Line":
        a = q[1] - p[1]
        b = p[0] - q[0]
        if a == 0 and b == 0:
            raise ValueError("a line needs two distinct points")
        c = a * p[0] + b * p[1]
        g = math.gcd(math.gcd(a, b), c)
        a, b, c = a // g, b // g, c // g
        if a < 0 or (a == 0 and b < 0):
            a, b, c = -a, -b, -c
        return cls(a, b, c)

    def contains(self, p) -> bool:
        return self.a * p[0] + self.b * p[1] == self.c

    @property
    def is_horizontal(self) -> bool:
        return self.a == 0

    @property
    def is_vertical(self) -> bool:
        return self.b == 0

    def side(self, p) -> int:
        """Sign of ``a*x + b*y - c``; consistent for one line, not across lines."""
        return _sign(self.a * p[0] + self.b * p[1] - self.c)


class OrderType:
    """Orientation of every ordered triple of ``n`` points.

    ``table[i, j, k]`` holds -1, 0 or +1. Entries with repeated indices are 0.
    """

    __slots__ = ("n", "table", "realization")

    def __init__(self, table, realization: PointSet | None = None, *, check: bool = True):
        table = np.asarray(table, dtype=np.int8)
        if table.ndim != 3 or len(set(table.shape)) != 1:
            raise ValueError("orientation table must be n x n x n")
        self.n = table.shape[0]
        self.table = table
        self.realization = realization
        if check:
            _check_antisymmetric(table)

    def __getitem__(self, ijk) -> Orientation:
        return Orientation(int(self.table[ijk]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrderType):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def __repr__(self):
        return f"OrderType(n={self.n})"

    @property
    def is_realized(self) -> bool:
        return self.realization is not None

    def tolist(self) -> list:
        return self.table.tolist()

    def restrict(self, indices: Sequence[int]) -> "OrderType":
        idx = np.asarray(indices, dtype=np.intp)
        real = None if self.realization is None else self.realization.subset(indices)
        return OrderType(self.table[np.ix_(idx, idx, idx)], real, check=False)


def _check_antisymmetric(table: np.ndarray) -> None:
    n = table.shape[0]
    for i, j, k in itertools.product(range(n), repeat=3):
        v = int(table[i, j, k])
        if v not in (-1, 0, 1):
            raise InconsistentArray((i, j, k), None, "orientation values must be -1, 0 or 1")
        if len({i, j, k}) < 3:
            if v != 0:
                raise InconsistentArray((i, j, k), None, "repeated indices must be collinear")
            continue
        for other, sgn in (((j, i, k), -1), ((i, k, j), -1), ((j, k, i), 1)):
            if int(table[other]) != sgn * v:
                raise InconsistentArray((i, j, k), other)


def orientation_table(points: Sequence) -> list:
    """Nested-list orientation table; the fast path used by the matchers."""
    n = len(points)
    t = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i, j, k in itertools.combinations(range(n), 3):
        s = _sign(cross(points[i], points[j], points[k]))
        if s:
            t[i][j][k] = t[j][k][i] = t[k][i][j] = s
            t[j][i][k] = t[i][k][j] = t[k][j][i] = -s
    return t


def order_type(S: PointSet) -> OrderType:
    if len(S) < 3:
        raise TooFewPoints("an order type needs at least 3 points")
    return OrderType(orientation_table(S.points), S, check=False)


def lines_through_pairs(S) -> dict:
    """Map each line spanned by two or more points to its incident indices.

    Indices on each line are sorted along the line (by x, then y).
    """
    pts = S.points if isinstance(S, PointSet) else list(S)
    lines: dict = {}
    for i, j in itertools.combinations(range(len(pts)), 2):
        line = Line.through(pts[i], pts[j])
        members = lines.setdefault(line, set())
        members.add(i)
        members.add(j)
    return {ln: tuple(sorted(m, key=lambda t: (pts[t][0], pts[t][1]))) for ln, m in lines.items()}


def rich_lines(S, min_points: int = 3) -> dict:
    return {ln: m for ln, m in lines_through_pairs(S).items() if len(m) >= min_points}


def max_collinear(S) -> tuple:
    """A line carrying the most input points, and that count."""
    if len(S) < 2:
        raise TooFewPoints("max_collinear needs at least 2 points")
    best = None
    for ln, members in lines_through_pairs(S).items():
        if best is None or len(members) > len(best[1]) or (len(members) == len(best[1]) and ln < best[0]):
            best = (ln, members)
    return best[0], len(best[1])


def max_collinear_indices(S) -> tuple:
    if len(S) < 2:
        return tuple(range(len(S)))
    best = ()
    for members in lines_through_pairs(S).values():
        if len(members) > len(best):
            best = members
    return best


def general_position_indices(S) -> list:
    """Greedy maximal general-position subset, scanning in input order."""
    pts = S.points if isinstance(S, PointSet) else list(S)
    chosen: list = []
    for i, p in enumerate(pts):
        if not any(cross(pts[a], pts[b], p) == 0 for a, b in itertools.combinations(chosen, 2)):
            chosen.append(i)
    return chosen


def maximal_general_position_subset(S: PointSet) -> PointSet:
    return S.subset(general_position_indices(S))


def in_general_position(pts) -> bool:
    return all(cross(p, q, r) != 0 for p, q, r in itertools.combinations(pts, 3))


def convex_hull_indices(pts) -> list:
    """Strict hull vertices in counterclockwise order (monotone chain)."""
    order = sorted(range(len(pts)), key=lambda i: (pts[i][0], pts[i][1]))
    if len(order) <= 2:
        return order

    def chain(seq):
        out: list = []
        for i in seq:
            while len(out) >= 2 and cross(pts[out[-2]], pts[out[-1]], pts[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    return lower[:-1] + upper[:-1]


def is_convex_position(S) -> bool:
    """Strict convex position: every point a hull vertex, no three collinear."""
    pts = S.points if isinstance(S, PointSet) else list(S)
    if len(pts) < 3:
        raise TooFewPoints("convex position needs at least 3 points")
    return in_general_position(pts) and len(convex_hull_indices(pts)) == len(pts)


def strictly_inside_convex(p, polygon: Sequence) -> bool:
    """``polygon`` is a counterclockwise convex polygon."""
    m = len(polygon)
    return m >= 3 and all(cross(polygon[i], polygon[(i + 1) % m], p) > 0 for i in range(m))


def largest_convex_subset_indices(S) -> list:
    """Maximum subset in strict convex position, by the rooted angular DP.

    Each point in turn is the lowest vertex ``p`` of the polygon. The other
    candidates are sorted by angle around ``p``; ``best[(i, j)]`` is the most
    vertices on a strictly convex chain ``p, ..., i, j``. For fixed ``i`` the
    incoming and outgoing edge directions all lie in one half-plane, so the
    left-turn transition is a sweep with a running maximum. Total time is
    O(n^3 log n).
    """
    pts = S.points if isinstance(S, PointSet) else list(S)
    n = len(pts)
    if n < 3:
        raise TooFewPoints("largest_convex_subset needs at least 3 points")
    best_poly: list = []
    for root in range(n):
        poly = _rooted_convex(pts, root)
        if len(poly) > len(best_poly):
            best_poly = poly
    # all points collinear: any two points are the best we can do
    return best_poly or [0, 1]


def _angle_cmp(u, v) -> int:
    # valid only when u and v lie in a common open half-plane
    c = u[0] * v[1] - u[1] * v[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def _rooted_convex(pts, root) -> list:
    p = pts[root]
    above = [i for i in range(len(pts)) if (pts[i][1], pts[i][0]) > (p[1], p[0])]
    vec = lambda i: (pts[i][0] - p[0], pts[i][1] - p[1])
    above.sort(key=functools.cmp_to_key(lambda a, b: _angle_cmp(vec(a), vec(b))))
    m = len(above)
    if m < 2:
        return []
    # chain[(a, b)] = (length, predecessor) for chain p..a->b; a == -1 means the edge p->b
    chain: dict = {}
    for b in range(m):
        chain[(-1, b)] = (2, None)
    ROOT = -1
    for a in range(m):
        ia = above[a]
        incoming = [h for h in range(-1, a) if (h, a) in chain]
        outgoing = [b for b in range(a + 1, m) if cross(p, pts[ia], pts[above[b]]) > 0]
        if not outgoing:
            continue
        base = pts[ia]
        items = []
        for h in incoming:
            src = p if h == ROOT else pts[above[h]]
            items.append(((base[0] - src[0], base[1] - src[1]), 0, h))
        for b in outgoing:
            dst = pts[above[b]]
            items.append(((dst[0] - base[0], dst[1] - base[1]), 1, b))
        # ties: an outgoing edge parallel to an incoming one is not a strict turn
        items.sort(key=functools.cmp_to_key(
            lambda s, t: _angle_cmp(s[0], t[0]) or (t[1] - s[1])))
        run_len, run_arg = 0, None
        for _, kind, idx in items:
            if kind == 0:
                ln = chain[(idx, a)][0]
                if ln > run_len:
                    run_len, run_arg = ln, idx
            elif run_arg is not None:
                chain[(a, idx)] = (run_len + 1, run_arg)
    best, best_key = 0, None
    for (a, b), (ln, _) in chain.items():
        if a == ROOT or ln <= best:
            continue
        if cross(pts[above[a]], pts[above[b]], p) > 0:
            best, best_key = ln, (a, b)
    if best_key is None:
        return []
    seq = []
    a, b = best_key
    while True:
        seq.append(above[b])
        if a == ROOT:
            break
        pred = chain[(a, b)][1]
        a, b = pred, a
    return [root] + seq[::-1]


def largest_convex_subset(S: PointSet) -> PointSet:
    return S.subset(largest_convex_subset_indices(S))
