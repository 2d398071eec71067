"""Order-type pattern containment and the three compliant-set obstacles."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .geometry import (
    Line,
    OrderType,
    PointSet,
    cross,
    is_convex_position,
    orientation_table,
    rich_lines,
)

# Base complete quadrilateral: the lines y=2x, y=140-2x, 4y=-x, 4y=x+56.
# A is the apex; B, C, D, E, F are the other pairwise crossings.
BASE_FENCE = (
    (35, 70),   # A = l1 x l2
    (0, 0),     # B = l1 x l3
    (80, -20),  # C = l2 x l3
    (8, 16),    # D = l1 x l4
    (56, 28),   # E = l2 x l4
    (-28, 7),   # F = l3 x l4
)
# Horizontal band (rows) and vertical strip (inmates) of the base fence that sit
# inside one cell of the arrangement of all lines through fence pairs.
BASE_ROW_BAND = (32, 54)
BASE_INMATE_STRIP = (30, 40)
BASE_LEFT_GUARD_X = -20
BASE_RIGHT_GUARD_X = 60


@dataclass(frozen=True, eq=False)
class Pattern:
    """A forbidden configuration, fixed by an integer realization."""

    name: str
    points: PointSet

    def __len__(self) -> int:
        return len(self.points)

    @cached_property
    def table(self) -> list:
        return orientation_table(self.points.points)

    @property
    def order(self) -> OrderType:
        return OrderType(self.table, self.points, check=False)

    @cached_property
    def collinear_triples(self) -> int:
        m = len(self)
        return sum(1 for i, j, k in itertools.combinations(range(m), 3) if self.table[i][j][k] == 0)

    @cached_property
    def is_collinear(self) -> bool:
        return self.collinear_triples == len(self) * (len(self) - 1) * (len(self) - 2) // 6

    @cached_property
    def is_strictly_convex(self) -> bool:
        return len(self) >= 3 and is_convex_position(self.points)

    @cached_property
    def _plan(self):
        return _match_plan(self.table, len(self))


@dataclass(frozen=True, eq=False)
class HereditaryProperty:
    """A property of point sets given by finitely many forbidden patterns."""

    name: str
    forbidden: tuple = field(default_factory=tuple)

    def __init__(self, name: str, forbidden: Iterable[Pattern] = ()):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "forbidden", tuple(forbidden))


def lq_pattern(q: int) -> Pattern:
    return Pattern(f"L{q}", PointSet([(i, 0) for i in range(q)]))


def convex_polygon_pattern(q: int) -> Pattern:
    # points on a parabola are in strict convex position
    return Pattern(f"convex{q}", PointSet([(i, i * i) for i in range(q)]))


FOUR_IN_LINE = Pattern("FourInLine", PointSet([(0, 0), (1, 0), (2, 0), (3, 0)]))
FENCED_PAIR = Pattern("FencedPair", PointSet(list(BASE_FENCE) + [(33, 40), (37, 40)]))
BROKEN_GRID = Pattern(
    "BrokenGrid",
    PointSet([(0, 0), (4, 0), (8, 0), (0, 4), (5, 4), (8, 4), (0, 8), (4, 8), (8, 8)]),
)
COMPLIANT = HereditaryProperty("compliant", (FOUR_IN_LINE, FENCED_PAIR, BROKEN_GRID))
VACUOUS = HereditaryProperty("vacuous", ())


def lq_property(q: int) -> HereditaryProperty:
    return HereditaryProperty(f"L{q}-free", (lq_pattern(q),))


def convex_property(q: int) -> HereditaryProperty:
    return HereditaryProperty(f"convex{q}-free", (convex_polygon_pattern(q),))


# --- matcher -----------------------------------------------------------------

def _match_plan(table: list, m: int):
    """Static most-constrained-first order for assigning pattern points."""
    if m == 0:
        return [], [], []
    coll = [[0] * m for _ in range(m)]
    for i, j, k in itertools.combinations(range(m), 3):
        if table[i][j][k] == 0:
            for a, b in ((i, j), (i, k), (j, k)):
                coll[a][b] += 1
                coll[b][a] += 1
    degree = [sum(row) for row in coll]
    order = [max(range(m), key=lambda v: (degree[v], -v))]
    while len(order) < m:
        placed = set(order)

        def score(v):
            closes = sum(1 for a, b in itertools.combinations(order, 2) if table[a][b][v] == 0)
            return (closes, sum(coll[v][a] for a in order), degree[v], -v)

        order.append(max((v for v in range(m) if v not in placed), key=score))
    checks, line_pair = [], []
    for t, v in enumerate(order):
        cs = [(a, b, table[order[a]][order[b]][v]) for a, b in itertools.combinations(range(t), 2)]
        checks.append(cs)
        line_pair.append(next(((a, b) for a, b, req in cs if req == 0), None))
    return order, checks, line_pair


def _pair_lines(points) -> dict:
    out = {}
    for members in rich_lines(points).values():
        for a, b in itertools.combinations(members, 2):
            out[(a, b)] = out[(b, a)] = members
    return out


def _pair_lines_from_table(T: list) -> dict:
    n = len(T)
    out = {}
    for a, b in itertools.combinations(range(n), 2):
        members = tuple(sorted([a, b] + [c for c in range(n) if c not in (a, b) and T[a][b][c] == 0]))
        if len(members) >= 3:
            out[(a, b)] = out[(b, a)] = members
    return out


class PatternMatcher:
    """Reusable matcher over one point set; caches its orientation table."""

    def __init__(self, S, table: list | None = None):
        if isinstance(S, OrderType):
            table = S.tolist() if table is None else table
            S = S.realization
        self.points = None if S is None else (S.points if isinstance(S, PointSet) else list(S))
        self.table = table if table is not None else orientation_table(self.points)
        self._pair_lines = None

    @property
    def pair_lines(self) -> dict:
        if self._pair_lines is None:
            if self.points is not None:
                self._pair_lines = _pair_lines(self.points)
            else:
                self._pair_lines = _pair_lines_from_table(self.table)
        return self._pair_lines

    def find(self, pattern: Pattern, domain: Sequence[int] | None = None):
        """Witness ``w`` with ``w[i]`` the point matched to pattern point ``i``."""
        m = len(pattern)
        dom = list(range(len(self.table))) if domain is None else list(domain)
        if m > len(dom):
            return None
        if m == 0:
            return ()
        order, checks, line_pair = pattern._plan
        T = self.table
        in_dom = set(dom)
        assign = [0] * m
        used = set()
        pair_lines = self.pair_lines if any(lp is not None for lp in line_pair) else None

        def rec(t):
            if t == m:
                return True
            lp = line_pair[t]
            if lp is None:
                cands = dom
            else:
                cands = pair_lines.get((assign[lp[0]], assign[lp[1]]), ())
            cs = checks[t]
            for c in cands:
                if c in used or c not in in_dom:
                    continue
                if all(T[assign[a]][assign[b]][c] == req for a, b, req in cs):
                    assign[t] = c
                    used.add(c)
                    if rec(t + 1):
                        return True
                    used.discard(c)
            return False

        if not rec(0):
            return None
        witness = [0] * m
        for t, v in enumerate(order):
            witness[v] = assign[t]
        return tuple(witness)

    def has_property(self, prop: HereditaryProperty, domain: Sequence[int] | None = None) -> bool:
        return all(self.find(p, domain) is None for p in prop.forbidden)

    def violation(self, prop: HereditaryProperty, domain: Sequence[int] | None = None):
        for p in prop.forbidden:
            w = self.find(p, domain)
            if w is not None:
                return p.name, w
        return None


def contains_pattern(S, P: Pattern):
    return PatternMatcher(S).find(P)


def has_property(S, prop: HereditaryProperty) -> bool:
    return PatternMatcher(S).has_property(prop)


def is_witness(S, P: Pattern, witness: Sequence[int]) -> bool:
    """Check that ``witness`` realizes the order type of ``P`` inside ``S``."""
    pts = S.points if isinstance(S, PointSet) else list(S)
    if len(set(witness)) != len(P) or len(witness) != len(P):
        return False
    sub = orientation_table([pts[i] for i in witness])
    return sub == P.table


def _collinear_degrees(table: list, m: int) -> list:
    deg = [0] * m
    for i, j, k in itertools.combinations(range(m), 3):
        if table[i][j][k] == 0:
            deg[i] += 1
            deg[j] += 1
            deg[k] += 1
    return deg


def _degree_bijections(src: list, dst: list):
    """Every map position -> position sending each point to one of equal degree."""
    groups = {}
    for i, d in enumerate(dst):
        groups.setdefault(d, []).append(i)
    slots = {d: [i for i, e in enumerate(src) if e == d] for d in groups}
    keys = sorted(groups)
    for choice in itertools.product(*(itertools.permutations(slots[d]) for d in keys)):
        perm = [0] * len(dst)
        for d, chosen in zip(keys, choice):
            for target, source in zip(groups[d], chosen):
                perm[target] = source
        yield perm


def contains_pattern_bruteforce(S, P: Pattern):
    """All subsets, all orderings that keep collinear-triple counts. Slow; checks the matcher."""
    pts = S.points if isinstance(S, PointSet) else list(S)
    m = len(P)
    if m > len(pts):
        return None
    target = P.table
    want = _collinear_degrees(target, m)
    triples = list(itertools.combinations(range(m), 3))
    for subset in itertools.combinations(range(len(pts)), m):
        sub = orientation_table([pts[i] for i in subset])
        have = _collinear_degrees(sub, m)
        if sorted(have) != sorted(want):
            continue
        for perm in _degree_bijections(have, want):
            if all(sub[perm[i]][perm[j]][perm[k]] == target[i][j][k] for i, j, k in triples):
                return tuple(subset[perm[i]] for i in range(m))
    return None


# --- complete quadrilaterals and the specialised compliant detectors ----------

def find_complete_quadrilaterals(S, lines: dict | None = None) -> list:
    """Every 6-point complete quadrilateral, found from 4-sets of rich lines."""
    pts = S.points if isinstance(S, PointSet) else list(S)
    lines = rich_lines(pts) if lines is None else lines
    ids = list(lines)
    members = [set(lines[ln]) for ln in ids]
    meet = {}
    for a, b in itertools.combinations(range(len(ids)), 2):
        common = members[a] & members[b]
        if common:
            meet[(a, b)] = next(iter(common))
    adj = {a: set() for a in range(len(ids))}
    for a, b in meet:
        adj[a].add(b)
        adj[b].add(a)
    found = set()
    for a in range(len(ids)):
        for b in sorted(x for x in adj[a] if x > a):
            for c in sorted(x for x in adj[a] & adj[b] if x > b):
                for d in sorted(x for x in adj[a] & adj[b] & adj[c] if x > c):
                    quad = [meet[pair] for pair in itertools.combinations((a, b, c, d), 2)]
                    if len(set(quad)) == 6:
                        found.add(tuple(sorted(quad)))
    return sorted(found)


def is_complete_quadrilateral(pts) -> bool:
    """Brute-force test of a 6-point set by its collinear triples."""
    if len(pts) != 6:
        return False
    triples = [t for t in itertools.combinations(range(6), 3) if cross(*(pts[i] for i in t)) == 0]
    for four in itertools.combinations(triples, 4):
        count = [0] * 6
        for t in four:
            for i in t:
                count[i] += 1
        if count != [2] * 6:
            continue
        lines = {Line.through(pts[t[0]], pts[t[1]]) for t in four}
        if len(lines) == 4:
            return True
    return False


def detect_four_in_line(S, matcher: PatternMatcher | None = None, lines: dict | None = None):
    pts = S.points if isinstance(S, PointSet) else list(S)
    lines = rich_lines(pts, 4) if lines is None else {k: v for k, v in lines.items() if len(v) >= 4}
    for ln in sorted(lines):
        return tuple(lines[ln][:4])
    return None


def detect_fenced_pair(S, matcher: PatternMatcher | None = None, lines: dict | None = None):
    pts = S.points if isinstance(S, PointSet) else list(S)
    if len(pts) < 8:
        return None
    lines = rich_lines(pts) if lines is None else lines
    quads = find_complete_quadrilaterals(pts, lines)
    if not quads:
        return None
    matcher = matcher or PatternMatcher(pts)
    T = matcher.table
    for quad in quads:
        qset = set(quad)
        free = [
            p for p in range(len(pts))
            if p not in qset and all(T[a][b][p] != 0 for a, b in itertools.combinations(quad, 2))
        ]
        for p, q in itertools.combinations(free, 2):
            if any(T[p][q][f] == 0 for f in quad):
                continue
            w = matcher.find(FENCED_PAIR, list(quad) + [p, q])
            if w is not None:
                return w
    return None


def detect_broken_grid(S, matcher: PatternMatcher | None = None, lines: dict | None = None):
    pts = S.points if isinstance(S, PointSet) else list(S)
    if len(pts) < 9:
        return None
    lines = rich_lines(pts) if lines is None else lines
    matcher = matcher or PatternMatcher(pts)
    pair_line = {}
    triples = []
    for members in lines.values():
        for a, b in itertools.combinations(members, 2):
            pair_line[(a, b)] = pair_line[(b, a)] = members
        triples.extend(itertools.combinations(members, 3))
    for t1, t2 in itertools.combinations(triples, 2):
        cols = set(t1) | set(t2)
        if len(cols) < 6:
            continue
        for perm in itertools.permutations(t2):
            options = []
            for a, b in zip(t1, perm):
                thirds = [c for c in pair_line.get((a, b), ()) if c not in cols]
                if not thirds:
                    break
                options.append(thirds)
            else:
                for mids in itertools.product(*options):
                    if len(set(mids)) < 3:
                        continue
                    w = matcher.find(BROKEN_GRID, list(cols) + list(mids))
                    if w is not None:
                        return w
    return None


_DETECTORS = (
    ("FourInLine", detect_four_in_line),
    ("FencedPair", detect_fenced_pair),
    ("BrokenGrid", detect_broken_grid),
)


def detect_compliant_violation(S, matcher: PatternMatcher | None = None):
    """First compliant-set obstacle found, as ``(pattern name, witness)``."""
    pts = S.points if isinstance(S, PointSet) else list(S)
    lines = rich_lines(pts)
    for name, detect in _DETECTORS:
        if name != "FourInLine" and matcher is None:
            matcher = PatternMatcher(pts)
        w = detect(pts, matcher, lines)
        if w is not None:
            return name, w
    return None
