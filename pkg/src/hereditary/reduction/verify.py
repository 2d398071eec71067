"""Exact checks of the yard properties. Violations are returned, never raised."""
from __future__ import annotations

import itertools

from ..exceptions import DuplicatePoint
from ..geometry import Line, PointSet, convex_hull_indices, cross, lines_through_pairs, strictly_inside_convex
from ..patterns import BROKEN_GRID, FENCED_PAIR, PatternMatcher, find_complete_quadrilaterals
from .yard import PAD, Yard

EXHAUSTIVE_GUARD_LIMIT = 18


def _one_side(line: Line, pts) -> int:
    """Common nonzero side of ``pts``, or 0 if they are split or touch the line."""
    sides = {line.side(p) for p in pts}
    return sides.pop() if len(sides) == 1 and 0 not in sides else 0


class _FencedPairOracle:
    """Does ``fence + {a, b}`` have the FencedPair order type? Cached by orientation signature."""

    def __init__(self, fence):
        self.fence = list(fence)
        self.cache: dict = {}

    def __call__(self, a, b) -> bool:
        f = self.fence
        sig = tuple(
            (cross(f[i], f[j], a) > 0) - (cross(f[i], f[j], a) < 0)
            for i, j in itertools.permutations(range(6), 2)
        ) + tuple(
            (cross(f[i], f[j], b) > 0) - (cross(f[i], f[j], b) < 0)
            for i, j in itertools.permutations(range(6), 2)
        ) + tuple((cross(a, b, p) > 0) - (cross(a, b, p) < 0) for p in f)
        if sig not in self.cache:
            S = PointSet(f + [a, b])
            self.cache[sig] = PatternMatcher(S).find(FENCED_PAIR) is not None
        return self.cache[sig]


def _row_structure(Y: Yard) -> list:
    out = []
    ys = [row.y for row in Y.rows]
    if len(set(ys)) != len(ys):
        out.append("row-structure: two rows share a height")
    if any(p.y in set(ys) for p in Y.fence):
        out.append("row-structure: a fence point lies on a row")
    for row in Y.rows:
        if not row.inmates:
            out.append(f"row-structure: row at y={row.y} has no inmate")
        if len(row.inmates) != len(row.inmate_origin):
            out.append(f"row-structure: row at y={row.y} has inmates without origin")
        pts = [row.left_guard, row.right_guard] + list(row.inmates)
        if any(p.y != row.y for p in pts):
            out.append(f"row-structure: point off its row at y={row.y}")
        if any(not (row.left_guard.x < p.x < row.right_guard.x) for p in row.inmates):
            out.append(f"row-structure: guards are not the extreme points of row y={row.y}")
    return out


def _construction_links(Y: Yard) -> list:
    """Edge rows sit on the lines through their endpoint rows' guards and inmates."""
    out = []
    by_key = {row.key: row for row in Y.rows}
    for row in Y.rows:
        if row.key[0] != "e":
            continue
        ru, rv = by_key.get(("v", row.key[1])), by_key.get(("v", row.key[2]))
        if ru is None or rv is None:
            out.append(f"edge-guard-collinearity: missing vertex row for {row.key}")
            continue
        for side in ("left_guard", "right_guard"):
            if cross(getattr(ru, side), getattr(rv, side), getattr(row, side)) != 0:
                out.append(f"edge-guard-collinearity: {side} of {row.key} off its line")
        vin = {}
        for r in (ru, rv):
            for p, origin in zip(r.inmates, r.inmate_origin):
                vin[origin] = p
        for p, origin in zip(row.inmates, row.inmate_origin):
            if origin == PAD:
                continue
            a, b = vin.get(("v", origin[1])), vin.get(("v", origin[2]))
            if a is None or b is None or cross(a, b, p) != 0:
                out.append(f"edge-inmate-collinearity: inmate {origin} of {row.key} off its line")
    return out


def verify_yard(Y: Yard) -> list:
    """Names of the violated yard properties (empty when ``Y`` is a valid yard)."""
    out = _row_structure(Y)
    try:
        S = Y.pointset()
    except DuplicatePoint as exc:
        return out + [f"duplicate-point: {exc}"]
    out += _construction_links(Y)
    roles = Y.roles()
    pts = S.points
    fence_idx = set(roles["fence"])
    left = [pts[i] for i in roles["left"]]
    right = [pts[i] for i in roles["right"]]
    guard_idx = set(roles["left"]) | set(roles["right"])
    inmate_rows = roles["inmates"]
    inmate_idx = {i for r in inmate_rows for i in r}
    inmates = [pts[i] for i in sorted(inmate_idx)]
    origin = {i: o for members, row in zip(inmate_rows, Y.rows) for i, o in zip(members, row.inmate_origin)}

    lines = lines_through_pairs(S)
    rich = {ln: m for ln, m in lines.items() if len(m) >= 3}
    for ln, members in rich.items():
        if ln.is_horizontal:
            continue
        if len(members) >= 4:
            out.append(f"four-point-line: {list(members)}")
        ms = set(members)
        if ms & guard_idx and ms & inmate_idx:
            out.append(f"mixed-rich-line: {list(members)}")
        if ms & fence_idx and not (ms <= fence_idx):
            out.append(f"fence-lines: {list(members)}")
        if len(members) == 3 and ms <= inmate_idx and not _is_edge_triple(sorted(origin[i] for i in ms)):
            out.append(f"inmate-triple: {list(members)} does not come from a host edge")
    fence_lines = [ln for ln, m in rich.items() if set(m) & fence_idx]
    if len(fence_lines) != 4 or any(len(rich[ln]) != 3 for ln in fence_lines):
        out.append("fence-lines: fence does not span exactly four 3-point lines")

    row_of = {i: r for r, members in enumerate(inmate_rows) for i in members}
    inmate_list = sorted(inmate_idx)
    for a, b in itertools.combinations(inmate_list, 2):
        if row_of[a] == row_of[b]:
            continue
        ln = Line.through(pts[a], pts[b])
        if ln.is_vertical:
            continue
        sl, sr = _one_side(ln, left), _one_side(ln, right)
        if sl == 0 or sr == 0 or sl == sr:
            out.append(f"inmate-line-sides: inmates {a},{b}")
    for group in (roles["left"], roles["right"]):
        for a, b in itertools.combinations(group, 2):
            ln = Line.through(pts[a], pts[b])
            if ln.is_vertical:
                continue
            if _one_side(ln, inmates) == 0:
                out.append(f"guard-line-sides: guards {a},{b}")

    out += _guard_broken_grid(S, sorted(guard_idx), rich)

    hull = [pts[i] for i in sorted(fence_idx)]
    hull = [hull[i] for i in convex_hull_indices(hull)]
    for i in inmate_list:
        if not strictly_inside_convex(pts[i], hull):
            out.append(f"fence-encloses: inmate {i} outside the fence")
    for i in sorted(guard_idx):
        if strictly_inside_convex(pts[i], hull) or any(cross(hull[j], hull[(j + 1) % len(hull)], pts[i]) == 0
                                                       and _on_segment(hull[j], hull[(j + 1) % len(hull)], pts[i])
                                                       for j in range(len(hull))):
            out.append(f"fence-encloses: guard {i} not outside the fence")

    quads = find_complete_quadrilaterals(S, rich)
    if [tuple(sorted(q)) for q in quads] != [tuple(sorted(fence_idx))]:
        out.append(f"fence-quadrilateral: complete quadrilaterals {quads}")

    oracle = _FencedPairOracle([pts[i] for i in sorted(fence_idx)])
    for members in inmate_rows:
        for a, b in itertools.combinations(members, 2):
            if not oracle(pts[a], pts[b]):
                out.append(f"same-row-fenced-pair: inmates {a},{b}")
    others = sorted(set(range(len(S))) - fence_idx)
    for a, b in itertools.combinations(others, 2):
        if a in inmate_idx and b in inmate_idx and row_of[a] == row_of[b]:
            continue
        if oracle(pts[a], pts[b]):
            kind = "cross-row-fenced-pair" if a in inmate_idx and b in inmate_idx else "fenced-pair-elsewhere"
            out.append(f"{kind}: points {a},{b}")
    return out


def _is_edge_triple(origins: list) -> bool:
    # sorted origins of an intended triple: ("e", u, w), ("v", u), ("v", w)
    e, a, b = origins
    return e[0] == "e" and a == ("v", e[1]) and b == ("v", e[2])


def _on_segment(p, q, r) -> bool:
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])


def _guard_broken_grid(S: PointSet, guards: list, rich: dict) -> list:
    """A BrokenGrid needs three disjoint 3-point lines; try every such union of guards."""
    gset = set(guards)
    triples = set()
    for members in rich.values():
        on = [i for i in members if i in gset]
        triples.update(itertools.combinations(on, 3))
    triples = sorted(triples)
    matcher = PatternMatcher(S)
    seen = set()
    found = []
    for t1, t2, t3 in itertools.combinations(triples, 3):
        dom = set(t1) | set(t2) | set(t3)
        if len(dom) != 9:
            continue
        key = tuple(sorted(dom))
        if key in seen:
            continue
        seen.add(key)
        if matcher.find(BROKEN_GRID, key) is not None:
            found.append(f"guard-broken-grid: {list(key)}")
    if len(guards) <= EXHAUSTIVE_GUARD_LIMIT:
        for key in itertools.combinations(guards, 9):
            if key not in seen and matcher.find(BROKEN_GRID, key) is not None:
                found.append(f"guard-broken-grid: {list(key)}")
    return found
