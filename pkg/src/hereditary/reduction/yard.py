"""Yard construction: rows, fence, intervals, guards and inmates.

All coordinates are exact integers. Rows are horizontal lines, one per
pattern vertex or edge. An edge row sits at ``2*y_hi - y_lo`` where
``y_lo < y_hi`` are its endpoint rows, so the line through integer points on
the two vertex rows meets the edge row at an integer point.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from ..exceptions import NotCubic, NoAvailablePosition, NoValidMiddleInterval, YardConstructionError
from ..geometry import Line, Point, PointSet, cross
from ..patterns import (
    BASE_FENCE,
    BASE_INMATE_STRIP,
    BASE_LEFT_GUARD_X,
    BASE_RIGHT_GUARD_X,
    BASE_ROW_BAND,
)
from .graphs import ColoredGraph, PsiInstance

BASE_WIDTH = max(x for x, _ in BASE_FENCE) - min(x for x, _ in BASE_FENCE)
MAX_DOUBLINGS = 16


def vkey(v: int) -> tuple:
    return ("v", v)


def ekey(u: int, v: int) -> tuple:
    return ("e", min(u, v), max(u, v))


PAD = ("pad",)


def key_str(key: tuple) -> str:
    if key == PAD:
        return "pad"
    return f"v{key[1]}" if key[0] == "v" else f"e{key[1]}-{key[2]}"


def parse_key(text: str) -> tuple:
    if text == "pad":
        return PAD
    if text.startswith("v"):
        return ("v", int(text[1:]))
    if text.startswith("e"):
        a, b = text[1:].split("-")
        return ("e", int(a), int(b))
    raise ValueError(f"bad row/element key {text!r}")


@dataclass
class Row:
    key: tuple
    y: int
    left_guard: Point
    right_guard: Point
    inmates: list = field(default_factory=list)
    inmate_origin: list = field(default_factory=list)


@dataclass
class Yard:
    fence: tuple
    rows: list
    phi: int = 1
    rho: int = 1
    meta: dict = field(default_factory=dict)

    def pointset(self) -> PointSet:
        pts, labels = [], []
        for p in self.fence:
            pts.append(p)
            labels.append("fence")
        for row in self.rows:
            name = key_str(row.key)
            pts += [row.left_guard, row.right_guard]
            labels += [f"guard:L:{name}", f"guard:R:{name}"]
            for p, origin in zip(row.inmates, row.inmate_origin):
                pts.append(p)
                labels.append(f"inmate:{name}:{key_str(origin)}")
        return PointSet(pts, labels)

    def roles(self) -> dict:
        """Index layout of :meth:`pointset`."""
        fence = list(range(6))
        left, right, inmates = [], [], []
        i = 6
        for row in self.rows:
            left.append(i)
            right.append(i + 1)
            inmates.append(list(range(i + 2, i + 2 + len(row.inmates))))
            i += 2 + len(row.inmates)
        return {"fence": fence, "left": left, "right": right, "inmates": inmates, "size": i}

    @property
    def lineup_size(self) -> int:
        return 3 * len(self.rows) + 6

    def max_coordinate(self) -> int:
        return max(max(abs(p.x), abs(p.y)) for p in self.pointset())


# --- row coordinates ---------------------------------------------------------------

def edge_row_value(a: int, b: int) -> int:
    lo, hi = min(a, b), max(a, b)
    return 2 * hi - lo


def assign_row_coordinates(pattern: ColoredGraph, *, require_cubic: bool = True) -> dict:
    """Greedy smallest positive row values; all vertex and edge values distinct."""
    if require_cubic and not pattern.is_cubic():
        raise NotCubic("row assignment expects a 3-regular pattern graph")
    nbrs = pattern.neighbors()
    values: dict = {}
    used: set = set()
    for v in range(pattern.n):
        earlier = [u for u in nbrs[v] if vkey(u) in values]
        y = 1
        while True:
            new = [y] + [edge_row_value(y, values[vkey(u)]) for u in earlier]
            if len(set(new)) == len(new) and not used.intersection(new):
                break
            y += 1
        values[vkey(v)] = y
        used.add(y)
        for u, ye in zip(earlier, new[1:]):
            values[ekey(u, v)] = ye
            used.add(ye)
    return values


# --- fence and intervals -------------------------------------------------------------

@dataclass
class Frame:
    """Scaled fence plus the row heights and the three x-intervals."""

    phi: int
    scale: int
    fence: tuple
    row_y: dict
    left: tuple = None
    middle: tuple = None
    right: tuple = None
    width: int = 0


def build_fence(row_span: int, phi: int):
    """Scale the base quadrilateral until ``row_span`` integer rows fit its band.

    Returns ``(fence points, row window, fence scale)``; rows with values
    ``1..row_span`` go to ``phi * (scale * band_lo + value)``.
    """
    if phi < 1:
        raise ValueError("phi must be positive")
    lo, hi = BASE_ROW_BAND
    scale = max(1, ceil((row_span + 2) / (hi - lo)))
    fence = tuple(Point(phi * scale * x, phi * scale * y) for x, y in BASE_FENCE)
    window = (phi * scale * lo, phi * scale * hi)
    return fence, window, scale


def _crossing_range(xa: tuple, ya: int, xb: tuple, yb: int, yc: int) -> tuple:
    """x-range where lines through (x in xa, ya) and (x in xb, yb) meet y=yc."""
    t = Fraction(yc - ya, yb - ya)
    xs = [a + (b - a) * t for a in xa for b in xb]
    return min(xs), max(xs)


def choose_intervals(frame: Frame, rho: int) -> Frame:
    """Pick the left, right and middle x-intervals (closed, integer endpoints)."""
    if rho < 1:
        raise ValueError("rho must be positive")
    unit = frame.phi * frame.scale
    w = unit * BASE_WIDTH // rho
    if w < 6:
        raise NoValidMiddleInterval("intervals narrower than 6 units; increase phi")
    left = (unit * BASE_LEFT_GUARD_X - w // 2, unit * BASE_LEFT_GUARD_X - w // 2 + w)
    right = (unit * BASE_RIGHT_GUARD_X - w // 2, unit * BASE_RIGHT_GUARD_X - w // 2 + w)
    ys = sorted(frame.row_y.values())
    blocked = []
    for yi, yj in itertools.permutations(ys, 2):
        for yk in ys:
            if yk in (yi, yj):
                continue
            blocked.append(_crossing_range(left, yi, right, yj, yk))
    blocked.sort()
    lo, hi = unit * BASE_INMATE_STRIP[0], unit * BASE_INMATE_STRIP[1]
    a = lo
    for b0, b1 in blocked:
        if b1 < a:
            continue
        if b0 > a + w:
            break
        a = int(b1) + 1
    if a + w > hi:
        raise NoValidMiddleInterval()
    middle = (a, a + w)
    frame.left, frame.middle, frame.right, frame.width = left, middle, right, w
    _check_interval_lines(frame, ys)
    return frame


def _check_interval_lines(frame: Frame, ys: list) -> None:
    left, middle, right = frame.left, frame.middle, frame.right
    for yi, yj in itertools.combinations(ys, 2):
        for yk in ys:
            if yk in (yi, yj):
                continue
            m0, m1 = _crossing_range(middle, yi, middle, yj, yk)
            if not (left[1] < m0 and m1 < right[0]):
                raise NoValidMiddleInterval("inmate lines reach a guard interval")
            l0, l1 = _crossing_range(left, yi, left, yj, yk)
            r0, r1 = _crossing_range(right, yi, right, yj, yk)
            if not (l1 < middle[0] and middle[1] < r0):
                raise NoValidMiddleInterval("guard lines reach the middle interval")


# --- greedy placement -------------------------------------------------------------

def _middle_third(interval: tuple) -> range:
    lo, hi = interval
    w = hi - lo
    return range(lo + -(-w // 3), lo + 2 * w // 3 + 1)


def _on_line_x(pa: Point, pb: Point, y: int) -> int:
    x = pa.x + Fraction((pb.x - pa.x) * (y - pa.y), pb.y - pa.y)
    assert x.denominator == 1, "edge point off the integer lattice"
    return int(x)


class _Placer:
    """Tracks placed points and rejects unwanted collinearities."""

    def __init__(self, points):
        self.points = list(points)
        self.occupied = set(self.points)
        self.intended: set = set()

    def acceptable(self, new: list, intended: set) -> bool:
        allowed = self.intended | intended
        if len(set(new)) < len(new) or self.occupied.intersection(new):
            return False
        pool = list(self.points)
        for p in new:
            by_line: dict = {}
            for a in pool:
                by_line.setdefault(Line.through(p, a), []).append(a)
            for ln, group in by_line.items():
                if len(group) < 2 or ln.is_horizontal:
                    continue
                for a, b in itertools.combinations(group, 2):
                    if frozenset((p, a, b)) not in allowed:
                        return False
            pool.append(p)
        return True

    def commit(self, new: list, intended: set) -> None:
        self.points += new
        self.occupied.update(new)
        self.intended |= intended


def place_guards(frame: Frame, pattern: ColoredGraph, placer: _Placer) -> dict:
    """Vertex guards greedily, edge guards on the lines their endpoints span."""
    nbrs = pattern.neighbors()
    guards = {}
    for side, interval in (("L", frame.left), ("R", frame.right)):
        pos: dict = {}
        for v in range(pattern.n):
            yv = frame.row_y[vkey(v)]
            done = [u for u in nbrs[v] if u in pos]
            for x in _middle_third(interval):
                gv = Point(x, yv)
                new, intended = [gv], set()
                for u in done:
                    ye = frame.row_y[ekey(u, v)]
                    ge = Point(_on_line_x(pos[u], gv, ye), ye)
                    assert interval[0] <= ge.x <= interval[1]
                    new.append(ge)
                    intended.add(frozenset((pos[u], gv, ge)))
                if placer.acceptable(new, intended):
                    placer.commit(new, intended)
                    pos[v] = gv
                    for u, ge in zip(done, new[1:]):
                        guards[(side, ekey(u, v))] = ge
                    guards[(side, vkey(v))] = gv
                    break
            else:
                raise NoAvailablePosition(f"no {side} guard position for pattern vertex {v}", "place_guards")
    return guards


def place_inmates(frame: Frame, inst: PsiInstance, placer: _Placer) -> dict:
    """One inmate per relevant host vertex and host edge; returns row key -> [(point, origin)].

    Rows that no host element reaches get a single padding inmate, so that
    every row keeps its three points.
    """
    G, H = inst.pattern, inst.host
    c2v = inst.color_to_pattern
    gadj = G.adjacency()
    hn = H.neighbors()
    rows: dict = {}
    pos: dict = {}
    span = _middle_third(frame.middle)
    for w in range(H.n):
        if H.colors[w] not in c2v:
            continue
        u = c2v[H.colors[w]]
        yw = frame.row_y[vkey(u)]
        done = [x for x in hn[w] if x in pos and c2v[H.colors[x]] in gadj[u]]
        for xw in span:
            mw = Point(xw, yw)
            new, intended, keys = [mw], set(), []
            for x in done:
                v = c2v[H.colors[x]]
                ye = frame.row_y[ekey(u, v)]
                me = Point(_on_line_x(pos[x], mw, ye), ye)
                assert frame.middle[0] <= me.x <= frame.middle[1]
                new.append(me)
                intended.add(frozenset((pos[x], mw, me)))
                keys.append((ekey(u, v), ("e", min(w, x), max(w, x))))
            if placer.acceptable(new, intended):
                placer.commit(new, intended)
                pos[w] = mw
                rows.setdefault(vkey(u), []).append((mw, ("v", w)))
                for (rk, origin), me in zip(keys, new[1:]):
                    rows.setdefault(rk, []).append((me, origin))
                break
        else:
            raise NoAvailablePosition(f"no inmate position for host vertex {w}", "place_inmates")
    # a row no host element reaches gets one padding inmate lying on no other line
    for key in sorted(frame.row_y, key=frame.row_y.get):
        if key in rows:
            continue
        for x in span:
            p = Point(x, frame.row_y[key])
            if placer.acceptable([p], set()):
                placer.commit([p], set())
                rows[key] = [(p, PAD)]
                break
        else:
            raise NoAvailablePosition(f"no padding position on row {key_str(key)}", "place_inmates")
    return rows


def yard_magnitude_bound(k: int, n: int) -> int:
    """Documented ceiling on |coordinate| for yards built by :func:`build_yard`.

    ``k`` and ``n`` are the pattern and host edge counts.
    """
    k, n = max(k, 1), max(n, 1)
    return 2 ** MAX_DOUBLINGS * 100 * (8 * k + 8) * max(k ** 5, k ** 3 * n ** 5)


def build_yard(inst: PsiInstance, *, phi: int | None = None, rho: int | None = None,
               require_cubic: bool = True, verify: bool = True) -> Yard:
    """Compose the construction steps, doubling phi or rho when a step fails."""
    G, H = inst.pattern, inst.host
    k, n = len(G.edges), len(H.edges)
    values = assign_row_coordinates(G, require_cubic=require_cubic)
    span = max(values.values())
    phi = phi or max(k ** 5, k ** 3 * n ** 5, 1)
    rho = rho or max(k ** 4, 1)
    failures = []
    for _ in range(MAX_DOUBLINGS + 1):
        fence, window, scale = build_fence(span, phi)
        row_y = {key: phi * (scale * BASE_ROW_BAND[0] + val) for key, val in values.items()}
        frame = Frame(phi, scale, fence, row_y)
        try:
            choose_intervals(frame, rho)
        except NoValidMiddleInterval as exc:
            failures.append(str(exc))
            if "increase phi" in str(exc):
                phi *= 2
            else:
                rho *= 2
            continue
        placer = _Placer(fence)
        try:
            guards = place_guards(frame, G, placer)
            inmates = place_inmates(frame, inst, placer)
        except NoAvailablePosition as exc:
            failures.append(str(exc))
            phi *= 2
            continue
        rows = []
        for key in sorted(values, key=lambda kk: row_y[kk]):
            members = sorted(inmates.get(key, []), key=lambda t: t[0].x)
            rows.append(Row(key, row_y[key], guards[("L", key)], guards[("R", key)],
                            [p for p, _ in members], [o for _, o in members]))
        yard = Yard(fence, rows, phi, rho, {
            "row_values": {key_str(kk): v for kk, v in values.items()},
            "fence_scale": scale,
            "intervals": {"left": list(frame.left), "middle": list(frame.middle), "right": list(frame.right)},
            "attempts": len(failures) + 1,
        })
        if verify:
            from .verify import verify_yard

            bad = verify_yard(yard)
            if bad:
                failures.append("verify: " + ", ".join(bad))
                phi *= 2
                rho *= 2
                continue
        assert yard.max_coordinate() <= yard_magnitude_bound(k, n)
        return yard
    raise YardConstructionError("gave up after repeated doubling; last failures: " + "; ".join(failures[-3:]),
                                step="build_yard")
