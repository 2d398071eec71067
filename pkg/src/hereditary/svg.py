"""Deterministic SVG pictures of point sets and yards."""
from __future__ import annotations

from fractions import Fraction

from .exceptions import UnrealizedInput
from .geometry import OrderType, PointSet, rich_lines
from .reduction.yard import Yard

FENCE = "#d62728"
ROW = "#1f77b4"
INMATE = "#f2c200"
PLAIN = "#222222"
EXTRA_LINE = "#9a9a9a"


def _num(v: Fraction) -> str:
    """Round an exact value to two decimals, half to even, without floats."""
    q = round(v * 100)
    sign = "-" if q < 0 else ""
    q = abs(q)
    return f"{sign}{q // 100}.{q % 100:02d}"


class _Frame:
    def __init__(self, pts, size: int, margin: int):
        xs = [p[0] for p in pts] or [0]
        ys = [p[1] for p in pts] or [0]
        self.x0, self.y1 = min(xs), max(ys)
        span = max(max(xs) - self.x0, self.y1 - min(ys), 1)
        self.scale = Fraction(size - 2 * margin, span)
        self.margin = margin
        self.width = _num(Fraction(max(xs) - self.x0) * self.scale + 2 * margin)
        self.height = _num(Fraction(self.y1 - min(ys)) * self.scale + 2 * margin)

    def __call__(self, p):
        return (_num(self.margin + (p[0] - self.x0) * self.scale),
                _num(self.margin + (self.y1 - p[1]) * self.scale))


def _segment(frame, a, b, color, width="1.00") -> str:
    (x1, y1), (x2, y2) = frame(a), frame(b)
    return f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}" stroke-width="{width}"/>'


def _dot(frame, p, color, radius) -> str:
    x, y = frame(p)
    return f'<circle cx="{x}" cy="{y}" r="{radius}" fill="{color}" stroke="{PLAIN}" stroke-width="0.50"/>'


def render_svg(obj, *, size: int = 800, margin: int = 20, radius: int = 4, lines: bool = True) -> str:
    """SVG text for a :class:`PointSet` or a :class:`Yard`.

    Lines through three or more points are drawn between their extreme
    points. Yards use red for the fence, blue for rows and guards and yellow
    for inmates.
    """
    if isinstance(obj, OrderType):
        if obj.realization is None:
            raise UnrealizedInput("an orientation array has no coordinates to draw")
        obj = obj.realization
    if isinstance(obj, Yard):
        S = obj.pointset()
        roles = obj.roles()
        fence = set(roles["fence"])
        guards = set(roles["left"]) | set(roles["right"])
    elif isinstance(obj, PointSet):
        S, fence, guards = obj, set(), set()
    else:
        raise TypeError(f"cannot render {type(obj).__name__}")
    is_yard = isinstance(obj, Yard)
    pts = S.points
    frame = _Frame(pts, size, margin)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{frame.width}" height="{frame.height}" '
        f'viewBox="0 0 {frame.width} {frame.height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if lines:
        for ln, members in sorted(rich_lines(S).items()):
            ends = sorted(pts[i] for i in members)
            if not is_yard:
                color = EXTRA_LINE
            elif set(members) <= fence:
                color = FENCE
            elif ln.is_horizontal:
                color = ROW
            else:
                color = EXTRA_LINE
            out.append(_segment(frame, ends[0], ends[-1], color))
    for i, p in enumerate(pts):
        if not is_yard:
            color = PLAIN
        elif i in fence:
            color = FENCE
        elif i in guards:
            color = ROW
        else:
            color = INMATE
        out.append(_dot(frame, p, color, radius))
    out.append("</svg>")
    return "\n".join(out) + "\n"
