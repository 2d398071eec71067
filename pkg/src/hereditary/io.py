"""Text formats for point sets, patterns, orientation arrays, graphs, yards and results.

Every ``format_*`` function produces the canonical text that the matching
``parse_*`` function reads back, so ``format(parse(format(x))) == format(x)``
byte for byte. The grammars are written out in ``docs/formats.md``.
"""
from __future__ import annotations

import io
import json
import os
import re
from typing import TextIO, Union

from .exceptions import ParseError
from .geometry import OrderType, Point, PointSet
from .patterns import Pattern
from .reduction.graphs import ColoredGraph
from .reduction.yard import Row, Yard, key_str, parse_key

Source = Union[str, os.PathLike, TextIO]

_INT = re.compile(r"[+-]?\d+\Z")
_SYMBOL = {1: "+", -1: "-", 0: "0"}
_VALUE = {"+": 1, "-": -1, "0": 0}


def _read(source: Source) -> str:
    if hasattr(source, "read"):
        return source.read()
    with open(source, encoding="utf-8") as fh:
        return fh.read()


def _write(text: str, dest: Source) -> None:
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        with open(dest, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _int(token: str, lineno: int) -> int:
    if not _INT.match(token):
        raise ParseError(f"expected an integer, got {token!r}", lineno)
    return int(token)


# --- point sets -------------------------------------------------------------------

def _point_lines(text: str):
    """Yield ``(lineno, x, y, label)`` and collect ``# key: value`` headers."""
    headers = {}
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if ":" in body:
                key, _, value = body.partition(":")
                if re.fullmatch(r"[A-Za-z_][\w-]*", key.strip()):
                    headers.setdefault(key.strip(), value.strip())
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ParseError(f"expected 'x y [label]', got {line!r}", lineno)
        x, y = _int(parts[0], lineno), _int(parts[1], lineno)
        rows.append((lineno, x, y, parts[2] if len(parts) == 3 else None))
    return headers, rows


def loads_pointset(text: str) -> PointSet:
    _, rows = _point_lines(text)
    labels = [r[3] for r in rows]
    return PointSet([(r[1], r[2]) for r in rows], labels if any(lab is not None for lab in labels) else None)


def parse_pointset(source: Source) -> PointSet:
    return loads_pointset(_read(source))


def format_pointset(S: PointSet, headers: dict | None = None) -> str:
    out = [f"# {k}: {v}\n" for k, v in (headers or {}).items()]
    for i, p in enumerate(S.points):
        lab = S.label(i)
        out.append(f"{p.x} {p.y}\n" if lab is None else f"{p.x} {p.y} {lab}\n")
    return "".join(out)


def write_pointset(S: PointSet, dest: Source, headers: dict | None = None) -> None:
    _write(format_pointset(S, headers), dest)


# --- patterns ----------------------------------------------------------------------

def loads_pattern(text: str) -> Pattern:
    headers, _ = _point_lines(text)
    if "name" not in headers or not headers["name"]:
        raise ParseError("pattern files need a '# name: <name>' header", 1)
    return Pattern(headers["name"], loads_pointset(text))


def parse_pattern(source: Source) -> Pattern:
    return loads_pattern(_read(source))


def format_pattern(P: Pattern) -> str:
    return format_pointset(P.points, {"name": P.name})


# --- orientation arrays ------------------------------------------------------------

def loads_orientation_array(text: str) -> OrderType:
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), 1)
             if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise ParseError("empty orientation array", 1)
    lineno, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "n":
        raise ParseError("expected header 'n <count>'", lineno)
    n = _int(parts[1], lineno)
    if n < 0:
        raise ParseError("negative point count", lineno)
    body = lines[1:]
    if len(body) != n * n:
        raise ParseError(f"expected {n * n} rows of orientations, got {len(body)}", lineno)
    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    for r, (lineno, row) in enumerate(body):
        i, j = divmod(r, n)
        if len(row) != n:
            raise ParseError(f"expected {n} symbols, got {len(row)}", lineno)
        for k, ch in enumerate(row):
            repeated = len({i, j, k}) < 3
            if repeated:
                if ch != ".":
                    raise ParseError(f"entry ({i},{j},{k}) repeats an index and must be '.'", lineno)
                continue
            if ch not in _VALUE:
                raise ParseError(f"unknown orientation symbol {ch!r}", lineno)
            table[i][j][k] = _VALUE[ch]
    return OrderType(table)


def parse_orientation_array(source: Source) -> OrderType:
    return loads_orientation_array(_read(source))


def format_orientation_array(T: OrderType) -> str:
    n = T.n
    table = T.tolist()
    out = [f"n {n}\n"]
    for i in range(n):
        for j in range(n):
            out.append("".join("." if len({i, j, k}) < 3 else _SYMBOL[table[i][j][k]] for k in range(n)) + "\n")
    return "".join(out)


# --- graphs ------------------------------------------------------------------------

def loads_graph(text: str) -> ColoredGraph:
    n = m = None
    edges, colors = [], {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if n is not None or len(parts) != 3:
                raise ParseError("expected a single 'p <n> <m>' header", lineno)
            n, m = _int(parts[1], lineno), _int(parts[2], lineno)
        elif n is None:
            raise ParseError("'p' header must come first", lineno)
        elif tag == "e" and len(parts) == 3:
            u, v = _int(parts[1], lineno), _int(parts[2], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex out of range 1..{n}", lineno)
            edges.append((u - 1, v - 1))
        elif tag == "c" and len(parts) == 3:
            v = _int(parts[1], lineno)
            if not 1 <= v <= n:
                raise ParseError(f"vertex out of range 1..{n}", lineno)
            colors[v - 1] = _int(parts[2], lineno)
        else:
            raise ParseError(f"unrecognised line {line!r}", lineno)
    if n is None:
        raise ParseError("missing 'p <n> <m>' header", 1)
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}", 1)
    try:
        return ColoredGraph(n, edges, [colors.get(v, 0) for v in range(n)])
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def parse_graph(source: Source) -> ColoredGraph:
    return loads_graph(_read(source))


def format_graph(G: ColoredGraph) -> str:
    out = [f"p {G.n} {len(G.edges)}\n"]
    out += [f"e {u + 1} {v + 1}\n" for u, v in G.edges]
    out += [f"c {v + 1} {c}\n" for v, c in enumerate(G.colors)]
    return "".join(out)


def write_graph(G: ColoredGraph, dest: Source) -> None:
    _write(format_graph(G), dest)


# --- yards ---------------------------------------------------------------------------

def format_yard(Y: Yard) -> str:
    headers = {"phi": Y.phi, "rho": Y.rho, "meta": json.dumps(Y.meta, sort_keys=True, separators=(",", ":"))}
    return format_pointset(Y.pointset(), headers)


def loads_yard(text: str) -> Yard:
    headers, rows = _point_lines(text)
    fence = []
    by_key: dict = {}
    order = []
    for lineno, x, y, label in rows:
        p = Point(x, y)
        parts = (label or "").split(":")
        try:
            if parts == ["fence"]:
                fence.append(p)
                continue
            if parts[0] == "guard" and len(parts) == 3 and parts[1] in ("L", "R"):
                key = parse_key(parts[2])
            elif parts[0] == "inmate" and len(parts) == 3:
                key = parse_key(parts[1])
            else:
                raise ValueError(f"unknown yard label {label!r}")
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from exc
        if key not in by_key:
            by_key[key] = {"L": None, "R": None, "inmates": [], "origin": [], "y": y}
            order.append(key)
        slot = by_key[key]
        if y != slot["y"]:
            raise ParseError(f"point off row {key_str(key)}", lineno)
        if parts[0] == "guard":
            slot[parts[1]] = p
        else:
            slot["inmates"].append(p)
            slot["origin"].append(parse_key(parts[2]))
    if len(fence) != 6:
        raise ParseError(f"a yard needs 6 fence points, found {len(fence)}")
    out_rows = []
    for key in order:
        slot = by_key[key]
        if slot["L"] is None or slot["R"] is None:
            raise ParseError(f"row {key_str(key)} lacks a guard")
        out_rows.append(Row(key, slot["y"], slot["L"], slot["R"], slot["inmates"], slot["origin"]))
    try:
        phi, rho = int(headers.get("phi", 1)), int(headers.get("rho", 1))
        meta = json.loads(headers["meta"]) if "meta" in headers else {}
    except ValueError as exc:
        raise ParseError(f"bad yard header: {exc}") from exc
    Y = Yard(tuple(fence), out_rows, phi, rho, meta)
    Y.pointset()  # duplicate check
    return Y


def parse_yard(source: Source) -> Yard:
    return loads_yard(_read(source))


def write_yard(Y: Yard, dest: Source) -> None:
    _write(format_yard(Y), dest)


# --- solve results --------------------------------------------------------------------

def result_record(result, **extra) -> dict:
    rec = {
        "decision": "YES" if result.found else "NO",
        "witness": None if result.witness is None else list(result.witness),
        "route": result.route,
        "fpt": result.fpt,
        "kernel_size": result.kernel_size,
    }
    rec.update(extra)
    return rec


def format_record(rec: dict, fmt: str = "text") -> str:
    """One record as text lines (``key value``) or as a single JSON line."""
    if fmt == "json-lines":
        return json.dumps(rec, sort_keys=True) + "\n"
    buf = io.StringIO()
    for key, value in rec.items():
        if key == "decision":
            buf.write(f"{value}\n")
            continue
        if value is None:
            continue
        if isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, (list, tuple)):
            value = " ".join(str(v) for v in value)
        buf.write(f"{key} {value}\n")
    return buf.getvalue()


def parse_result(text: str) -> dict:
    """Inverse of :func:`format_record` for solve results in text form."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] not in ("YES", "NO"):
        raise ParseError("result must start with YES or NO", 1)
    rec = {"decision": lines[0], "witness": None, "route": None, "fpt": None, "kernel_size": None}
    for lineno, line in enumerate(lines[1:], 2):
        key, _, value = line.partition(" ")
        if key == "witness":
            rec["witness"] = [int(v) for v in value.split()]
        elif key == "fpt":
            rec["fpt"] = value == "true"
        elif key == "kernel_size":
            rec["kernel_size"] = int(value)
        elif key == "route":
            rec["route"] = value
        else:
            rec[key] = value
    return rec


def builtin_pattern(name: str) -> Pattern:
    """One of the packaged pattern files: ``four_in_line``, ``fenced_pair``, ``broken_grid``."""
    from importlib.resources import files

    return loads_pattern(files("hereditary").joinpath("data", f"{name}.txt").read_text(encoding="utf-8"))
