"""Finding k-point subsets with a hereditary property.

``solve_dispatch`` follows the case split on a property's patterns:

* true on every collinear set and every convex polygon: large inputs always
  contain a solution (collinear line or convex polygon), small ones are
  searched exhaustively;
* false on some collinear set and on some convex polygon: sets with the
  property have bounded size, so big ``k`` is answered NO at once;
* true on collinear sets but false on a convex polygon: guess a small
  general-position core and search the lines it spans (``line_cover_solve``);
* a single collinear obstacle ``L_q``: kernelize (``kernelize_lq``).

Anything else (e.g. the compliant property) falls back to brute force and
is reported as having no FPT guarantee.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .exceptions import BadQ, ClassMismatch, UnsupportedQ
from .geometry import (
    Line,
    PointSet,
    general_position_indices,
    largest_convex_subset_indices,
    lines_through_pairs,
)
from .patterns import HereditaryProperty, PatternMatcher, lq_property
from .ramsey import compute_ramsey_r, happy_ending_number


@dataclass(frozen=True)
class SolveRequest:
    points: PointSet
    prop: HereditaryProperty
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be non-negative")


@dataclass(frozen=True)
class PropertyClass:
    collinear_true: bool
    convex_excluded: bool
    q: int | None = None
    r: int | None = None
    smallest_collinear: int | None = None


@dataclass(frozen=True)
class Kernel:
    points: PointSet
    provenance: tuple
    immediate: bool = False

    def __len__(self):
        return len(self.points)


@dataclass
class SolveResult:
    witness: tuple | None
    route: str
    fpt: bool = True
    kernel_size: int | None = None
    notes: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.witness is not None


# --- brute force ---------------------------------------------------------------

def _first_in_chunk(args):
    points, prop, k, first = args
    matcher = PatternMatcher(points)
    n = len(points)
    for rest in itertools.combinations(range(first + 1, n), k - 1):
        combo = (first,) + rest
        if matcher.has_property(prop, combo):
            return combo
    return None


def brute_force_solve(req: SolveRequest, *, matcher: PatternMatcher | None = None,
                      domain: Sequence[int] | None = None, jobs: int = 1):
    """Lexicographically first k-subset (of ``domain``) with the property."""
    n = len(req.points)
    dom = list(range(n)) if domain is None else sorted(domain)
    k = req.k
    if k == 0:
        return ()
    if k > len(dom):
        return None
    if jobs > 1 and domain is None:
        tasks = [(req.points, req.prop, k, i) for i in range(n - k + 1)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for res in pool.map(_first_in_chunk, tasks):
                if res is not None:
                    return res
        return None
    matcher = matcher or PatternMatcher(req.points)
    for combo in itertools.combinations(dom, k):
        if matcher.has_property(req.prop, combo):
            return combo
    return None


# --- classification ------------------------------------------------------------

def classify_property(prop: HereditaryProperty) -> PropertyClass:
    collinear = [len(p) for p in prop.forbidden if p.is_collinear]
    convex = [len(p) for p in prop.forbidden if p.is_strictly_convex]
    q = min(convex) if convex else None
    r = None
    if q is not None:
        try:
            r = compute_ramsey_r(q)
        except UnsupportedQ:
            r = None
    return PropertyClass(
        collinear_true=not collinear,
        convex_excluded=bool(convex),
        q=q,
        r=r,
        smallest_collinear=min(collinear) if collinear else None,
    )


# --- line cover (true on collinear sets, false on some convex polygon) ---------

def _line_members(S) -> dict:
    out = {}
    for members in lines_through_pairs(S).values():
        for a, b in itertools.combinations(sorted(members), 2):
            out[(a, b)] = members
    return out


def line_cover_solve(req: SolveRequest, cls: PropertyClass | None = None):
    """Search through general-position cores ``G`` and the lines they span.

    A solution ``P`` has a maximal general-position subset ``G`` of at most
    ``r`` points, and the lines through pairs of ``G`` cover ``P``. Each core
    fixes one tuple of covering lines; the covered points are searched
    exhaustively for a k-subset containing the core.
    """
    cls = cls or classify_property(req.prop)
    if not (cls.collinear_true and cls.convex_excluded):
        raise ClassMismatch("line cover needs a property true on collinear sets and false on a convex polygon")
    if cls.r is None:
        raise ClassMismatch(f"no exact general-position bound for convex obstacle size {cls.q}")
    S, k = req.points, req.k
    n = len(S)
    if k == 0:
        return ()
    if k > n:
        return None
    if n >= 2:
        lines = lines_through_pairs(S)
        longest = max(lines.values(), key=len)
        if len(longest) >= k:
            return tuple(sorted(longest[:k]))
    else:
        return (0,) if k == 1 else None
    matcher = PatternMatcher(S)
    T = matcher.table
    pair_members = _line_members(S)
    for size in range(1, min(cls.r, k) + 1):
        for core in itertools.combinations(range(n), size):
            if not matcher.has_property(req.prop, core):
                continue
            if any(T[a][b][c] == 0 for a, b, c in itertools.combinations(core, 3)):
                continue  # core must be in general position
            covered = set(core)
            for a, b in itertools.combinations(core, 2):
                covered.update(pair_members[(a, b)])
            extra = sorted(covered - set(core))
            need = k - size
            if need > len(extra):
                continue
            for rest in itertools.combinations(extra, need):
                cand = tuple(sorted(core + rest))
                if matcher.has_property(req.prop, cand):
                    return cand
    return None


# --- L_q kernel --------------------------------------------------------------

def lq_line_cap(k: int, q: int) -> int:
    return comb(k - 1, 2) + q - 1


def lq_kernel_bound(k: int, q: int) -> int:
    return comb(k - 1, 2) * lq_line_cap(k, q)


def kernelize_lq(S: PointSet, k: int, q: int) -> Kernel:
    """Shrink ``S`` without changing whether a k-point ``L_q``-free subset exists."""
    if q < 3:
        raise BadQ(f"kernelization needs q >= 3, got {q}")
    n = len(S)
    if k <= 2:
        keep = tuple(range(min(k, n)))
        return Kernel(S.subset(keep), keep, immediate=len(keep) == k)
    G = general_position_indices(S)
    if len(G) >= k:
        keep = tuple(G[:k])
        return Kernel(S.subset(keep), keep, immediate=True)
    cap = lq_line_cap(k, q)
    alive = set(range(n))
    pts = S.points
    done = set()
    for a, b in itertools.combinations(G, 2):
        line = Line.through(pts[a], pts[b])
        if line in done:
            continue
        done.add(line)
        on = sorted(i for i in alive if line.contains(pts[i]))
        for i in on[cap:]:
            alive.discard(i)
    keep = tuple(sorted(alive))
    assert len(keep) <= lq_kernel_bound(k, q), (len(keep), k, q)
    return Kernel(S.subset(keep), keep)


def solve_lq(S: PointSet, k: int, q: int):
    n = len(S)
    if k == 0:
        return ()
    if q == 1 or k > n:
        return None
    if q == 2:
        return (0,) if k == 1 else None
    ker = kernelize_lq(S, k, q)
    if ker.immediate:
        return ker.provenance
    sub = brute_force_solve(SolveRequest(ker.points, lq_property(q), k))
    return None if sub is None else tuple(ker.provenance[i] for i in sub)


# --- dispatcher -------------------------------------------------------------

def solve_dispatch(req: SolveRequest, *, jobs: int = 1) -> SolveResult:
    S, prop, k = req.points, req.prop, req.k
    n = len(S)
    if k == 0:
        return SolveResult((), "trivial")
    if k > n:
        return SolveResult(None, "k-exceeds-n")
    if not prop.forbidden:
        return SolveResult(tuple(range(k)), "trivial")
    cls = classify_property(prop)

    if cls.collinear_true and not cls.convex_excluded:
        if k <= 2:
            return SolveResult(tuple(range(k)), "case1-collinear")
        longest = max(lines_through_pairs(S).values(), key=len)
        if len(longest) >= k:
            return SolveResult(tuple(sorted(longest[:k])), "case1-collinear")
        N = happy_ending_number(k)
        if N is not None:
            G = general_position_indices(S)
            if len(G) >= N:
                reduced = G[:N]
                poly = largest_convex_subset_indices(S.subset(reduced))
                return SolveResult(tuple(sorted(reduced[i] for i in poly[:k])), "case1-convex",
                                   notes={"threshold": comb(N - 1, 2) * (k - 1)})
        return SolveResult(brute_force_solve(req, jobs=jobs), "case1-bruteforce", fpt=N is not None)

    if not cls.collinear_true and cls.convex_excluded:
        if cls.r is None:
            return SolveResult(brute_force_solve(req, jobs=jobs), "case2-bruteforce", fpt=False)
        a = cls.smallest_collinear
        bound = a - 1 if a <= 2 else comb(cls.r, 2) * (a - 1)
        if k > bound:
            return SolveResult(None, "case2-bounded", notes={"bound": bound})
        return SolveResult(brute_force_solve(req, jobs=jobs), "case2-bruteforce", notes={"bound": bound})

    if cls.collinear_true and cls.convex_excluded:
        if cls.r is None:
            return SolveResult(brute_force_solve(req, jobs=jobs), "case3-bruteforce", fpt=False)
        return SolveResult(line_cover_solve(req, cls), "case3-line-cover")

    if len(prop.forbidden) == 1:
        q = len(prop.forbidden[0])
        if q >= 3:
            ker = kernelize_lq(S, k, q)
            return SolveResult(solve_lq(S, k, q), "lq-kernel", kernel_size=len(ker))
        return SolveResult(solve_lq(S, k, q), "lq-trivial")

    return SolveResult(brute_force_solve(req, jobs=jobs), "bruteforce", fpt=False)


# --- deletion dual and disjunction ----------------------------------------------

def delete_to_avoid(S: PointSet, prop: HereditaryProperty, d: int):
    """Fewest (at most ``d``) points whose removal gives the property, or None."""
    matcher = PatternMatcher(S)
    n = len(S)

    def search(removed: frozenset, budget: int):
        dom = [i for i in range(n) if i not in removed]
        hit = matcher.violation(prop, dom)
        if hit is None:
            return sorted(removed)
        if budget == 0:
            return None
        for p in sorted(set(hit[1])):
            res = search(removed | {p}, budget - 1)
            if res is not None:
                return res
        return None

    for depth in range(d + 1):
        res = search(frozenset(), depth)
        if res is not None:
            return res
    return None


def solve_disjunction(req: SolveRequest, other: SolveRequest) -> SolveResult:
    """A k-set having at least one of the two properties."""
    first = solve_dispatch(req)
    if first.found:
        first.notes["branch"] = 0
        return first
    second = solve_dispatch(other)
    second.notes["branch"] = 1
    return second
