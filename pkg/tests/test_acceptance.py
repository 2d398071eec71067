"""End-to-end acceptance checks. Each test prints one PASS/FAIL line."""
import copy
import itertools
import json
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from hereditary import io as hio
from hereditary.geometry import Point, PointSet, is_convex_position, largest_convex_subset, order_type
from hereditary.patterns import (
    BROKEN_GRID,
    COMPLIANT,
    FENCED_PAIR,
    FOUR_IN_LINE,
    contains_pattern,
    contains_pattern_bruteforce,
    convex_property,
    is_witness,
    lq_property,
)
from hereditary.ramsey import compute_ramsey_r, search_free_sets
from hereditary.reduction.graphs import ColoredGraph, PsiInstance, complete_graph, psi_brute_force
from hereditary.reduction.lineup import find_lineup, lineup_structure_violations
from hereditary.reduction.verify import verify_yard
from hereditary.reduction.yard import PAD, assign_row_coordinates, build_yard, yard_magnitude_bound
from hereditary.solvers import (
    SolveRequest,
    brute_force_solve,
    classify_property,
    kernelize_lq,
    lq_kernel_bound,
    solve_dispatch,
)
from hereditary.svg import FENCE, render_svg

from conftest import colored_host, random_pointset

K4 = complete_graph(4)
PROPS = [lq_property(3), lq_property(4), convex_property(4), convex_property(5), COMPLIANT]


@pytest.fixture
def report(capsys):
    def _report(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail
    return _report


def point_corpus(seed=2024, count=500):
    """Seeded sets with n <= 12 inside [-20, 20]; half use a narrow box to force collinearity."""
    rng = random.Random(seed)
    out = []
    for s in range(count):
        n = rng.randint(3, 12)
        if s % 2:
            out.append(random_pointset(rng, n, -20, 20))
        else:
            lo = rng.randint(-20, 16)
            hi = min(20, lo + rng.randint(3, 5))
            out.append(random_pointset(rng, n, lo, hi))
    return out


CORPUS = point_corpus()


def test_1_solver_oracle_equivalence(report):
    t0 = time.monotonic()
    checked = agree = yes = 0
    for S in CORPUS:
        for prop in PROPS:
            for k in range(1, 7):
                fast = solve_dispatch(SolveRequest(S, prop, k))
                slow = brute_force_solve(SolveRequest(S, prop, k))
                checked += 1
                agree += fast.found == (slow is not None)
                yes += fast.found
    elapsed = time.monotonic() - t0
    report(1, agree == checked and elapsed <= 600,
           f"{agree}/{checked} decisions agree over {len(CORPUS)} sets, {yes} yes, {elapsed:.1f}s")


def test_2_kernel_size_and_solvability(report):
    bad_size = bad_answer = checked = 0
    for S in CORPUS:
        for q in (3, 4):
            for k in range(1, 7):
                ker = kernelize_lq(S, k, q)
                limit = lq_kernel_bound(k, q) if k >= 3 else k
                bad_size += len(ker) > limit
                orig = brute_force_solve(SolveRequest(S, lq_property(q), k)) is not None
                kept = ker.immediate or brute_force_solve(SolveRequest(ker.points, lq_property(q), k)) is not None
                bad_answer += orig != kept
                checked += 1
    report(2, bad_size == 0 and bad_answer == 0,
           f"{checked} kernels, {bad_size} over the size bound, {bad_answer} solvability mismatches")


# --- reduction corpus -----------------------------------------------------------

def _constructed_host(rng, solvable):
    n = rng.randint(5, 12)
    colors = [0, 1, 2, 3] + [rng.randrange(4) for _ in range(n - 4)]
    edges = {(u, v) for u, v in itertools.combinations(range(n), 2)
             if colors[u] != colors[v] and rng.random() < 0.35}
    if solvable:
        edges |= set(itertools.combinations(range(4), 2))  # plant a colorful K4
    else:
        cut = set(rng.sample(range(4), 2))  # no edges between two color classes
        edges = {(u, v) for u, v in edges if {colors[u], colors[v]} != cut}
    return ColoredGraph(n, sorted(edges), colors)


def reduction_corpus(seed=77):
    rng = random.Random(seed)
    out = [PsiInstance(_constructed_host(rng, i % 2 == 0), K4) for i in range(20)]
    # ten unplanted hosts with dense color classes, either answer
    while len(out) < 30:
        out.append(PsiInstance(colored_host(rng, rng.randint(6, 12), 0.55), K4))
    return out


_REDUCTION = {}


def reduction_results():
    if not _REDUCTION:
        t0 = time.monotonic()
        rows = []
        for inst in reduction_corpus():
            Y = build_yard(inst)
            rows.append((inst, Y, verify_yard(Y), find_lineup(Y, check=False), psi_brute_force(inst)))
        _REDUCTION["rows"] = rows
        _REDUCTION["seconds"] = time.monotonic() - t0
    return _REDUCTION["rows"], _REDUCTION["seconds"]


def test_3_reduction_end_to_end(report):
    rows, seconds = reduction_results()
    solvable = sum(psi is not None for *_, psi in rows)
    valid = sum(not bad for _, _, bad, _, _ in rows)
    agree = sum((lineup is None) == (psi is None) for *_, lineup, psi in rows)
    small = all(inst.host.n <= 12 for inst, *_ in rows)
    ok = (len(rows) >= 20 and solvable >= 5 and len(rows) - solvable >= 5 and small
          and valid == len(rows) and agree == len(rows) and seconds <= 1800)
    report(3, ok, f"{len(rows)} K4 instances ({solvable} solvable), {valid} valid yards, "
                  f"{agree} agreements, {seconds:.1f}s")


def test_4_lineup_structure(report):
    rows, _ = reduction_results()
    found = [(Y, lineup) for _, Y, _, lineup, _ in rows if lineup is not None]
    bad = [lineup_structure_violations(Y, lineup) for Y, lineup in found]
    ok = found and not any(bad)
    report(4, bool(ok), f"{len(found)} lineups, {sum(1 for b in bad if b)} with structural defects")


# --- mutations ------------------------------------------------------------------

def _edge_row(Y):
    return next(r for r in Y.rows if r.key[0] == "e" and any(o != PAD for o in r.inmate_origin))


def mut_inmate_onto_line(Y):
    """Add an inmate where the line through two inmates of other rows meets a third row."""
    existing = set(Y.pointset().points)
    mid = Y.meta["intervals"]["middle"]
    for ra, rb in itertools.combinations(range(len(Y.rows)), 2):
        for a in Y.rows[ra].inmates:
            for b in Y.rows[rb].inmates:
                for rc in Y.rows:
                    if rc.y in (a.y, b.y):
                        continue
                    x = a.x + Fraction((b.x - a.x) * (rc.y - a.y), b.y - a.y)
                    p = Point(int(x), rc.y)
                    if x.denominator == 1 and mid[0] <= x <= mid[1] and p not in existing:
                        rc.inmates.append(p)
                        rc.inmate_origin.append(PAD)
                        return
    raise AssertionError("no lattice point on an inmate line")


def mut_duplicate_guard(Y):
    r = Y.rows[0]
    r.inmates[0] = r.left_guard


def mut_edge_guard(Y):
    r = _edge_row(Y)
    r.right_guard = Point(r.right_guard.x - 1, r.y)


def mut_edge_inmate(Y):
    r = _edge_row(Y)
    i = next(i for i, o in enumerate(r.inmate_origin) if o != PAD)
    taken = {p.x for p in r.inmates}
    x = r.inmates[i].x - 1
    while x in taken:
        x -= 1
    r.inmates[i] = Point(x, r.y)


def mut_fence(Y):
    f = list(Y.fence)
    f[3] = Point(f[3].x, f[3].y + 1)
    Y.fence = tuple(f)


def mut_inmate_near_guard(Y):
    r = Y.rows[-1]
    r.inmates[-1] = Point(r.right_guard.x - 1, r.y)


MUTATIONS = [mut_inmate_onto_line, mut_duplicate_guard, mut_edge_guard, mut_edge_inmate, mut_fence,
             mut_inmate_near_guard]


def test_5_mutation_sensitivity(report):
    rows, _ = reduction_results()
    yards = [Y for _, Y, bad, _, _ in rows if not bad][:12]
    caught = total = 0
    missed = []
    for Y in yards:
        for mutate in MUTATIONS:
            M = copy.deepcopy(Y)
            mutate(M)
            total += 1
            if verify_yard(M):
                caught += 1
            else:
                missed.append(mutate.__name__)
    report(5, len(yards) >= 10 and caught == total,
           f"{caught}/{total} mutations caught on {len(yards)} yards" + (f", missed {missed}" if missed else ""))


def test_6_coordinate_magnitude(report):
    rows, _ = reduction_results()
    vals = assign_row_coordinates(K4)
    row_ok = max(vals.values()) <= 20 * K4.n
    yard_ok = all(Y.max_coordinate() <= yard_magnitude_bound(len(inst.pattern.edges), len(inst.host.edges))
                  for inst, Y, *_ in rows)
    worst = max(Y.max_coordinate() for _, Y, *_ in rows)
    report(6, row_ok and yard_ok, f"max row value {max(vals.values())} <= {20 * K4.n}, "
                                  f"largest yard coordinate {worst} within the bound on {len(rows)} yards")


def _brute_convex(S):
    n = len(S)
    for size in range(n, 2, -1):
        for sub in itertools.combinations(S.points, size):
            if is_convex_position(sub):
                return size
    return 2


def test_7_convex_dp(report):
    rng = random.Random(7)
    t0 = time.monotonic()
    agree = 0
    for i in range(200):
        n = rng.randint(3, 10)
        S = random_pointset(rng, n, -20, 20) if i % 2 else random_pointset(rng, n, -3, 3)
        agree += len(largest_convex_subset(S)) == _brute_convex(S)
    elapsed = time.monotonic() - t0
    report(7, agree == 200 and elapsed <= 120, f"{agree}/200 agree, {elapsed:.1f}s")


def _planted(rng, P, extra):
    """An integer affine image of P (possibly mirrored) plus random extra points."""
    while True:
        a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
        if a * d - b * c:
            break
    dx, dy = rng.randint(-50, 50), rng.randint(-50, 50)
    pts = {(a * x + b * y + dx, c * x + d * y + dy) for x, y in P.points.points}
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    while len(pts) < len(P) + extra:
        pts.add((rng.randint(min(xs) - 3, max(xs) + 3), rng.randint(min(ys) - 3, max(ys) + 3)))
    pts = list(pts)
    rng.shuffle(pts)
    return PointSet(pts)


def test_8_pattern_matcher(report):
    rng = random.Random(8)
    checked = agree = hits = 0
    for i in range(200):
        mode = i % 4
        if mode == 0:
            S = random_pointset(rng, rng.randint(4, 10), -4, 4)
        elif mode == 1:
            S = random_pointset(rng, rng.randint(4, 10), -20, 20)
        else:
            P = (FOUR_IN_LINE, FENCED_PAIR, BROKEN_GRID)[i % 3]
            S = _planted(rng, P, rng.randint(0, 10 - len(P)))
        for P in (FOUR_IN_LINE, FENCED_PAIR, BROKEN_GRID):
            fast = contains_pattern(S, P)
            slow = contains_pattern_bruteforce(S, P)
            ok = (fast is None) == (slow is None) and (fast is None or is_witness(S, P, fast))
            checked += 1
            agree += ok
            hits += fast is not None
    report(8, agree == checked, f"{agree}/{checked} agree on 200 sets, {hits} containments")


def test_9_ramsey_and_classification(report):
    fixture = json.loads((Path(__file__).parent / "fixtures" / "ramsey.json").read_text())
    by_q = {}
    for run in fixture:
        if run["complete"]:
            by_q.setdefault(run["q"], set()).add(run["size"])
    live = search_free_sets(4, 5)
    cls = classify_property(COMPLIANT)
    ok = (compute_ramsey_r(3) == 2
          and by_q.get(4) == {compute_ramsey_r(4)} and by_q.get(5) == {compute_ramsey_r(5)}
          and live[0] == compute_ramsey_r(4) and live[2]
          and not cls.collinear_true and not cls.convex_excluded)
    report(9, ok, f"r = {[compute_ramsey_r(q) for q in (3, 4, 5)]}, fixtures {dict(sorted(by_q.items()))}, "
                  f"compliant -> collinear_true={cls.collinear_true}, convex_excluded={cls.convex_excluded}")


def test_10_round_trips_and_rendering(report):
    rng = random.Random(10)
    failures = []
    for _ in range(50):
        S = random_pointset(rng, rng.randint(3, 9), -10**40, 10**40)
        t = hio.format_pointset(S)
        if hio.format_pointset(hio.loads_pointset(t)) != t:
            failures.append("pointset")
        a = hio.format_orientation_array(order_type(S))
        if hio.format_orientation_array(hio.loads_orientation_array(a)) != a:
            failures.append("orientation")
        if render_svg(S) != render_svg(hio.loads_pointset(t)):
            failures.append("svg")
    for P in (FOUR_IN_LINE, FENCED_PAIR, BROKEN_GRID):
        t = hio.format_pattern(P)
        if hio.format_pattern(hio.loads_pattern(t)) != t:
            failures.append("pattern")
    rows, _ = reduction_results()
    inst, Y = rows[0][0], rows[0][1]
    g = hio.format_graph(inst.host)
    if hio.format_graph(hio.loads_graph(g)) != g:
        failures.append("graph")
    y = hio.format_yard(Y)
    if hio.format_yard(hio.loads_yard(y)) != y:
        failures.append("yard")
    res = hio.format_record(hio.result_record(solve_dispatch(SolveRequest(CORPUS[0], lq_property(3), 3))))
    if hio.format_record(hio.parse_result(res)) != res:
        failures.append("result")
    svg = render_svg(Y)
    if svg != render_svg(hio.loads_yard(y)):
        failures.append("yard svg")
    if svg.count(f'fill="{FENCE}"') != 6 or FENCE != "#d62728":
        failures.append("fence colour")
    report(10, not failures, "all round trips exact, SVG deterministic, fence drawn red" if not failures
           else f"failed: {sorted(set(failures))}")
