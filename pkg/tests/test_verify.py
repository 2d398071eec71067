import copy
from fractions import Fraction
from functools import lru_cache

import pytest

from hereditary.geometry import Point
from hereditary.patterns import BASE_FENCE
from hereditary.reduction.verify import verify_yard
from hereditary.reduction.yard import PAD, Row, Yard, build_yard

from conftest import k4_instances

FENCE = tuple(Point(*p) for p in BASE_FENCE)


def tiny_yard(xs, ys=(33, 34, 35), gl=-21, gr=59):
    """Three rows (two vertex rows and their edge row), one inmate each."""
    keys = [("v", 0), ("v", 1), ("e", 0, 1)]
    return Yard(FENCE, [Row(k, y, Point(gl, y), Point(gr, y), [Point(x, y)], [k]) for k, y, x in zip(keys, ys, xs)])


@lru_cache(maxsize=None)
def base_yards():
    return tuple(build_yard(inst) for inst in k4_instances(5, 4))


def _kinds(Y):
    return {v.split(":")[0] for v in verify_yard(Y)}


def _edge_row(Y):
    return next(r for r in Y.rows if r.key[0] == "e" and any(o != PAD for o in r.inmate_origin))


def nudge_edge_guard(Y):
    r = _edge_row(Y)
    r.left_guard = Point(r.left_guard.x + 1, r.y)
    return "edge-guard-collinearity"


def nudge_edge_inmate(Y):
    r = _edge_row(Y)
    i = next(i for i, o in enumerate(r.inmate_origin) if o != PAD)
    taken = {p.x for p in r.inmates}
    x = r.inmates[i].x + 1
    while x in taken:
        x += 1
    r.inmates[i] = Point(x, r.y)
    return "edge-inmate-collinearity"


def duplicate_guard(Y):
    Y.rows[1].left_guard = Y.rows[0].left_guard
    return "duplicate-point"


def shift_fence(Y):
    f = list(Y.fence)
    f[0] = Point(f[0].x + 1, f[0].y)
    Y.fence = tuple(f)
    return "fence-quadrilateral"


def inmate_near_guard(Y):
    r = Y.rows[0]
    r.inmates[0] = Point(r.left_guard.x + 2, r.y)
    return "inmate-line-sides"


def stray_inmate_triple(Y):
    a, b, r = Y.rows[0].inmates[0], Y.rows[1].inmates[0], Y.rows[2]
    x = a.x + Fraction((b.x - a.x) * (r.y - a.y), b.y - a.y)
    x = int(x) if x.denominator == 1 else int(x) + 1
    if Point(x, r.y) in r.inmates:
        x += 1  # lands on an intended point; fall back to a plain off-line inmate
    r.inmates.append(Point(x, r.y))
    r.inmate_origin.append(PAD)
    return None  # either an unintended triple or a sides/fenced-pair breach, depending on rounding


def lift_guard(Y):
    r = Y.rows[0]
    r.right_guard = Point(r.right_guard.x, r.y + 1)
    return "row-structure"


MUTATIONS = [nudge_edge_guard, nudge_edge_inmate, duplicate_guard, shift_fence, inmate_near_guard, lift_guard]


def test_built_yards_are_valid():
    for Y in base_yards():
        assert verify_yard(Y) == []


@pytest.mark.parametrize("mutate", MUTATIONS, ids=lambda f: f.__name__)
def test_mutation_is_reported(mutate):
    for Y in base_yards():
        Y = copy.deepcopy(Y)
        expected = mutate(Y)
        assert expected in _kinds(Y)


def test_stray_inmate_is_reported():
    for Y in base_yards():
        Y = copy.deepcopy(Y)
        stray_inmate_triple(Y)
        assert verify_yard(Y)


def test_exact_stray_triple():
    Y = copy.deepcopy(base_yards()[0])
    # rows 0 and 1 are the two lowest vertex rows; pick inmates whose line is not a host edge
    for a in Y.rows[0].inmates:
        for b in Y.rows[1].inmates:
            x = a.x + Fraction((b.x - a.x) * (Y.rows[2].y - a.y), b.y - a.y)
            if x.denominator == 1 and Point(int(x), Y.rows[2].y) not in Y.rows[2].inmates:
                Y.rows[2].inmates.append(Point(int(x), Y.rows[2].y))
                Y.rows[2].inmate_origin.append(PAD)
                assert "inmate-triple" in _kinds(Y)
                return
    pytest.skip("no integral stray point in this yard")


def test_tiny_hand_built_yard():
    assert verify_yard(tiny_yard([32, 32, 32])) == []
    assert verify_yard(tiny_yard([31, 32, 33])) == []
    assert "edge-inmate-collinearity" in _kinds(tiny_yard([32, 32, 33]))
    assert "row-structure" in _kinds(tiny_yard([32, 32, 32], ys=(33, 33, 35)))
    assert "fence-encloses" in _kinds(tiny_yard([32, 32, 32], gl=0))


def test_empty_row_is_reported():
    Y = tiny_yard([32, 32, 32])
    Y.rows[0].inmates, Y.rows[0].inmate_origin = [], []
    assert "row-structure" in _kinds(Y)
