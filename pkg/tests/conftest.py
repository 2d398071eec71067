import itertools
import random

import pytest

from hereditary.geometry import PointSet


def random_pointset(rng: random.Random, n: int, lo: int = -20, hi: int = 20) -> PointSet:
    pts = set()
    while len(pts) < n:
        pts.add((rng.randint(lo, hi), rng.randint(lo, hi)))
    pts = sorted(pts)
    rng.shuffle(pts)
    return PointSet(pts)


def degenerate_pointset(rng: random.Random, n: int, lo: int = -6, hi: int = 6) -> PointSet:
    """Small coordinate range, so collinear triples and quadruples are common."""
    return random_pointset(rng, n, lo, hi)


def grid(w: int, h: int | None = None) -> PointSet:
    h = w if h is None else h
    return PointSet([(x, y) for y in range(h) for x in range(w)])


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def grid3():
    return grid(3)


def subsets(n, k):
    return itertools.combinations(range(n), k)


def colored_host(rng, n, p, colors=4):
    """Random host graph with vertex colors drawn from ``range(colors)``."""
    from hereditary.reduction.graphs import ColoredGraph

    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return ColoredGraph(n, edges, [rng.randrange(colors) for _ in range(n)])


def k4_instances(seed, count, *, n_lo=4, n_hi=8, p=0.6):
    """``count`` PSI instances with a K4 pattern, split evenly between yes and no."""
    from hereditary.reduction.graphs import PsiInstance, complete_graph, psi_brute_force

    rng = random.Random(seed)
    k4 = complete_graph(4)
    want = {True: (count + 1) // 2, False: count // 2}
    out = []
    while want[True] or want[False]:
        inst = PsiInstance(colored_host(rng, rng.randint(n_lo, n_hi), p), k4)
        yes = psi_brute_force(inst) is not None
        if want[yes]:
            want[yes] -= 1
            out.append(inst)
    return out
