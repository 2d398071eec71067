"""Colored graphs, partitioned subgraph isomorphism (PSI) and its reductions."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from ..exceptions import DegreeTooLow


@dataclass(frozen=True)
class ColoredGraph:
    n: int
    edges: tuple
    colors: tuple

    def __init__(self, n: int, edges: Iterable = (), colors: Iterable | None = None):
        seen = set()
        norm = []
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        cols = tuple(int(c) for c in colors) if colors is not None else (0,) * n
        if len(cols) != n:
            raise ValueError("one color per vertex is required")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "colors", cols)

    def adjacency(self) -> list:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def neighbors(self) -> list:
        """Sorted neighbor lists."""
        return [sorted(a) for a in self.adjacency()]

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def is_cubic(self) -> bool:
        return all(len(a) == 3 for a in self.adjacency())

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in set(self.edges)


@dataclass(frozen=True)
class PsiInstance:
    host: ColoredGraph
    pattern: ColoredGraph

    def __post_init__(self):
        if len(set(self.pattern.colors)) != self.pattern.n:
            raise ValueError("pattern vertices must have distinct colors")

    @property
    def color_to_pattern(self) -> dict:
        return {c: v for v, c in enumerate(self.pattern.colors)}

    @property
    def is_cubic(self) -> bool:
        return self.pattern.is_cubic()


def complete_graph(k: int, colors=None) -> ColoredGraph:
    return ColoredGraph(k, itertools.combinations(range(k), 2), colors if colors is not None else range(k))


def psi_brute_force(inst: PsiInstance):
    """A color-respecting map pattern vertex -> host vertex, or None."""
    G, H = inst.pattern, inst.host
    hadj = H.adjacency()
    gnbrs = G.neighbors()
    classes = {}
    for w, c in enumerate(H.colors):
        classes.setdefault(c, []).append(w)
    order = sorted(range(G.n), key=lambda v: (len(classes.get(G.colors[v], ())), v))
    assign: dict = {}

    def rec(t):
        if t == len(order):
            return True
        v = order[t]
        for w in classes.get(G.colors[v], ()):
            if all(w in hadj[assign[u]] for u in gnbrs[v] if u in assign):
                assign[v] = w
                if rec(t + 1):
                    return True
                del assign[v]
        return False

    return dict(sorted(assign.items())) if rec(0) else None


def clique_to_psi(G: ColoredGraph, k: int) -> PsiInstance:
    """Tensor product with K_k; vertex ``(u, v)`` gets index ``u*k + v`` and color ``v``.

    ``(u, v) ~ (u', v')`` iff ``u ~ u'`` in G and ``v != v'``, so a colorful
    K_k in the product is exactly a k-clique of G.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    edges = []
    for (u, up) in G.edges:
        for v, vp in itertools.permutations(range(k), 2):
            a, b = u * k + v, up * k + vp
            edges.append((min(a, b), max(a, b)))
    host = ColoredGraph(G.n * k, sorted(set(edges)), [v for _ in range(G.n) for v in range(k)])
    return PsiInstance(host, complete_graph(k))


def _interior_tree(nbrs: list):
    """Caterpillar with internal degree 3 whose leaves are ``nbrs``.

    Returns (number of internal nodes, internal edges, leaf -> internal node).
    """
    d = len(nbrs)
    m = d - 2
    attach = {}
    attach[nbrs[0]] = 0
    for i in range(1, d - 1):
        attach[nbrs[i]] = i - 1
    attach[nbrs[d - 1]] = m - 1
    edges = [(i, i + 1) for i in range(m - 1)]
    return m, edges, attach


def psi_to_cubic(inst: PsiInstance) -> PsiInstance:
    """Replace every pattern vertex by a tree of degree-3 nodes (and the host alike)."""
    G, H = inst.pattern, inst.host
    gn = G.neighbors()
    low = [v for v in range(G.n) if len(gn[v]) < 3]
    if low:
        raise DegreeTooLow(f"pattern vertices {low} have degree below 3")
    trees = [_interior_tree(gn[v]) for v in range(G.n)]
    base = []
    total = 0
    for m, _, _ in trees:
        base.append(total)
        total += m
    p_edges = []
    for v, (m, tedges, _) in enumerate(trees):
        p_edges += [(base[v] + a, base[v] + b) for a, b in tedges]
    for u, v in G.edges:
        p_edges.append((base[u] + trees[u][2][v], base[v] + trees[v][2][u]))
    pattern = ColoredGraph(total, p_edges, range(total))

    c2v = inst.color_to_pattern
    hbase = {}
    h_colors = []
    h_edges = []
    for w, c in enumerate(H.colors):
        if c not in c2v:
            continue
        v = c2v[c]
        m, tedges, _ = trees[v]
        hbase[w] = len(h_colors)
        h_colors += [base[v] + i for i in range(m)]
        h_edges += [(hbase[w] + a, hbase[w] + b) for a, b in tedges]
    gadj = G.adjacency()
    for w, x in H.edges:
        if w not in hbase or x not in hbase:
            continue
        u, v = c2v[H.colors[w]], c2v[H.colors[x]]
        if v in gadj[u]:
            h_edges.append((hbase[w] + trees[u][2][v], hbase[x] + trees[v][2][u]))
    host = ColoredGraph(len(h_colors), h_edges, h_colors)
    return PsiInstance(host, pattern)
