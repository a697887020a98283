"""Named test graphs.

The four Foster census graphs are rebuilt from standard constructions so the
suite runs offline. If ``ADRG_FIXTURES`` is set, census data found there takes
precedence: either a directory of ``NAME.g6`` files or a single file with
lines ``<graph6> NAME``.
"""

from __future__ import annotations

import itertools
import os
from pathlib import Path

import numpy as np

from .graph import Graph, parse_graph6

CENSUS = ("F026A", "F084A", "F168F", "F234B")


def lcf(n: int, shifts, repeats: int, name: str | None = None) -> Graph:
    edges = {(i, (i + 1) % n) for i in range(n)}
    seq = list(shifts) * repeats
    for i, s in enumerate(seq):
        edges.add((i, (i + s) % n))
    return Graph.from_edges(n, edges, name)


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}")


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2), f"K{n}")


def complete_bipartite(p: int, q: int) -> Graph:
    return Graph.from_edges(p + q, [(i, p + j) for i in range(p) for j in range(q)], f"K{p},{q}")


def hypercube(k: int) -> Graph:
    n = 1 << k
    return Graph.from_edges(n, [(v, v ^ (1 << b)) for v in range(n) for b in range(k) if v < v ^ (1 << b)], f"Q{k}")


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner, "Petersen")


def bipartite_double(g: Graph, name: str | None = None) -> Graph:
    a = g.adjacency
    z = np.zeros_like(a)
    return Graph(np.block([[z, a], [a, z]]), name)


def drg_corpus() -> list[Graph]:
    return [complete(2), cycle(4), cycle(5), cycle(6), complete_bipartite(3, 3), hypercube(3), petersen()]


# -- F026A ------------------------------------------------------------------


def f026a() -> Graph:
    return lcf(26, [7, -7], 13, "F026A")


# -- F084A: orbital graph of PSL(2,8) on the cosets of an S3 ----------------


def _gf8_mul(a: int, b: int) -> int:
    r = 0
    for i in range(3):
        if b >> i & 1:
            r ^= a << i
    for i in (4, 3):  # reduce modulo x^3 + x + 1
        if r >> i & 1:
            r ^= 0b1011 << (i - 3)
    return r


def _mat_mul(x, y):
    a, b, c, d = x
    e, f, g, h = y
    m = _gf8_mul
    return (m(a, e) ^ m(b, g), m(a, f) ^ m(b, h), m(c, e) ^ m(d, g), m(c, f) ^ m(d, h))


def _generate(gens, identity):
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _mat_mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def f084a() -> Graph:
    ident = (1, 0, 0, 1)
    group = [
        m for m in itertools.product(range(8), repeat=4)
        if _gf8_mul(m[0], m[3]) ^ _gf8_mul(m[1], m[2]) == 1
    ]

    def order(m):
        k, x = 1, m
        while x != ident:
            x, k = _mat_mul(x, m), k + 1
        return k

    r = next(m for m in group if order(m) == 3)
    sub = None
    for t in group:
        if order(t) == 2:
            h = _generate([r, t], ident)
            if len(h) == 6:
                sub = h
                break
    index, reps = {}, []
    for g in group:
        c = frozenset(_mat_mul(h, g) for h in sub)
        if c not in index:
            index[c] = len(reps)
            reps.append(g)

    def coset(g):
        return index[frozenset(_mat_mul(h, g) for h in sub)]

    seen = set()
    for x in reps:
        orbit = frozenset(coset(_mat_mul(x, h)) for h in sub)
        if orbit in seen:
            continue
        seen.add(orbit)
        if len(orbit) != 3:
            continue
        edges = {tuple(sorted((coset(g), coset(_mat_mul(reps[y], g))))) for g in group for y in orbit}
        a = np.zeros((len(reps), len(reps)), dtype=np.int8)
        for u, v in edges:
            if u != v:
                a[u, v] = a[v, u] = 1
        if (a.sum(axis=1) == 3).all():
            from .graph import _reachable

            if _reachable(a).all():
                return Graph(a, "F084A")
    raise RuntimeError("no connected cubic orbital graph found")


def f168f() -> Graph:
    return bipartite_double(f084a(), "F168F")


# -- F234B: triangles of PG(2,3) ---------------------------------------------


def f234b() -> Graph:
    """Vertices are the non-collinear point triples of PG(2,3); two triangles
    are adjacent when they share one vertex and their other four points lie
    on a line."""
    pts = [v for v in itertools.product(range(3), repeat=3) if any(v) and v[next(k for k in range(3) if v[k])] == 1]
    lines = [frozenset(p for p in pts if sum(a * b for a, b in zip(p, l)) % 3 == 0) for l in pts]

    def on_line(s):
        return any(s <= line for line in lines)

    tri = [frozenset(t) for t in itertools.combinations(pts, 3) if not on_line(frozenset(t))]
    n = len(tri)
    a = np.zeros((n, n), dtype=np.int8)
    for i, j in itertools.combinations(range(n), 2):
        s, t = tri[i], tri[j]
        if len(s & t) == 1 and on_line(s ^ t):
            a[i, j] = a[j, i] = 1
    return Graph(a, "F234B")


BUILDERS = {"F026A": f026a, "F084A": f084a, "F168F": f168f, "F234B": f234b}


def _from_env(name: str) -> Graph | None:
    root = os.environ.get("ADRG_FIXTURES")
    if not root:
        return None
    path = Path(root)
    if path.is_dir():
        f = path / f"{name}.g6"
        if f.exists():
            return parse_graph6(f.read_text().split()[0], name)
        return None
    for line in path.read_text().splitlines():
        parts = line.split()
        if len(parts) >= 2 and parts[1] == name:
            return parse_graph6(parts[0], name)
    return None


def census_graph(name: str) -> Graph:
    """Census data when available, otherwise the construction."""
    g = _from_env(name)
    return g if g is not None else BUILDERS[name]()


def census_source(name: str) -> str:
    return "census" if _from_env(name) is not None else "construction"
