"""Graph representation, graph6 I/O and the exact distance structure.

Vertex order is always the graph6 order; nothing is relabelled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import (
    Disconnected,
    Graph6Error,
    Irregular,
    NotSimple,
    TooLarge,
    TooSmall,
)

GRAPH6_HEADER = ">>graph6<<"
DEFAULT_MAX_N = 512


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    adjacency: np.ndarray
    name: str | None = None

    def __post_init__(self):
        a = np.asarray(self.adjacency)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise NotSimple("adjacency must be a square matrix")
        if not np.isin(a, (0, 1)).all():
            raise NotSimple("adjacency entries must be 0 or 1")
        if (a != a.T).any():
            raise NotSimple("adjacency must be symmetric")
        if a.shape[0] and np.diagonal(a).any():
            raise NotSimple("loops are not allowed")
        object.__setattr__(self, "adjacency", _frozen(a.astype(np.int8)))

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @cached_property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1, dtype=np.int64)

    @property
    def num_edges(self) -> int:
        return int(self.degrees.sum()) // 2

    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(us.tolist(), vs.tolist()))

    @classmethod
    def from_edges(cls, n: int, edges, name: str | None = None) -> Graph:
        a = np.zeros((n, n), dtype=np.int8)
        for u, v in edges:
            if u == v:
                raise NotSimple(f"loop at vertex {u}")
            a[u, v] = a[v, u] = 1
        return cls(a, name)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Graph{label} n={self.n} m={self.num_edges}>"


@dataclass(frozen=True, eq=False, repr=False)
class ValidatedGraph(Graph):
    """A graph known to be connected and ``degree``-regular with n >= 2."""

    degree: int = 0


# -- graph6 -----------------------------------------------------------------


def _sixes(line: str, start: int, count: int) -> list[int]:
    out = []
    for k in range(start, start + count):
        if k >= len(line):
            raise Graph6Error("truncated graph6 string", k)
        c = ord(line[k])
        if not 63 <= c <= 126:
            raise Graph6Error(f"character {line[k]!r} outside the graph6 range", k)
        out.append(c - 63)
    return out


def _decode_size(line: str) -> tuple[int, int]:
    """Return (n, offset of first data byte)."""
    if not line:
        raise Graph6Error("empty graph6 string", 0)
    c = ord(line[0])
    if c < 63 or c > 126:
        raise Graph6Error(f"malformed header byte {line[0]!r}", 0)
    if c < 126:
        return c - 63, 1
    if len(line) > 1 and line[1] == "~":
        words, start = 6, 2
    else:
        words, start = 3, 1
    n = 0
    for x in _sixes(line, start, words):
        n = (n << 6) | x
    return n, start + words


def parse_graph6(line: str, name: str | None = None) -> Graph:
    """Decode one graph6 line. Connectivity and regularity are not checked here."""
    line = line.rstrip()
    if line.startswith(GRAPH6_HEADER):
        line = line[len(GRAPH6_HEADER):]
    n, pos = _decode_size(line)
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    data = _sixes(line, pos, nbytes)
    if len(line) > pos + nbytes:
        raise Graph6Error("unexpected trailing data", pos + nbytes)
    bits = np.zeros(nbytes * 6, dtype=np.int8)
    for k, x in enumerate(data):
        for b in range(6):
            bits[6 * k + b] = (x >> (5 - b)) & 1
    if bits[nbits:].any():
        raise Graph6Error("nonzero padding bits", pos + nbytes - 1)
    a = np.zeros((n, n), dtype=np.int8)
    if n > 1:
        # column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
        rows = np.concatenate([np.arange(j) for j in range(1, n)])
        cols = np.concatenate([np.full(j, j) for j in range(1, n)])
        on = bits[:nbits].astype(bool)
        a[rows[on], cols[on]] = 1
        a[cols[on], rows[on]] = 1
    return Graph(a, name)


def encode_graph6(g: Graph) -> str:
    n = g.n
    if n < 63:
        head = [n]
    elif n < 258048:
        head = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    else:
        head = [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
    bits = [int(g.adjacency[i, j]) for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = [int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6)]
    return "".join(chr(x + 63) for x in head + body)


# -- validation ---------------------------------------------------------------


def _reachable(adjacency: np.ndarray, source: int = 0) -> np.ndarray:
    seen = np.zeros(adjacency.shape[0], dtype=bool)
    seen[source] = True
    frontier = seen.copy()
    while frontier.any():
        frontier = adjacency[frontier].any(axis=0) & ~seen
        seen |= frontier
    return seen


def validate(g: Graph, max_n: int = DEFAULT_MAX_N) -> ValidatedGraph:
    if g.n < 2:
        raise TooSmall(f"need at least 2 vertices, got {g.n}")
    if g.n > max_n:
        raise TooLarge(f"{g.n} vertices exceeds the configured cap of {max_n}")
    deg = g.degrees
    odd = np.nonzero(deg != deg[0])[0]
    if odd.size:
        v = int(odd[0])
        raise Irregular(0, v, int(deg[0]), int(deg[v]))
    if not _reachable(g.adjacency).all():
        raise Disconnected("graph is not connected")
    return ValidatedGraph(g.adjacency, g.name, degree=int(deg[0]))


# -- distances ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DistanceStructure:
    dist: np.ndarray
    diameter: int
    class_sizes: tuple[int, ...]
    eccentricities: np.ndarray
    girth: int | None
    bipartite: bool
    parts: tuple[np.ndarray, np.ndarray] | None
    _order: np.ndarray = field(repr=False)
    _starts: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    @property
    def D(self) -> int:
        return self.diameter

    @cached_property
    def average_degrees(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(s, self.n) for s in self.class_sizes)

    def distance_matrix(self, h: int) -> np.ndarray:
        return (self.dist == h).astype(np.int8)

    @cached_property
    def distance_matrices(self) -> list[np.ndarray]:
        return [self.distance_matrix(h) for h in range(self.diameter + 1)]

    def class_reduce(self, m: np.ndarray, ufunc=np.add) -> np.ndarray:
        """Reduce ``m`` over each distance class; result indexed by h = 0..D.

        ``m`` may carry leading batch axes; the last two must be n x n.
        """
        flat = m.reshape(m.shape[:-2] + (-1,))[..., self._order]
        return ufunc.reduceat(flat, self._starts, axis=-1)

    def class_values(self, m: np.ndarray, h: int) -> np.ndarray:
        lo = self._starts[h]
        hi = self._starts[h + 1] if h < self.diameter else self.n * self.n
        return m.reshape(-1)[self._order[lo:hi]]

    def regular_classes(self) -> list[bool]:
        """Whether each distance-h graph is regular."""
        out = []
        for h in range(self.diameter + 1):
            rows = (self.dist == h).sum(axis=1)
            out.append(bool((rows == rows[0]).all()))
        return out


def _bfs_all(adjacency: np.ndarray) -> np.ndarray:
    n = adjacency.shape[0]
    dist = np.full((n, n), -1, dtype=np.int64)
    np.fill_diagonal(dist, 0)
    reached = np.eye(n, dtype=bool)
    frontier = reached.copy()
    a = adjacency.astype(np.float64)
    level = 0
    while frontier.any():
        level += 1
        # 0/1 products count at most n walks, so float64 is exact here
        nxt = (frontier.astype(np.float64) @ a > 0.5) & ~reached
        dist[nxt] = level
        reached |= nxt
        frontier = nxt
    return dist


def _girth(adjacency: np.ndarray, dist: np.ndarray) -> int | None:
    n = adjacency.shape[0]
    us, ws = np.nonzero(np.triu(adjacency, 1))
    if us.size == n - 1:
        return None  # a tree has no cycles
    best = n + 1
    adj = adjacency.astype(bool)
    for r in range(n):
        lev = dist[r]
        same = lev[us] == lev[ws]
        if same.any():
            best = min(best, int(2 * lev[us][same].min() + 1))
        below = (lev[None, :] == lev[:, None] - 1) & adj
        two = below.sum(axis=1) >= 2
        if two.any():
            best = min(best, int(2 * lev[two].min()))
    return best


def distance_structure(g: ValidatedGraph) -> DistanceStructure:
    dist = _bfs_all(g.adjacency)
    D = int(dist.max())
    flat = dist.reshape(-1)
    order = np.argsort(flat, kind="stable")
    sizes = np.bincount(flat, minlength=D + 1)
    starts = np.concatenate([[0], np.cumsum(sizes)[:-1]])
    parity = dist[0] % 2
    us, ws = np.nonzero(g.adjacency)
    bipartite = bool((parity[us] != parity[ws]).all())
    parts = None
    if bipartite:
        parts = (_frozen(np.nonzero(parity == 0)[0]), _frozen(np.nonzero(parity == 1)[0]))
    return DistanceStructure(
        dist=_frozen(dist),
        diameter=D,
        class_sizes=tuple(int(s) for s in sizes),
        eccentricities=_frozen(dist.max(axis=1)),
        girth=_girth(g.adjacency, dist),
        bipartite=bipartite,
        parts=parts,
        _order=_frozen(order),
        _starts=_frozen(starts),
    )
