"""Internal vectorized edge scans.

Per-edge checks (contraction factors, CRR inequalities, nonexpansiveness)
reduce to folds over arrays D = d(x, y), DF = d(Fx, Gy) and
U = d(x, Fx) + d(y, Gy), streamed in blocks so complete graphs over large
sample grids never materialize the full pair matrix at once.
"""
from __future__ import annotations

import numpy as np

from .graph import COMPLETE, CUSTOM, DIAGONAL, EXPLICIT, contains_edge
from .metric import CoordinateSpace, TabulatedSpace

_BLOCK_ELEMS = 2_000_000
_CACHE_LIMIT = 20_000_000


def point_array(space, pts):
    if isinstance(space, TabulatedSpace):
        return np.asarray(pts, dtype=np.intp)
    arr = np.asarray([tuple(p) for p in pts], dtype=float)
    return arr.reshape(len(pts), -1)


def elem_dists(space, p, q):
    """Distances between aligned point arrays."""
    if isinstance(space, TabulatedSpace):
        return np.asarray(space.dist[p, q], dtype=float)
    diff = p - q
    return np.sqrt(np.einsum("...i,...i->...", diff, diff))


def cross_dists(space, p, q):
    """Full |p| x |q| distance matrix."""
    if isinstance(space, TabulatedSpace):
        return np.asarray(space.dist[np.ix_(p, q)], dtype=float)
    from scipy.spatial.distance import cdist

    return cdist(p, q)


class EdgeScanner:
    """Streams (I, J, D, DF, U) over the edges of a graph.

    I and J index into ``points``; DF uses ``images_left`` on the I side and
    ``images_right`` on the J side (both equal to the single map's images in
    the one-map case).  ``rows``/``cols`` restrict a complete graph to a
    sub-rectangle of the pair set (used for the A x B scans of map pairs).
    """

    def __init__(self, space, points, graph, images_left, images_right=None,
                 rows=None, cols=None, cache=False):
        self.space = space
        self.points = tuple(points)
        self.graph = graph
        n = len(self.points)
        self.P = point_array(space, self.points)
        self.FL = point_array(space, images_left)
        self.FR = self.FL if images_right is None else point_array(space, images_right)
        self.self_left = elem_dists(space, self.P, self.FL)
        self.self_right = elem_dists(space, self.P, self.FR)
        self.rows = np.arange(n) if rows is None else np.asarray(rows, dtype=np.intp)
        self.cols = np.arange(n) if cols is None else np.asarray(cols, dtype=np.intp)
        self._pairs = None
        if graph.rule in (EXPLICIT, CUSTOM, DIAGONAL):
            self._pairs = self._listed_pairs()
        self._cache = None
        n_edges = self.edge_count()
        self._want_cache = cache and n_edges <= _CACHE_LIMIT

    def _listed_pairs(self):
        order = {p: i for i, p in enumerate(self.points)}
        rset = set(self.rows.tolist())
        cset = set(self.cols.tolist())
        out = []
        if self.graph.rule == DIAGONAL:
            for i in range(len(self.points)):
                if i in rset and i in cset:
                    out.append((i, i))
        elif self.graph.rule == EXPLICIT:
            idx = []
            for x, y in self.graph.edges:
                i = order.get(x)
                j = order.get(y)
                if i is not None and j is not None and i in rset and j in cset:
                    idx.append((i, j))
            out = sorted(idx)
        else:  # CUSTOM
            for i in self.rows.tolist():
                for j in self.cols.tolist():
                    if contains_edge(self.graph, self.points[i], self.points[j]):
                        out.append((i, j))
        if out:
            arr = np.asarray(out, dtype=np.intp)
            return arr[:, 0], arr[:, 1]
        return np.zeros(0, dtype=np.intp), np.zeros(0, dtype=np.intp)

    def edge_count(self) -> int:
        if self._pairs is not None:
            return int(self._pairs[0].size)
        return int(self.rows.size) * int(self.cols.size)

    def blocks(self):
        """Yield (I, J, D, DF, U) in deterministic lexicographic order."""
        if self._cache is not None:
            yield from self._cache
            return
        store = [] if self._want_cache else None
        for blk in self._raw_blocks():
            if store is not None:
                store.append(blk)
            yield blk
        if store is not None:
            self._cache = store

    def _raw_blocks(self):
        if self._pairs is not None:
            i, j = self._pairs
            for s in range(0, i.size, _BLOCK_ELEMS):
                bi = i[s:s + _BLOCK_ELEMS]
                bj = j[s:s + _BLOCK_ELEMS]
                d = elem_dists(self.space, self.P[bi], self.P[bj])
                df = elem_dists(self.space, self.FL[bi], self.FR[bj])
                u = self.self_left[bi] + self.self_right[bj]
                yield bi, bj, d, df, u
            return
        nc = self.cols.size
        if nc == 0 or self.rows.size == 0:
            return
        rb = max(1, _BLOCK_ELEMS // nc)
        pc = self.P[self.cols]
        fc = self.FR[self.cols]
        uc = self.self_right[self.cols]
        for s in range(0, self.rows.size, rb):
            r = self.rows[s:s + rb]
            d = cross_dists(self.space, self.P[r], pc).ravel()
            df = cross_dists(self.space, self.FL[r], fc).ravel()
            u = (self.self_left[r][:, None] + uc[None, :]).ravel()
            i = np.repeat(r, nc)
            j = np.tile(self.cols, r.size)
            yield i, j, d, df, u

    def edge_points(self, i: int, j: int):
        return self.points[i], self.points[j]


def fold_max(scanner: EdgeScanner, value_fn):
    """Max of value_fn(D, DF, U) over all edges, with the first arg-max edge.

    Returns (max_value, (i, j)) or (None, None) when there are no edges.
    """
    best = None
    best_edge = None
    for i, j, d, df, u in scanner.blocks():
        if d.size == 0:
            continue
        vals = value_fn(d, df, u)
        pos = int(np.argmax(vals))
        v = float(vals[pos])
        if best is None or v > best:
            best = v
            best_edge = (int(i[pos]), int(j[pos]))
    return best, best_edge
