"""Worked-example instances, seeded random instances, and instance files.

Tabulated instances serialize losslessly (lower triangle of the matrix,
index sets, map tables, edge lists).  Coordinate instances serialize as the
builder name plus its parameters and are rebuilt on load.  See
docs/instance_format.md for the file grammar.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.spatial.distance import cdist

from .errors import ParseError, SpecError
from .graph import (COMPLETE, CUSTOM, DIAGONAL, EXPLICIT, DirectedGraph,
                    complete_graph, diagonal_graph, explicit_graph)
from .maps import CyclicMap, Instance, MapPair
from .metric import CoordinateSpace, SubsetPair, TabulatedSpace

_EDGE_TOL = 1e-9

#: Named predicates usable for custom graph rules in instance files.
GRAPH_PREDICATES = {}


def _check_divides(step: float, length: float, what: str) -> int:
    if step <= 0:
        raise SpecError("grid step must be positive")
    k = round(length / step)
    if k < 1 or abs(k * step - length) > _EDGE_TOL:
        raise SpecError(f"grid step {step!r} does not divide {what} evenly")
    return k


def interval_example(grid_step: float = 0.01) -> Instance:
    """A = [-3, -1], B = [1, 3] with the halving map between them."""
    k = _check_divides(grid_step, 2.0, "the interval length 2")
    a = tuple((float(x),) for x in np.linspace(-3.0, -1.0, k + 1))
    b = tuple((float(x),) for x in np.linspace(1.0, 3.0, k + 1))

    def t(p):
        (x,) = p
        if x < 0:
            return ((1.0 - x) / 2.0,)
        return ((-1.0 - x) / 2.0,)

    sets = SubsetPair(
        a, b,
        a_contains=lambda p: -3.0 - _EDGE_TOL <= p[0] <= -1.0 + _EDGE_TOL,
        b_contains=lambda p: 1.0 - _EDGE_TOL <= p[0] <= 3.0 + _EDGE_TOL,
    )
    fmap = CyclicMap("interval-halving", fn=t)
    return Instance("interval", CoordinateSpace(1), sets, complete_graph(),
                    cyclic_map=fmap, grid_step=grid_step,
                    params=(("builder", "interval"), ("grid_step", grid_step)))


def ellipse_example(grid_step: float = 0.1) -> Instance:
    """Two overlapping elliptical discs in the plane, mirrored by x -> -x."""
    if grid_step <= 0:
        raise SpecError("grid step must be positive")
    k = int(math.ceil(1.5 / grid_step))
    axis = [i * grid_step for i in range(-k, k + 1)]

    def in_a(p):
        x, y = p
        return (x - y) ** 2 + y * y <= 1.0 + _EDGE_TOL

    def in_b(p):
        x, y = p
        return (x + y) ** 2 + y * y <= 1.0 + _EDGE_TOL

    a = tuple((x, y) for x in axis for y in axis if in_a((x, y)))
    b = tuple((x, y) for x in axis for y in axis if in_b((x, y)))

    def t(p):
        x, y = p
        return (-x, y)

    sets = SubsetPair(a, b, a_contains=in_a, b_contains=in_b)
    fmap = CyclicMap("mirror-x", fn=t)
    return Instance("ellipse", CoordinateSpace(2), sets, complete_graph(),
                    cyclic_map=fmap, grid_step=grid_step,
                    params=(("builder", "ellipse"), ("grid_step", grid_step)))


def _segment_grids(grid_step: float):
    m = _check_divides(grid_step, 1.0, "the unit interval")
    if m % 2 != 0:
        raise SpecError(f"grid step {grid_step!r} must place x = 1/2 on the grid")
    xs = np.linspace(0.0, 1.0, m + 1)
    a = tuple((float(x), 0.0) for x in xs)
    b = tuple((float(x), 1.0) for x in xs)
    sets = SubsetPair(
        a, b,
        a_contains=lambda p: abs(p[1]) <= _EDGE_TOL,
        b_contains=lambda p: abs(p[1] - 1.0) <= _EDGE_TOL,
    )
    return sets


def segments_example(grid_step: float = 0.01) -> Instance:
    """Unit segments at heights 0 and 1 with constant maps to their midpoints."""
    sets = _segment_grids(grid_step)
    t = CyclicMap("const-upper-mid", fn=lambda p: (0.5, 1.0))
    s = CyclicMap("const-lower-mid", fn=lambda p: (0.5, 0.0))
    return Instance("segments", CoordinateSpace(2), sets, complete_graph(),
                    map_pair=MapPair(t, s), grid_step=grid_step,
                    params=(("builder", "segments"), ("grid_step", grid_step)))


def affine_segments_pair(factor: float, shift: float = 0.0,
                         grid_step: float = 0.01) -> Instance:
    """Two-map instance on the parallel lines y = 0 and y = 1.

    T and S apply the same horizontal affine contraction and swap the
    lines, so d(Tp, Sq) <= factor * d(p, q) + (1 - factor) * d(A, B) holds
    exactly; built for the alternating scheme.
    """
    if not (0.0 <= factor < 1.0):
        raise SpecError("factor must lie in [0, 1)")
    sets = _segment_grids(grid_step)
    t = CyclicMap("affine-up", fn=lambda p: (factor * p[0] + shift, 1.0))
    s = CyclicMap("affine-down", fn=lambda p: (factor * p[0] + shift, 0.0))
    return Instance("affine-segments", CoordinateSpace(2), sets, complete_graph(),
                    map_pair=MapPair(t, s), grid_step=grid_step,
                    params=(("builder", "affine-segments"), ("factor", factor),
                            ("shift", shift), ("grid_step", grid_step)))


def _tabulated_from_coords(coords: np.ndarray) -> TabulatedSpace:
    return TabulatedSpace(cdist(coords, coords))


def _graph_from_rule(rule: str, n: int, rng) -> DirectedGraph:
    if rule == "complete":
        return complete_graph()
    if rule == "diagonal":
        return diagonal_graph()
    if rule.startswith("random:"):
        p = float(rule.split(":", 1)[1])
        draws = rng.random((n, n))
        edges = {(i, i) for i in range(n)}
        edges.update((i, j) for i in range(n) for j in range(n)
                     if i != j and draws[i, j] < p)
        return explicit_graph(edges)
    raise SpecError(f"unknown graph rule {rule!r}")


def _nearest_in(coords: np.ndarray, sources, targets) -> dict:
    d = cdist(coords[list(sources)], coords[list(targets)])
    picks = d.argmin(axis=1)
    tlist = list(targets)
    return {s: tlist[int(p)] for s, p in zip(sources, picks)}


def random_instance(seed: int, n_a: int, n_b: int,
                    box=(0.0, 0.0, 1.0, 1.0), b_offset=(0.0, 0.0),
                    map_rule: str = "nearest",
                    graph_rule: str = "complete") -> Instance:
    """Seeded tabulated instance from two uniform planar point clouds.

    The metric is the Euclidean distance of the sampled points, so the
    metric axioms hold by construction.  Map rules: ``nearest`` (each point
    goes to the closest point of the other set) and ``affine:<f>`` (each
    point is pulled toward the other set's centroid by factor f, then
    snapped to the closest sample there).
    """
    if n_a < 1 or n_b < 1:
        raise SpecError("both subsets need at least one point")
    rng = np.random.default_rng(seed)
    x0, y0, x1, y1 = box
    pa = rng.uniform((x0, y0), (x1, y1), size=(n_a, 2))
    pb = rng.uniform((x0, y0), (x1, y1), size=(n_b, 2)) + np.asarray(b_offset)
    coords = np.vstack([pa, pb])
    n = n_a + n_b
    a_idx = tuple(range(n_a))
    b_idx = tuple(range(n_a, n))
    if map_rule == "nearest":
        table = {}
        table.update(_nearest_in(coords, a_idx, b_idx))
        table.update(_nearest_in(coords, b_idx, a_idx))
    elif map_rule.startswith("affine:"):
        factor = float(map_rule.split(":", 1)[1])
        ca = coords[list(a_idx)].mean(axis=0)
        cb = coords[list(b_idx)].mean(axis=0)
        table = {}
        for src, c_src, c_dst, dst in ((a_idx, ca, cb, b_idx), (b_idx, cb, ca, a_idx)):
            targets = coords[list(dst)]
            for i in src:
                goal = c_dst + factor * (coords[i] - c_src)
                table[i] = dst[int(np.argmin(np.linalg.norm(targets - goal, axis=1)))]
    else:
        raise SpecError(f"unknown map rule {map_rule!r}")
    graph = _graph_from_rule(graph_rule, n, rng)
    fmap = CyclicMap(f"rule-{map_rule}", table=tuple(table[i] for i in range(n)))
    sets = SubsetPair(a_idx, b_idx)
    return Instance(f"random-{seed}", _tabulated_from_coords(coords), sets, graph,
                    cyclic_map=fmap,
                    params=(("seed", seed), ("map_rule", map_rule),
                            ("graph_rule", graph_rule)))


def contraction_instance(seed: int, rays: int = 5, depth: int = 4,
                         factor: float = 0.4) -> Instance:
    """Seeded tabulated instance carrying an exact uniform contraction.

    Points sit on concentric rings around a random hub at radii r*factor^j;
    the map pushes each ring inward one level and collapses the deepest
    ring onto the hub.  With equal ring radii and factor < 1/2 every edge
    of the complete graph contracts (worst ratio factor / (1 - factor)).
    A and B both equal the whole cloud, so d(A, B) = 0.
    """
    if not (0.0 < factor < 0.5):
        raise SpecError("factor must lie in (0, 1/2) for ring-wise contraction")
    if rays < 2 or depth < 1:
        raise SpecError("need at least two rays and one level")
    rng = np.random.default_rng(seed)
    hub = rng.uniform(0.0, 10.0, size=2)
    r = float(rng.uniform(0.5, 1.5))
    angles = rng.uniform(0.0, 2.0 * math.pi, size=rays)
    dirs = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    pts = [hub]
    for level in range(depth + 1):
        ring = hub + (r * factor ** level) * dirs
        pts.extend(ring)
    coords = np.asarray(pts)
    n = coords.shape[0]

    def idx(level, ray):
        return 1 + level * rays + ray

    table = [0] * n
    for level in range(depth + 1):
        for ray in range(rays):
            table[idx(level, ray)] = idx(level + 1, ray) if level < depth else 0
    everything = tuple(range(n))
    sets = SubsetPair(everything, everything)
    fmap = CyclicMap("ring-contraction", table=tuple(table))
    return Instance(f"contraction-{seed}", _tabulated_from_coords(coords), sets,
                    complete_graph(), cyclic_map=fmap,
                    params=(("seed", seed), ("rays", rays), ("depth", depth),
                            ("factor", factor)))


def reflection_instance(seed: int, n: int = 20, gap: float = 1.0) -> Instance:
    """Seeded tabulated instance whose map is an exact point reflection.

    B is the mirror image of A through a center beyond the gap; the map
    swaps mirror partners, so every edge is mapped isometrically and the
    map is edge-nonexpansive with d(A, B) > 0.
    """
    if n < 1 or gap < 0:
        raise SpecError("need n >= 1 and a nonnegative gap")
    rng = np.random.default_rng(seed)
    pa = rng.uniform((0.0, 0.0), (1.0, 1.0), size=(n, 2))
    center = np.asarray([1.0 + gap / 2.0, 0.5])
    pb = 2.0 * center - pa
    coords = np.vstack([pa, pb])
    table = tuple(list(range(n, 2 * n)) + list(range(n)))
    sets = SubsetPair(tuple(range(n)), tuple(range(n, 2 * n)))
    fmap = CyclicMap("point-reflection", table=table)
    return Instance(f"reflection-{seed}", _tabulated_from_coords(coords), sets,
                    complete_graph(), cyclic_map=fmap,
                    params=(("seed", seed), ("n", n), ("gap", gap)))


def identity_pair_instance(seed: int, n: int = 20) -> Instance:
    """Seeded two-map instance with A = B and T = S = identity.

    The only maps satisfying d(x, Tx) + d(Sy, y) <= k d(x, y) with k < 1
    at coincident arguments fix those points, so identity pairs on a
    shared cloud are the canonical family for that hypothesis.
    """
    if n < 2:
        raise SpecError("need at least two points")
    rng = np.random.default_rng(seed)
    coords = rng.uniform((0.0, 0.0), (1.0, 1.0), size=(n, 2))
    everything = tuple(range(n))
    ident = CyclicMap("identity", table=everything)
    sets = SubsetPair(everything, everything)
    return Instance(f"identity-pair-{seed}", _tabulated_from_coords(coords), sets,
                    complete_graph(), map_pair=MapPair(ident, ident),
                    params=(("seed", seed), ("n", n)))


_BUILDERS = {
    "interval": interval_example,
    "ellipse": ellipse_example,
    "segments": segments_example,
    "affine-segments": affine_segments_pair,
}

_FORMAT_HEADER = "gproximity-instance v1"


def _fmt(value) -> str:
    return repr(value) if isinstance(value, float) else str(value)


def dumps(inst: Instance) -> str:
    """Serialize an instance to the structured text format."""
    lines = [_FORMAT_HEADER, f"name: {inst.name}"]
    if isinstance(inst.space, CoordinateSpace):
        params = dict(inst.params)
        builder = params.pop("builder", None)
        if builder not in _BUILDERS:
            raise SpecError(f"coordinate instance {inst.name!r} has no registered builder")
        lines.append("kind: coordinate")
        lines.append(f"builder: {builder}")
        for key, value in params.items():
            lines.append(f"arg: {key}={_fmt(value)}")
        return "\n".join(lines) + "\n"
    n = inst.space.n
    lines.append("kind: tabulated")
    lines.append(f"n: {n}")
    lines.append("A: " + " ".join(str(i) for i in inst.sets.a))
    lines.append("B: " + " ".join(str(i) for i in inst.sets.b))
    g = inst.graph
    if g.rule in (COMPLETE, DIAGONAL):
        lines.append(f"graph: {g.rule}")
    elif g.rule == EXPLICIT:
        edges = sorted(g.edges)
        lines.append(f"graph: edges {len(edges)}")
        for x, y in edges:
            lines.append(f"edge: {x} {y}")
    else:
        if not g.predicate_name or g.predicate_name not in GRAPH_PREDICATES:
            raise SpecError("custom graphs serialize only by registered rule name")
        lines.append(f"graph: custom {g.predicate_name}")
    if inst.map_pair is not None:
        lines.append("map: pair")
        lines.append("table-t: " + " ".join(str(i) for i in inst.map_pair.t.table))
        lines.append("table-s: " + " ".join(str(i) for i in inst.map_pair.s.table))
    elif inst.cyclic_map is not None:
        lines.append("map: table")
        lines.append("table: " + " ".join(str(i) for i in inst.cyclic_map.table))
    else:
        lines.append("map: none")
    lines.append("dist:")
    for i in range(1, n):
        row = " ".join(repr(float(inst.space.dist[i, j])) for j in range(i))
        lines.append(f"row: {row}")
    return "\n".join(lines) + "\n"


class _Reader:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    def next(self, expect_key: str = None) -> str:
        while self.pos < len(self.lines) and not self.lines[self.pos].strip():
            self.pos += 1
        if self.pos >= len(self.lines):
            raise ParseError("unexpected end of file", line=self.pos + 1)
        line = self.lines[self.pos].strip()
        self.pos += 1
        if expect_key is not None:
            prefix = expect_key + ":"
            if not line.startswith(prefix):
                raise ParseError(f"expected {prefix!r}, got {line!r}", line=self.pos)
            return line[len(prefix):].strip()
        return line

    def error(self, message: str):
        raise ParseError(message, line=self.pos)


def _parse_value(text: str):
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def loads(text: str) -> Instance:
    """Parse the structured text format back into an instance."""
    r = _Reader(text)
    if r.next() != _FORMAT_HEADER:
        raise ParseError(f"missing header {_FORMAT_HEADER!r}", line=1)
    name = r.next("name")
    kind = r.next("kind")
    if kind == "coordinate":
        builder = r.next("builder")
        if builder not in _BUILDERS:
            r.error(f"unknown builder {builder!r}")
        kwargs = {}
        while True:
            while r.pos < len(r.lines) and not r.lines[r.pos].strip():
                r.pos += 1
            if r.pos >= len(r.lines):
                break
            line = r.next()
            if not line.startswith("arg:"):
                r.error(f"unexpected line {line!r}")
            body = line[len("arg:"):].strip()
            if "=" not in body:
                r.error(f"malformed arg {body!r}")
            key, value = body.split("=", 1)
            kwargs[key.strip()] = _parse_value(value.strip())
        return _BUILDERS[builder](**kwargs)
    if kind != "tabulated":
        r.error(f"unknown kind {kind!r}")

    def ints(text, what):
        try:
            return tuple(int(tok) for tok in text.split())
        except ValueError:
            r.error(f"malformed {what} list {text!r}")

    try:
        n = int(r.next("n"))
    except ValueError:
        r.error("malformed point count")
    a = ints(r.next("A"), "A")
    b = ints(r.next("B"), "B")
    gspec = r.next("graph")
    if gspec in (COMPLETE, DIAGONAL):
        graph = complete_graph() if gspec == COMPLETE else diagonal_graph()
    elif gspec.startswith("edges"):
        try:
            count = int(gspec.split()[1])
        except (IndexError, ValueError):
            r.error(f"malformed edge count in {gspec!r}")
        edges = set()
        for _ in range(count):
            body = r.next("edge")
            pair = ints(body, "edge")
            if len(pair) != 2:
                r.error(f"malformed edge {body!r}")
            edges.add(pair)
        graph = explicit_graph(edges)
    elif gspec.startswith("custom"):
        try:
            rule_name = gspec.split()[1]
        except IndexError:
            r.error("custom graph needs a rule name")
        if rule_name not in GRAPH_PREDICATES:
            r.error(f"unknown custom graph rule {rule_name!r}")
        graph = DirectedGraph(CUSTOM, predicate=GRAPH_PREDICATES[rule_name],
                              predicate_name=rule_name)
    else:
        r.error(f"unknown graph spec {gspec!r}")
    mspec = r.next("map")
    fmap = None
    pair = None
    if mspec == "table":
        fmap = CyclicMap("table", table=ints(r.next("table"), "table"))
    elif mspec == "pair":
        t = CyclicMap("table-t", table=ints(r.next("table-t"), "table-t"))
        s = CyclicMap("table-s", table=ints(r.next("table-s"), "table-s"))
        pair = MapPair(t, s)
    elif mspec != "none":
        r.error(f"unknown map spec {mspec!r}")
    if r.next() != "dist:":
        r.error("expected 'dist:' section")
    dist = np.zeros((n, n))
    for i in range(1, n):
        row = r.next("row").split()
        if len(row) != i:
            r.error(f"row {i} must carry {i} entries, got {len(row)}")
        try:
            values = [float(tok) for tok in row]
        except ValueError:
            r.error(f"malformed distance in row {i}")
        dist[i, :i] = values
        dist[:i, i] = values
    for fm in ([fmap] if fmap else []) + ([pair.t, pair.s] if pair else []):
        if len(fm.table) != n or any(not (0 <= v < n) for v in fm.table):
            r.error("map table does not match the point count")
    return Instance(name, TabulatedSpace(dist), SubsetPair(a, b), graph,
                    cyclic_map=fmap, map_pair=pair)


def save_instance(inst: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(inst))


def load_instance(path) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())
