"""Brute-force enumeration of approximate proximity sets and diameter bounds."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._scan import cross_dists, elem_dists, point_array
from .errors import CapabilityError, DomainError
from .graph import COMPLETE, contains_edge
from .maps import CyclicMap, Instance, MapPair
from .metric import DEFAULT_TOL, set_diameter
from .operators import is_edge_nonexpansive

STRICT = "strict"
VACUOUS = "vacuous"


@dataclass(frozen=True)
class ProximitySet:
    epsilon: float
    members: tuple
    mode: str


@dataclass(frozen=True)
class PairProximitySet:
    epsilon: float
    members: tuple  # ordered (x, y) pairs from A x B


@dataclass(frozen=True)
class MinimizerReport:
    minimizer: object
    residual: float
    nonexpansive: bool
    minimizer_in_set: bool


def _sample_points(inst: Instance):
    pts = inst.points
    if not pts:
        raise CapabilityError("instance has no stored sample points to enumerate")
    return pts


def _edge_flags(inst: Instance, pts, images):
    if inst.graph.rule == COMPLETE:
        return [True] * len(pts)
    return [contains_edge(inst.graph, p, fp) for p, fp in zip(pts, images)]


def enumerate_proximity_set(inst: Instance, epsilon: float, mode: str = STRICT,
                            f: CyclicMap = None, tol: float = DEFAULT_TOL) -> ProximitySet:
    """Exact scan of the stored points against the membership definition.

    Strict mode takes the conjunction (edge holds and the displacement is
    within epsilon of d(A,B)); vacuous mode keeps the literal implication
    and additionally admits points whose edge condition fails.  epsilon = 0
    is allowed here (the exact best proximity set).
    """
    if mode not in (STRICT, VACUOUS):
        raise DomainError(f"unknown mode {mode!r}")
    if epsilon < 0:
        raise DomainError("epsilon must be nonnegative")
    f = f or inst.require_map()
    pts = _sample_points(inst)
    images = [f(p) for p in pts]
    space = inst.space
    d_self = elem_dists(space, point_array(space, pts), point_array(space, images))
    dab = inst.d_ab
    close = d_self <= dab + epsilon + tol
    edges = _edge_flags(inst, pts, images)
    members = []
    for p, on_edge, ok in zip(pts, edges, close):
        if (on_edge and ok) or (mode == VACUOUS and not on_edge):
            members.append(p)
    return ProximitySet(epsilon, tuple(members), mode)


def enumerate_pair_set(inst: Instance, epsilon: float, pair: MapPair = None,
                       tol: float = DEFAULT_TOL) -> PairProximitySet:
    """Scan E(G) restricted to A x B for pairs with d(Tx, Sy) <= d(A,B) + epsilon."""
    if epsilon < 0:
        raise DomainError("epsilon must be nonnegative")
    pair = pair or inst.require_pair()
    _sample_points(inst)
    a = inst.sets.a
    b = inst.sets.b
    space = inst.space
    ta = point_array(space, [pair.t(p) for p in a])
    sb = point_array(space, [pair.s(p) for p in b])
    dmat = cross_dists(space, ta, sb)
    dab = inst.d_ab
    close = dmat <= dab + epsilon + tol
    complete = inst.graph.rule == COMPLETE
    members = []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if not close[i, j]:
                continue
            if complete or contains_edge(inst.graph, x, y):
                members.append((x, y))
    return PairProximitySet(epsilon, tuple(members))


def proximity_diameter(inst: Instance, ps: ProximitySet) -> float:
    """Max pairwise distance among set members."""
    if not ps.members:
        raise DomainError("diameter of an empty proximity set is undefined")
    return set_diameter(inst.space, ps.members)


def pair_diameter(inst: Instance, pps: PairProximitySet) -> float:
    """Max within-pair distance d(x, y) over the member pairs (x, y)."""
    if not pps.members:
        raise DomainError("diameter of an empty pair set is undefined")
    space = inst.space
    xs = point_array(space, [m[0] for m in pps.members])
    ys = point_array(space, [m[1] for m in pps.members])
    return float(elem_dists(space, xs, ys).max())


def contraction_diam_bound(alpha: float, epsilon: float, d_ab: float) -> float:
    """2 eps / (1 - alpha) + 2 d(A,B) / (1 - alpha)."""
    if not (0.0 <= alpha < 1.0):
        raise DomainError("alpha must lie in [0, 1)")
    return (2.0 * epsilon + 2.0 * d_ab) / (1.0 - alpha)


def two_map_diam_bound(k: float, epsilon: float, d_ab: float) -> float:
    """eps / (1 - k) + d(A,B) / (1 - k)."""
    if not (0.0 <= k < 1.0):
        raise DomainError("k must lie in [0, 1)")
    return (epsilon + d_ab) / (1.0 - k)


def minimizer_report(inst: Instance, f: CyclicMap = None,
                     tol: float = DEFAULT_TOL) -> MinimizerReport:
    """Exact minimizer of d(z, f z) over points with (z, f z) an edge.

    Ties break toward the lowest scan position.  When the map is
    nonexpansive on edges, the strict set at epsilon = residual + tol must
    contain the minimizer; the report carries that re-check.
    """
    f = f or inst.require_map()
    pts = _sample_points(inst)
    images = [f(p) for p in pts]
    space = inst.space
    d_self = elem_dists(space, point_array(space, pts), point_array(space, images))
    edges = _edge_flags(inst, pts, images)
    best = None
    best_pos = None
    for pos, (on_edge, d) in enumerate(zip(edges, d_self)):
        if on_edge and (best is None or d < best):
            best = float(d)
            best_pos = pos
    if best_pos is None:
        raise DomainError("no point satisfies the edge eligibility condition")
    residual = best - inst.d_ab
    nonexp = bool(is_edge_nonexpansive(inst, f, tol=tol))
    members = enumerate_proximity_set(inst, max(residual, 0.0) + tol, f=f, tol=tol).members
    return MinimizerReport(pts[best_pos], residual, nonexp, pts[best_pos] in members)
