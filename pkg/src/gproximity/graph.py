"""Directed graphs over the point set, with the diagonal convention.

A graph is either a named rule (complete, diagonal, custom predicate) or an
explicit set of ordered point pairs.  Every query treats (x, x) as an edge;
`validate_graph` still flags explicit edge sets that omit diagonal pairs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .errors import DomainError
from .metric import ValidationReport, Violation

COMPLETE = "complete"
DIAGONAL = "diagonal"
EXPLICIT = "explicit"
CUSTOM = "custom"


@dataclass(frozen=True)
class DirectedGraph:
    rule: str
    edges: Optional[frozenset] = None
    predicate: Optional[Callable] = None
    predicate_name: str = ""

    def __post_init__(self):
        if self.rule not in (COMPLETE, DIAGONAL, EXPLICIT, CUSTOM):
            raise DomainError(f"unknown graph rule {self.rule!r}")
        if self.rule == EXPLICIT:
            if self.edges is None:
                raise DomainError("explicit graph needs an edge set")
            object.__setattr__(self, "edges", frozenset(self.edges))
        if self.rule == CUSTOM and self.predicate is None:
            raise DomainError("custom graph needs a predicate")


def complete_graph() -> DirectedGraph:
    return DirectedGraph(COMPLETE)


def diagonal_graph() -> DirectedGraph:
    return DirectedGraph(DIAGONAL)


def explicit_graph(edges) -> DirectedGraph:
    return DirectedGraph(EXPLICIT, edges=frozenset(edges))


def custom_graph(name: str, predicate: Callable) -> DirectedGraph:
    return DirectedGraph(CUSTOM, predicate=predicate, predicate_name=name)


def contains_edge(g: DirectedGraph, x, y, points=None) -> bool:
    """True iff (x, y) is an edge; (x, x) is always an edge."""
    if points is not None:
        pts = set(points)
        if x not in pts or y not in pts:
            raise DomainError(f"point outside the instance: {x!r} or {y!r}")
    if x == y:
        return True
    if g.rule == COMPLETE:
        return True
    if g.rule == DIAGONAL:
        return False
    if g.rule == EXPLICIT:
        return (x, y) in g.edges
    return bool(g.predicate(x, y))


def validate_graph(g: DirectedGraph, points) -> ValidationReport:
    """Flag missing diagonal edges and edge endpoints outside the point set."""
    pts = tuple(points)
    out = []
    if g.rule == EXPLICIT:
        pset = set(pts)
        for p in pts:
            if (p, p) not in g.edges:
                out.append(Violation("diagonal", (p,), f"diagonal incomplete at {p!r}"))
        for x, y in sorted(g.edges, key=_edge_key):
            if x not in pset or y not in pset:
                out.append(Violation("endpoint", (x, y), "foreign endpoint"))
    elif g.rule == CUSTOM:
        # contains_edge forces the diagonal anyway; still surface predicates
        # that contradict the convention
        for p in pts:
            if not g.predicate(p, p):
                out.append(Violation("diagonal", (p,),
                                     f"predicate {g.predicate_name!r} rejects ({p!r},{p!r})"))
    return ValidationReport(tuple(out))


def _edge_key(edge):
    x, y = edge
    return (_point_key(x), _point_key(y))


def _point_key(p):
    if isinstance(p, tuple):
        return (1, p)
    return (0, (p,))


def iter_edges(g: DirectedGraph, points):
    """All edges among the given points, in lexicographic scan order."""
    pts = tuple(points)
    if g.rule == COMPLETE:
        for x in pts:
            for y in pts:
                yield (x, y)
    elif g.rule == DIAGONAL:
        for x in pts:
            yield (x, x)
    elif g.rule == EXPLICIT:
        pset = set(pts)
        order = {p: i for i, p in enumerate(pts)}
        for x, y in sorted(g.edges, key=lambda e: (order.get(e[0], -1), order.get(e[1], -1))):
            if x in pset and y in pset:
                yield (x, y)
    else:
        for x in pts:
            for y in pts:
                if contains_edge(g, x, y):
                    yield (x, y)


def preserves_edges(g: DirectedGraph, f, points):
    """Check (x, y) in E(G) implies (f x, f y) in E(G).

    Returns (ok, first_counterexample) with the first violating edge in
    deterministic scan order.  Complete and diagonal graphs preserve
    trivially (images of diagonal edges are diagonal).
    """
    if g.rule in (COMPLETE, DIAGONAL):
        return True, None
    for x, y in iter_edges(g, points):
        if not contains_edge(g, f(x), f(y)):
            return False, (x, y)
    return True, None
