"""Metric spaces with two distinguished subsets, and the basic set distances.

Two space kinds are supported: tabulated (an explicit distance matrix,
points are integer indices) and coordinate (points are tuples of floats
with the Euclidean metric).  Coordinate subsets carry a finite sample grid
plus an optional region membership test.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, StructuralError

#: Default absolute comparison slack.  All paper quantities are O(1), so
#: double-precision round-off sits far below this.
DEFAULT_TOL = 1e-9

Point = "int | tuple[float, ...]"


@dataclass(frozen=True)
class Violation:
    axiom: str
    where: tuple
    detail: str

    def __str__(self):
        return f"{self.axiom} at {self.where}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def merged(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(self.violations + other.violations)


@dataclass(frozen=True)
class TabulatedSpace:
    """Finite metric space given by an explicit n x n distance matrix."""

    dist: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.dist, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise StructuralError(f"distance matrix must be square, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise StructuralError("distance matrix has non-finite entries")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "dist", m)

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def distance(self, x: int, y: int) -> float:
        return float(self.dist[x, y])


@dataclass(frozen=True)
class CoordinateSpace:
    """R^d with the Euclidean metric; points are tuples of floats."""

    dimension: int

    def distance(self, x, y) -> float:
        return math.dist(x, y)


MetricSpace = "TabulatedSpace | CoordinateSpace"


@dataclass(frozen=True)
class SubsetPair:
    """The two distinguished subsets A and B.

    ``a`` and ``b`` hold the stored sample points (indices or coordinate
    tuples).  For coordinate instances ``a_contains``/``b_contains`` give
    the exact region membership tests used by cyclicity checks; tabulated
    instances fall back to sample membership.
    """

    a: tuple
    b: tuple
    a_contains: Optional[Callable] = None
    b_contains: Optional[Callable] = None

    def __post_init__(self):
        if not self.a or not self.b:
            raise DomainError("subsets A and B must be nonempty")
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))

    @cached_property
    def _a_set(self):
        return frozenset(self.a)

    @cached_property
    def _b_set(self):
        return frozenset(self.b)

    def in_a(self, x) -> bool:
        if self.a_contains is not None:
            return bool(self.a_contains(x))
        return x in self._a_set

    def in_b(self, x) -> bool:
        if self.b_contains is not None:
            return bool(self.b_contains(x))
        return x in self._b_set

    @cached_property
    def points(self) -> tuple:
        """A followed by the B samples not already in A, in stored order."""
        seen = set(self.a)
        extra = []
        for p in self.b:
            if p not in seen:
                seen.add(p)
                extra.append(p)
        return self.a + tuple(extra)


def validate_metric(space, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check the metric axioms; coordinate spaces hold by construction."""
    if tol < 0:
        raise DomainError("tolerance must be nonnegative")
    if isinstance(space, CoordinateSpace):
        return ValidationReport()
    d = space.dist
    n = space.n
    out = []
    bad_diag = np.flatnonzero(np.abs(np.diag(d)) > tol)
    for i in bad_diag:
        out.append(Violation("identity", (int(i),), f"d({i},{i}) = {d[i, i]!r} != 0"))
    asym = np.argwhere(np.triu(np.abs(d - d.T), k=1) > tol)
    for i, j in asym:
        out.append(Violation("symmetry", (int(i), int(j)),
                             f"d({i},{j}) = {d[i, j]!r} but d({j},{i}) = {d[j, i]!r}"))
    neg = np.argwhere(d < -tol)
    for i, j in neg:
        out.append(Violation("nonnegativity", (int(i), int(j)), f"d({i},{j}) = {d[i, j]!r} < 0"))
    # d[i,j] <= d[i,k] + d[k,j] + tol for every triple
    excess = d[:, None, :] - (d[:, :, None] + d[None, :, :])  # [i, k, j]
    tri = np.argwhere(excess > tol)
    for i, k, j in tri:
        out.append(Violation("triangle", (int(i), int(k), int(j)),
                             f"d({i},{j}) = {d[i, j]!r} > d({i},{k}) + d({k},{j}) = {d[i, k] + d[k, j]!r}"))
    return ValidationReport(tuple(out))


def validate_sets(space, sets: SubsetPair) -> ValidationReport:
    """Structural checks on A and B against the space."""
    out = []
    if isinstance(space, TabulatedSpace):
        n = space.n
        for label, pts in (("A", sets.a), ("B", sets.b)):
            for p in pts:
                if not isinstance(p, (int, np.integer)) or not (0 <= p < n):
                    out.append(Violation("subset", (label, p), f"index {p!r} outside 0..{n - 1}"))
        covered = set(sets.a) | set(sets.b)
        missing = sorted(set(range(n)) - covered)
        if missing:
            out.append(Violation("coverage", tuple(missing),
                                 "A union B must cover every tabulated point"))
    else:
        dim = space.dimension
        for label, pts in (("A", sets.a), ("B", sets.b)):
            for p in pts:
                if len(p) != dim:
                    out.append(Violation("subset", (label, p), f"dimension {len(p)} != {dim}"))
    return ValidationReport(tuple(out))


def distance(space, x, y) -> float:
    return space.distance(x, y)


def pair_distance(space, sets: SubsetPair) -> float:
    """min over a in A, b in B of d(a, b), evaluated on the stored samples."""
    from ._scan import cross_dists, point_array

    pa = point_array(space, sets.a)
    pb = point_array(space, sets.b)
    return float(cross_dists(space, pa, pb).min())


def set_diameter(space, points) -> float:
    """max over x, y in S of d(x, y); a singleton has diameter 0."""
    from ._scan import cross_dists, point_array

    pts = tuple(points)
    if not pts:
        raise DomainError("diameter of the empty set is undefined")
    if len(pts) == 1:
        return 0.0
    arr = point_array(space, pts)
    return float(cross_dists(space, arr, arr).max())
