"""Cyclic maps, map pairs, operator constants, and the instance aggregate."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

from .errors import DomainError, OrbitError
from .graph import DirectedGraph
from .metric import SubsetPair


@dataclass(frozen=True)
class CyclicMap:
    """A total map on A union B.

    Tabulated instances use an index table; coordinate instances use a
    closed-form rule on coordinate tuples, named for serialization.
    """

    name: str
    table: Optional[tuple] = None
    fn: Optional[Callable] = None
    params: tuple = ()

    def __post_init__(self):
        if (self.table is None) == (self.fn is None):
            raise DomainError("a map needs exactly one of table / fn")
        if self.table is not None:
            object.__setattr__(self, "table", tuple(int(i) for i in self.table))

    def __call__(self, x):
        if self.table is not None:
            try:
                return self.table[x]
            except (IndexError, TypeError) as exc:
                raise DomainError(f"map {self.name!r} is not defined at {x!r}") from exc
        return self.fn(x)


@dataclass(frozen=True)
class MapPair:
    """Two maps with T(A) in B and S(B) in A."""

    t: CyclicMap
    s: CyclicMap


@dataclass(frozen=True)
class CrrParams:
    """Constants of the Ciric-Reich-Rus style condition.

    Requires alpha, beta, gamma >= 0 and alpha + 2*beta + gamma < 1
    (strict), which forces the derived rate k into [0, 1).
    """

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if min(self.alpha, self.beta, self.gamma) < 0:
            raise DomainError("CRR constants must be nonnegative")
        if self.alpha + 2 * self.beta + self.gamma >= 1:
            raise DomainError("CRR constants must satisfy alpha + 2*beta + gamma < 1")

    @property
    def k(self) -> float:
        return (self.alpha + self.beta) / (1.0 - self.beta)


@dataclass(frozen=True)
class Instance:
    """A metric space, subsets A/B, a graph, and the map(s) under study."""

    name: str
    space: object
    sets: SubsetPair
    graph: DirectedGraph
    cyclic_map: Optional[CyclicMap] = None
    map_pair: Optional[MapPair] = None
    grid_step: Optional[float] = None
    params: tuple = ()

    @property
    def points(self) -> tuple:
        return self.sets.points

    @property
    def kind(self) -> str:
        return "two-map" if self.map_pair is not None else "single-map"

    def require_map(self) -> CyclicMap:
        if self.cyclic_map is None:
            raise DomainError(f"instance {self.name!r} has no single cyclic map")
        return self.cyclic_map

    def require_pair(self) -> MapPair:
        if self.map_pair is None:
            raise DomainError(f"instance {self.name!r} has no map pair")
        return self.map_pair

    @cached_property
    def d_ab(self) -> float:
        from .metric import pair_distance

        return pair_distance(self.space, self.sets)


def apply_map(f: CyclicMap, x, last_valid: int = -1):
    """Apply a map, converting domain failures into orbit errors."""
    try:
        return f(x)
    except (DomainError, ValueError, ArithmeticError) as exc:
        raise OrbitError(f"map {f.name!r} failed at {x!r}: {exc}", last_valid) from exc
