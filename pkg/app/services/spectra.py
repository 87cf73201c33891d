"""
Element-order spectra and prime graphs
pi(G), pi_e(G), mu, the prime graph, its components and t(G)
"""

import logging
from collections import defaultdict
from itertools import combinations
from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, model_validator
from sympy import divisors, primefactors

from app.config import settings
from app.services.errors import DomainError, InputError
from app.services.groups import Group

logger = logging.getLogger(__name__)


# =============================================================================
# Models
# =============================================================================

class Spectrum(BaseModel):
    """Set of element orders of a group, ascending"""

    model_config = ConfigDict(frozen=True)

    orders: Tuple[int, ...]
    source_order: int

    @model_validator(mode="after")
    def _divisor_closed(self) -> "Spectrum":
        if list(self.orders) != sorted(set(self.orders)):
            raise DomainError(f"spectrum must be strictly ascending: {self.orders}")
        if settings.check_invariants:
            if 1 not in self.orders:
                raise DomainError("spectrum must contain 1")
            members = set(self.orders)
            for n in self.orders:
                missing = [d for d in divisors(n) if d not in members]
                if missing:
                    raise DomainError(f"spectrum not divisor-closed: {n} present, {missing} absent")
        return self

    def __contains__(self, n: int) -> bool:
        return n in self.orders


class MuSet(BaseModel):
    """Divisibility-maximal members of a spectrum"""

    model_config = ConfigDict(frozen=True)

    maxima: Tuple[int, ...]

    @model_validator(mode="after")
    def _antichain(self) -> "MuSet":
        if settings.check_invariants:
            for a, b in combinations(self.maxima, 2):
                if b % a == 0 or a % b == 0:
                    raise DomainError(f"mu is not an antichain: {a} and {b}")
        return self


class PrimeGraph(BaseModel):
    """Vertices are primes; edges are ascending prime pairs"""

    model_config = ConfigDict(frozen=True)

    vertices: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]

    @model_validator(mode="after")
    def _well_formed(self) -> "PrimeGraph":
        vertex_set = set(self.vertices)
        for p, q in self.edges:
            if p == q:
                raise DomainError(f"self-loop at {p}")
            if p not in vertex_set or q not in vertex_set:
                raise DomainError(f"edge ({p}, {q}) has an endpoint outside {self.vertices}")
        return self

    def adjacent(self, p: int, q: int) -> bool:
        return (min(p, q), max(p, q)) in self.edges


# =============================================================================
# Operations
# =============================================================================

def prime_divisors(n: int) -> Tuple[int, ...]:
    if n < 1:
        raise InputError(f"prime divisors need n >= 1, got {n}")
    return tuple(primefactors(n))


def spectrum(group: Group) -> Spectrum:
    orders = sorted(set(group.order_map().values()))
    logger.info(f"[Spectra] {group.descriptor}: element orders {orders}")
    return Spectrum(orders=tuple(orders), source_order=group.order)


def mu(s: Spectrum) -> MuSet:
    maxima = tuple(
        n for n in s.orders
        if not any(m != n and m % n == 0 for m in s.orders)
    )
    result = MuSet(maxima=maxima)
    if settings.check_invariants:
        for n in s.orders:
            if not any(m % n == 0 for m in maxima):
                raise DomainError(f"mu {maxima} does not cover {n}")
    return result


def prime_graph(s: Spectrum) -> PrimeGraph:
    vertices = sorted({p for n in s.orders for p in primefactors(n)})
    edges = tuple(
        (p, q) for p, q in combinations(vertices, 2)
        if p * q in s.orders
    )
    return PrimeGraph(vertices=tuple(vertices), edges=edges)


def prime_graph_of(group: Group) -> PrimeGraph:
    return prime_graph(spectrum(group))


class _DisjointSets:
    """Union-find with path compression and union by rank"""

    def __init__(self, items):
        self._parent = {x: x for x in items}
        self._rank = {x: 0 for x in items}

    def find(self, x):
        root = x
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[x] != root:
            self._parent[x], x = root, self._parent[x]
        return root

    def union(self, x, y) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self._rank[rx] < self._rank[ry]:
            rx, ry = ry, rx
        self._parent[ry] = rx
        if self._rank[rx] == self._rank[ry]:
            self._rank[rx] += 1


def components(graph: PrimeGraph) -> Tuple[Tuple[int, ...], ...]:
    """Connected components, each ascending, ordered by least member"""
    sets = _DisjointSets(graph.vertices)
    for p, q in graph.edges:
        sets.union(p, q)
    groups: Dict[int, List[int]] = defaultdict(list)
    for v in graph.vertices:
        groups[sets.find(v)].append(v)
    return tuple(sorted((tuple(sorted(part)) for part in groups.values()), key=lambda part: part[0]))


def t(group: Group) -> int:
    """Number of connected components of the prime graph"""
    return len(components(prime_graph_of(group)))


def graphs_equal(a: PrimeGraph, b: PrimeGraph) -> bool:
    """Labeled equality: same vertex set and same edge set"""
    return set(a.vertices) == set(b.vertices) and set(a.edges) == set(b.edges)


def edge_difference(a: PrimeGraph, b: PrimeGraph) -> List[Tuple[int, int]]:
    """Symmetric difference of the edge sets, ascending"""
    return sorted(set(a.edges) ^ set(b.edges))
