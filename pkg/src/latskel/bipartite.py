"""Directed bipartite graphs and their domination functions.

Subsets of upper vertices are frozensets.  The extra query "all lower
vertices" is the ``INFINITY`` marker, deliberately not a subset: with
isolated lower vertices ``d(INFINITY) = |X|`` differs from ``d(U)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Hashable, Iterable, Mapping


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


@dataclass(frozen=True)
class BipartiteGraph:
    U: tuple
    X: tuple
    E: frozenset

    def __post_init__(self):
        if not self.U or not self.X:
            raise ValueError("both vertex classes must be nonempty")
        us, xs = set(self.U), set(self.X)
        if len(us) != len(self.U) or len(xs) != len(self.X):
            raise ValueError("duplicate vertex labels")
        for u, x in self.E:
            if u not in us or x not in xs:
                raise ValueError(f"edge ({u!r}, {x!r}) leaves the vertex sets")

    @classmethod
    def of(cls, U: Iterable, X: Iterable, E: Iterable) -> BipartiteGraph:
        return cls(tuple(U), tuple(X), frozenset(E))

    def neighbourhood(self, x: Hashable) -> frozenset:
        """Upper vertices adjacent to lower vertex ``x``."""
        return frozenset(u for u in self.U if (u, x) in self.E)

    def subsets(self) -> list[frozenset]:
        return [frozenset(c) for k in range(len(self.U) + 1) for c in combinations(self.U, k)]


def domination(G: BipartiteGraph, q) -> int:
    if q is INFINITY:
        return len(G.X)
    return sum(1 for x in G.X if any((v, x) in G.E for v in q))


def strong_domination(G: BipartiteGraph, V) -> int:
    return sum(1 for x in G.X if all((v, x) in G.E for v in V))


def exact_domination(G: BipartiteGraph, V) -> int:
    V = frozenset(V)
    return sum(1 for x in G.X if G.neighbourhood(x) == V)


def strong_from_domination(d: Callable | Mapping, U: Iterable) -> dict[frozenset, int]:
    """Recover the strong domination table from the domination function.

    Induction on ``|V|``: the empty set gets ``d(INFINITY)``, singletons
    agree with ``d``, and larger sets are solved out of the sieve formula
    for ``d(V)`` using the values of their proper subsets.
    """
    get = d.__getitem__ if isinstance(d, Mapping) else d
    U = tuple(U)
    sigma: dict[frozenset, int] = {frozenset(): get(INFINITY)}
    for k in range(1, len(U) + 1):
        for combo in combinations(U, k):
            V = frozenset(combo)
            if k == 1:
                sigma[V] = get(V)
                continue
            rest = 0
            for i in range(1, k):
                sign = 1 if i % 2 else -1
                for sub in combinations(combo, i):
                    rest += sign * sigma[frozenset(sub)]
            # d(V) = rest + (-1)^(k-1) sigma(V)
            sigma[V] = (get(V) - rest) * (1 if k % 2 else -1)
    return sigma


def exact_from_strong(sigma: Mapping[frozenset, int], U: Iterable) -> dict[frozenset, int]:
    U = frozenset(U)
    eps = {}
    for V in sigma:
        outside = sorted(U - V, key=repr)
        total = 0
        for i in range(len(outside) + 1):
            sign = -1 if i % 2 else 1
            for extra in combinations(outside, i):
                total += sign * sigma[V | frozenset(extra)]
        eps[V] = total
    return eps


def domination_table(G: BipartiteGraph) -> dict:
    table = {V: domination(G, V) for V in G.subsets()}
    table[INFINITY] = len(G.X)
    return table


def preserves_domination(G: BipartiteGraph, G2: BipartiteGraph, phi: Mapping) -> bool:
    if len(G.X) != len(G2.X):
        return False
    return all(domination(G, V) == domination(G2, frozenset(phi[v] for v in V)) for V in G.subsets())


def is_graph_isomorphism(G: BipartiteGraph, G2: BipartiteGraph, phi: Mapping, xi: Mapping) -> bool:
    if sorted(map(repr, phi.values())) != sorted(map(repr, G2.U)):
        return False
    if sorted(map(repr, xi.values())) != sorted(map(repr, G2.X)):
        return False
    image = {(phi[u], xi[x]) for u, x in G.E}
    return image == set(G2.E)


def complete_isomorphism(G: BipartiteGraph, G2: BipartiteGraph, phi: Mapping) -> tuple[dict, dict] | None:
    """Extend a domination-preserving bijection of upper vertices to a graph isomorphism."""
    if len(G.U) != len(G2.U) or set(phi) != set(G.U) or set(phi.values()) != set(G2.U):
        return None
    if not preserves_domination(G, G2, phi):
        return None
    cells: dict[frozenset, list] = {}
    for x in G.X:
        cells.setdefault(G.neighbourhood(x), []).append(x)
    cells2: dict[frozenset, list] = {}
    for x in G2.X:
        cells2.setdefault(G2.neighbourhood(x), []).append(x)
    xi = {}
    for V, xs in cells.items():
        target = cells2.get(frozenset(phi[v] for v in V), [])
        if len(target) != len(xs):
            return None
        xi.update(zip(xs, target))
    phi = dict(phi)
    if not (is_graph_isomorphism(G, G2, phi, xi) and is_graph_isomorphism(
        G2, G, {v: k for k, v in phi.items()}, {v: k for k, v in xi.items()}
    )):
        return None
    return phi, xi
