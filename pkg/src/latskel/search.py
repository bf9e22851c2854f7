"""Searches for the two witnesses showing the rank-2 hypothesis is sharp."""
from __future__ import annotations

from collections import defaultdict
from typing import Iterable

from .enumerate import certificate, iter_distributive
from .lattice import FiniteLattice, are_isomorphic, ji_length
from .tolerance import herrmann_rank
from .wds import WeightedDoubleSkeleton, extract_wds, wds_isomorphic


def wds_key(s: WeightedDoubleSkeleton) -> tuple:
    """Isomorphism invariant used to bucket skeletons before exact comparison."""
    return (
        s.P.n,
        s.K.n,
        tuple(sorted(s.w.values())),
        certificate(s.K),
        certificate(s.P),
    )


class WdsClasses:
    """Incremental grouping of lattices by weighted-double-skeleton isomorphism."""

    def __init__(self):
        self._buckets: dict[tuple, list[list[tuple[FiniteLattice, WeightedDoubleSkeleton]]]] = defaultdict(list)

    def add(self, L: FiniteLattice, s: WeightedDoubleSkeleton | None = None) -> list[FiniteLattice]:
        """File ``L`` into its class; returns the earlier members of that class."""
        if s is None:
            s = extract_wds(L)
        classes = self._buckets[wds_key(s)]
        for cls in classes:
            if wds_isomorphic(s, cls[0][1]) is not None:
                earlier = [m for m, _ in cls]
                cls.append((L, s))
                return earlier
        classes.append([(L, s)])
        return []

    def classes(self) -> list[list[FiniteLattice]]:
        out = []
        for key in sorted(self._buckets):
            out.extend([m for m, _ in cls] for cls in self._buckets[key])
        return out


def search_rank3_counterexample(max_ji: int, universe: Iterable[FiniteLattice] | None = None):
    """First pair of non-isomorphic distributive lattices of rank <= 3 with isomorphic skeletons."""
    if universe is None:
        universe = iter_distributive(max_ji, min_ji=1)
    groups = WdsClasses()
    for L in universe:
        if herrmann_rank(L) > 3:
            continue
        for other in groups.add(L):
            if are_isomorphic(L, other) is None:
                return other, L
    return None


def search_ji1_not_h2(max_ji: int, universe: Iterable[FiniteLattice] | None = None):
    """First distributive lattice with join-irreducible length <= 1 and rank >= 3."""
    if universe is None:
        universe = iter_distributive(max_ji, min_ji=1)
    for L in universe:
        if ji_length(L) <= 1 and herrmann_rank(L) >= 3:
            return L
    return None
