"""Weighted double skeletons, extended weights and Moebius-function counts."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator
from weakref import WeakKeyDictionary

from .errors import ChainDependentWeight, InvalidWDS, IsZeta0
from .lattice import (
    FiniteLattice,
    Poset,
    atoms,
    iter_bits,
    iter_isomorphisms,
    join_irreducibles,
)
from .tolerance import SkeletonResult, block_intersection, skeleton


@dataclass(frozen=True, eq=False)
class WeightedDoubleSkeleton:
    """``(P, <=, K, eta0, eta1, w)``.

    ``origin`` maps P-elements back to lattice elements for concrete
    instances; nothing at the skeleton level reads it.
    """

    P: Poset
    K: FiniteLattice
    eta0: tuple[int, ...]
    eta1: tuple[int, ...]
    w: dict[tuple[int, int], int]
    origin: tuple[int, ...] | None = field(default=None, compare=False)

    @property
    def zeta0(self) -> int:
        return self.K.bottom

    def validate(self) -> None:
        P, K = self.P, self.K
        if len(self.eta0) != K.n or len(self.eta1) != K.n:
            raise InvalidWDS("eta-domain", "eta0 and eta1 need one entry per element of K")
        for name, eta in (("eta0", self.eta0), ("eta1", self.eta1)):
            if any(not 0 <= p < P.n for p in eta):
                raise InvalidWDS(f"{name}-range", "image outside P")
            if len(set(eta)) != K.n:
                raise InvalidWDS(f"{name}-embedding", "not injective")
            for x in range(K.n):
                for y in range(K.n):
                    if K.leq(x, y) != P.leq(eta[x], eta[y]):
                        raise InvalidWDS(f"{name}-embedding", f"order not reflected at ({x}, {y})")
        for x in range(K.n):
            for y in range(K.n):
                if not _is_lub(P, self.eta0[K.join[x][y]], self.eta0[x], self.eta0[y]):
                    raise InvalidWDS("eta0-join-preserving", f"at ({x}, {y})")
                if not _is_lub(P.dual(), self.eta1[K.meet[x][y]], self.eta1[x], self.eta1[y]):
                    raise InvalidWDS("eta1-meet-preserving", f"at ({x}, {y})")
        if set(self.eta0) | set(self.eta1) != set(range(P.n)):
            raise InvalidWDS("carrier", "P is not the union of the images of eta0 and eta1")
        for x in range(K.n):
            if not P.leq(self.eta0[x], self.eta1[x]):
                raise InvalidWDS("eta0-below-eta1", f"at {x}")
        if set(self.w) != set(P.covers):
            raise InvalidWDS("weights", "w must be defined exactly on the covering pairs of P")
        for e, v in self.w.items():
            if not isinstance(v, int) or v < 1:
                raise InvalidWDS("weights", f"weight of {e} is not a positive integer")

    @cached_property
    def _chain_sums(self) -> list[list[frozenset[int]]]:
        # sums[x][y]: set of weight sums over all maximal chains x -> y
        P = self.P
        out = []
        for x in range(P.n):
            row: list[frozenset[int]] = [frozenset()] * P.n
            row[x] = frozenset({0})
            span = P.up[x]
            for y in P.topo_order:
                if y == x or not (span >> y) & 1:
                    continue
                acc: set[int] = set()
                for z in P.lower_covers[y]:
                    if (span >> z) & 1:
                        acc.update(s + self.w[(z, y)] for s in row[z])
                row[y] = frozenset(acc)
            out.append(row)
        return out


def _is_lub(P: Poset, c: int, a: int, b: int) -> bool:
    common = P.up[a] & P.up[b]
    return bool((common >> c) & 1) and common & ~P.up[c] == 0


@dataclass(frozen=True)
class WdsIsomorphism:
    psi: tuple[int, ...]
    kappa: tuple[int, ...]


def interval_length(L: FiniteLattice, x: int, y: int) -> int:
    p = L.poset
    span = p.up[x] & p.down[y]
    best = {x: 0}
    for z in p.topo_order:
        if z == x or not (span >> z) & 1:
            continue
        best[z] = max(best[u] for u in p.lower_covers[z] if (span >> u) & 1) + 1
    return best[y]


def extract_wds(L: FiniteLattice, skel: SkeletonResult | None = None) -> WeightedDoubleSkeleton:
    if skel is None:
        skel = skeleton(L)
    elems = sorted({b.lo for b in skel.blocks} | {b.hi for b in skel.blocks})
    idx = {e: k for k, e in enumerate(elems)}
    P = L.poset.induced(elems)
    w = {(a, b): interval_length(L, elems[a], elems[b]) for a, b in P.covers}
    sigma = WeightedDoubleSkeleton(
        P,
        skel.skeleton,
        tuple(idx[b.lo] for b in skel.blocks),
        tuple(idx[b.hi] for b in skel.blocks),
        w,
        tuple(elems),
    )
    sigma.validate()
    return sigma


def extended_weight(sigma: WeightedDoubleSkeleton, x: int, y: int) -> int:
    """Sum of weights along a maximal chain ``x -> y``; 0 unless ``x < y``."""
    if x == y or not sigma.P.leq(x, y):
        return 0
    sums = sigma._chain_sums[x][y]
    if len(sums) != 1:
        raise ChainDependentWeight(f"chains from {x} to {y} have weight sums {sorted(sums)}")
    return next(iter(sums))


_mobius_cache: WeakKeyDictionary = WeakKeyDictionary()


def mobius_table(Q) -> list[list[int]]:
    """Full Moebius table of a poset (or of a lattice's order)."""
    p = Q.poset if isinstance(Q, FiniteLattice) else Q
    table = _mobius_cache.get(p)
    if table is None:
        table = [[0] * p.n for _ in range(p.n)]
        for x in range(p.n):
            row = table[x]
            row[x] = 1
            for y in p.topo_order:
                if y != x and p.leq(x, y):
                    # z ranges over [x, y)
                    row[y] = -sum(row[z] for z in iter_bits(p.up[x] & p.down[y]) if z != y)
        _mobius_cache[p] = table
    return table


def mobius(Q, x: int, y: int) -> int:
    return mobius_table(Q)[x][y]


def j_alpha_count(sigma: WeightedDoubleSkeleton, alpha: int) -> int:
    """Signed count read off the skeleton alone; equals |J_alpha| for distributive lattices."""
    K = sigma.K
    mu = mobius_table(K)
    total = 0
    for beta in iter_bits(K.poset.down[alpha]):
        total += mu[beta][alpha] * extended_weight(sigma, sigma.eta0[alpha], sigma.eta1[beta])
    return total


def j_alpha_set(L: FiniteLattice, skel: SkeletonResult, alpha: int, modular: bool | None = None) -> frozenset[int]:
    """Join-irreducibles of L in block ``alpha`` other than its bottom.

    With ``modular=True`` the set is also checked against the
    join-irreducibles among the atoms of the block.
    """
    b = skel.blocks[alpha]
    found = join_irreducibles(L) & (b.members - {b.lo})
    if modular:
        block_atoms = frozenset(L.poset.upper_covers[b.lo]) & b.members
        if found != join_irreducibles(L) & block_atoms:
            raise AssertionError(f"J_alpha for block {alpha} is not made of atoms of the block")
    return found


def jk_count(L: FiniteLattice, k: int) -> int:
    return sum(1 for lc in L.poset.lower_covers if len(lc) == k)


def _lower_cover_count_within(L: FiniteLattice, lo: int, hi: int) -> dict[int, int]:
    span = L.poset.up[lo] & L.poset.down[hi]
    return {c: sum(1 for d in L.poset.lower_covers[c] if (span >> d) & 1) for c in iter_bits(span)}


def jk_count_in(L: FiniteLattice, skel: SkeletonResult, alpha: int, beta: int, k: int) -> int:
    """Elements of ``alpha ∩ beta`` with exactly k lower covers inside it."""
    meet = block_intersection(L, skel.blocks[alpha], skel.blocks[beta])
    if meet is None:
        return 0
    return sum(1 for v in _lower_cover_count_within(L, *meet).values() if v == k)


def reuter_sides(L: FiniteLattice, skel: SkeletonResult, alpha: int, k: int) -> tuple[int, int]:
    """Both sides of Reuter's identity for block ``alpha`` and ``k`` lower covers."""
    b = skel.blocks[alpha]
    inner = _lower_cover_count_within(L, b.lo, b.hi)
    lhs = sum(1 for c, v in inner.items() if v == k and len(L.poset.lower_covers[c]) == k)
    K = skel.skeleton
    mu = mobius_table(K)
    rhs = sum(mu[beta][alpha] * jk_count_in(L, skel, alpha, beta, k) for beta in iter_bits(K.poset.down[alpha]))
    return lhs, rhs


def dominated_atoms(L: FiniteLattice, skel: SkeletonResult, alpha: int) -> frozenset[int]:
    if alpha == skel.zeta0:
        raise IsZeta0("the least block dominates nothing by definition")
    lo = skel.blocks[alpha].lo
    return frozenset(a for a in atoms(L) if L.leq(a, lo))


def iter_wds_isomorphisms(s1: WeightedDoubleSkeleton, s2: WeightedDoubleSkeleton) -> Iterator[WdsIsomorphism]:
    if s1.P.n != s2.P.n or s1.K.n != s2.K.n:
        return
    if sorted(s1.w.values()) != sorted(s2.w.values()):
        return
    n = s1.P.n
    for kappa in iter_isomorphisms(s1.K, s2.K):
        psi = [-1] * n
        ok = True
        for x in range(s1.K.n):
            for e1, e2 in ((s1.eta0, s2.eta0), (s1.eta1, s2.eta1)):
                src, dst = e1[x], e2[kappa[x]]
                if psi[src] == -1:
                    psi[src] = dst
                elif psi[src] != dst:
                    ok = False
        if not ok or -1 in psi or len(set(psi)) != n:
            continue
        if any(s2.P.leq(psi[a], psi[b]) != s1.P.leq(a, b) for a in range(n) for b in range(n)):
            continue
        if any(s2.w.get((psi[a], psi[b])) != v for (a, b), v in s1.w.items()):
            continue
        yield WdsIsomorphism(tuple(psi), tuple(kappa))


def wds_isomorphic(s1: WeightedDoubleSkeleton, s2: WeightedDoubleSkeleton) -> WdsIsomorphism | None:
    return next(iter_wds_isomorphisms(s1, s2), None)
