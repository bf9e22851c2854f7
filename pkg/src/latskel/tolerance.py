"""Tolerances, the skeleton tolerance, factor lattices and Herrmann rank."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import BlockNotInterval, NotALattice
from .lattice import FiniteLattice, Poset, iter_bits, lattice_from_poset, mask_of

# lattices up to this size go through pair closure + clique enumeration
PAIR_ROUTE_MAX = 32


@dataclass(frozen=True, eq=False)
class Tolerance:
    lattice: FiniteLattice
    rel: np.ndarray

    def __contains__(self, pair) -> bool:
        a, b = pair
        return bool(self.rel[a, b])

    @cached_property
    def pairs(self) -> list[tuple[int, int]]:
        return [(int(a), int(b)) for a, b in zip(*np.nonzero(self.rel))]

    def is_tolerance(self) -> bool:
        """Reflexive, symmetric and compatible (checked exhaustively)."""
        r = self.rel
        n = self.lattice.n
        if not r[np.arange(n), np.arange(n)].all() or not (r == r.T).all():
            return False
        J, M = self.lattice.join_array, self.lattice.meet_array
        a, b = np.nonzero(r)
        for x, y in zip(a, b):
            if not r[J[x][a], J[y][b]].all() or not r[M[x][a], M[y][b]].all():
                return False
        return True


@dataclass(frozen=True)
class Block:
    lo: int
    hi: int
    members: frozenset[int]

    def __contains__(self, x: int) -> bool:
        return x in self.members


@dataclass(frozen=True, eq=False)
class SkeletonResult:
    lattice: FiniteLattice
    tolerance: Tolerance
    skeleton: FiniteLattice
    blocks: tuple[Block, ...]
    zeta0: int

    def block_of(self, lo: int) -> int:
        for k, b in enumerate(self.blocks):
            if b.lo == lo:
                return k
        raise KeyError(lo)


def _freeze(rel: np.ndarray) -> np.ndarray:
    rel.flags.writeable = False
    return rel


def generate_tolerance(L: FiniteLattice, seed_pairs: Iterable[tuple[int, int]]) -> Tolerance:
    """Least tolerance containing ``seed_pairs``, by worklist fixpoint.

    Each round combines the freshly added pairs with every pair present,
    under componentwise join and meet, until nothing new appears.
    """
    n = L.n
    J, M = L.join_array, L.meet_array
    rel = np.eye(n, dtype=bool)
    fresh = np.zeros((n, n), dtype=bool)
    for a, b in seed_pairs:
        fresh[a, b] = fresh[b, a] = True
    fresh &= ~rel
    while fresh.any():
        rel |= fresh
        na, nb = np.nonzero(fresh)
        ca, cb = np.nonzero(rel)
        grown = np.zeros((n, n), dtype=bool)
        step = max(1, 2_000_000 // max(1, len(ca)))
        for k in range(0, len(na), step):
            xa, xb = na[k : k + step, None], nb[k : k + step, None]
            grown[J[xa, ca], J[xb, cb]] = True
            grown[M[xa, ca], M[xb, cb]] = True
        fresh = grown & ~rel
    return Tolerance(L, _freeze(rel))


def is_glued(T: Tolerance) -> bool:
    """Transitive closure total; cross-checked against the cover criterion."""
    n = T.lattice.n
    adj = [mask_of(np.flatnonzero(T.rel[i])) for i in range(n)]
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        frontier = nxt & ~seen
        seen |= nxt
    glued = seen == (1 << n) - 1
    by_covers = all(T.rel[a, b] for a, b in T.lattice.covers)
    if glued != by_covers:
        raise AssertionError("glued criterion disagrees with cover criterion; relation is not a tolerance")
    return glued


def _maximal_cliques(adj: Sequence[int]) -> list[int]:
    """Bron-Kerbosch with pivoting over bitmask adjacency (no self loops)."""
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        pivot_pool = p | x
        pivot = max(iter_bits(pivot_pool), key=lambda u: (p & adj[u]).bit_count())
        for v in iter_bits(p & ~adj[pivot]):
            bit = 1 << v
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    expand(0, (1 << len(adj)) - 1, 0)
    return out


def _interval_block(L: FiniteLattice, members: int) -> Block:
    elems = list(iter_bits(members))
    lo, hi = L.meet_all(elems), L.join_all(elems)
    if L.poset.up[lo] & L.poset.down[hi] != members:
        raise BlockNotInterval(f"maximal clique {elems} is not an interval")
    return Block(lo, hi, frozenset(elems))


def blocks(T: Tolerance) -> list[Block]:
    """Maximal cliques of the relation, each checked to be an interval."""
    L = T.lattice
    n = L.n
    adj = [mask_of(np.flatnonzero(T.rel[i])) & ~(1 << i) for i in range(n)]
    found = [_interval_block(L, c) for c in _maximal_cliques(adj)]
    return sorted(found, key=lambda b: (b.lo, b.hi))


def _interval_closure(L: FiniteLattice, seeds: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Blocks of the tolerance generated by ``seeds``, as maximal intervals.

    Tolerance blocks of a finite lattice are intervals and the comparable
    part of a tolerance is a convex sublattice of L^2, so it suffices to
    close a family of maximal intervals under pairwise join and meet.
    """
    up, down = L.poset.up, L.poset.down
    J, Mt = L.join, L.meet
    blocks: dict[int, tuple[int, int]] = {}
    inside = [0] * L.n  # bit k set iff element lies in interval k
    queue: list[int] = []
    next_id = 0

    def add(lo: int, hi: int) -> None:
        nonlocal next_id
        if inside[lo] & inside[hi]:
            return
        span = up[lo] & down[hi]
        for k in [k for k, (l2, h2) in blocks.items() if (span >> l2) & 1 and (span >> h2) & 1]:
            l2, h2 = blocks.pop(k)
            bit = ~(1 << k)
            for e in iter_bits(up[l2] & down[h2]):
                inside[e] &= bit
        k = next_id
        next_id += 1
        blocks[k] = (lo, hi)
        for e in iter_bits(span):
            inside[e] |= 1 << k
        queue.append(k)

    for x in range(L.n):
        add(x, x)
    for a, b in seeds:
        add(Mt[a][b], J[a][b])
    while queue:
        k = queue.pop()
        if k not in blocks:
            continue
        lo, hi = blocks[k]
        for k2 in list(blocks):
            if k not in blocks:
                break
            if k2 not in blocks:
                continue
            l2, h2 = blocks[k2]
            add(J[lo][l2], J[hi][h2])
            add(Mt[lo][l2], Mt[hi][h2])
    return sorted(blocks.values())


def tolerance_from_blocks(L: FiniteLattice, bl: Iterable[Block]) -> Tolerance:
    rel = np.zeros((L.n, L.n), dtype=bool)
    for b in bl:
        idx = np.array(sorted(b.members))
        rel[np.ix_(idx, idx)] = True
    return Tolerance(L, _freeze(rel))


def _route(L: FiniteLattice, method: str) -> str:
    if method == "auto":
        return "pairs" if L.n <= PAIR_ROUTE_MAX else "intervals"
    if method not in ("pairs", "intervals"):
        raise ValueError(f"unknown method {method!r}")
    return method


def skeleton_tolerance(L: FiniteLattice, method: str = "pairs") -> Tolerance:
    """Smallest glued tolerance: generated by all covering pairs."""
    if _route(L, method) == "pairs":
        return generate_tolerance(L, L.covers)
    spans = _interval_closure(L, L.covers)
    return tolerance_from_blocks(L, [Block(lo, hi, frozenset(iter_bits(L.poset.up[lo] & L.poset.down[hi]))) for lo, hi in spans])


def factor_lattice(T: Tolerance, bl: Sequence[Block] | None = None) -> SkeletonResult:
    """Lattice of blocks, ordered by lower endpoints and then validated."""
    L = T.lattice
    if bl is None:
        bl = blocks(T)
    bl = tuple(sorted(bl, key=lambda b: (b.lo, b.hi)))
    m = len(bl)
    covered = 0
    for b in bl:
        covered |= mask_of(b.members)
    if covered != (1 << L.n) - 1:
        raise NotALattice("blocks do not cover the lattice")
    up = []
    for i, a in enumerate(bl):
        row = 0
        for j, b in enumerate(bl):
            lo_le = L.leq(a.lo, b.lo)
            if lo_le != L.leq(a.hi, b.hi):
                raise NotALattice(f"block order by lower and upper ends disagree at {i}, {j}")
            if lo_le:
                row |= 1 << j
        up.append(row)
    K = lattice_from_poset(Poset._from_up(m, up))
    J, Mt = L.join, L.meet
    for i, a in enumerate(bl):
        for j, b in enumerate(bl):
            g, d = bl[K.join[i][j]], bl[K.meet[i][j]]
            # {x v y} spans [lo_a v lo_b, hi_a v hi_b]; it must sit inside g
            if not (L.leq(g.lo, J[a.lo][b.lo]) and L.leq(J[a.hi][b.hi], g.hi)):
                raise NotALattice(f"block join of {i} and {j} does not contain all joins")
            if not (L.leq(d.lo, Mt[a.lo][b.lo]) and L.leq(Mt[a.hi][b.hi], d.hi)):
                raise NotALattice(f"block meet of {i} and {j} does not contain all meets")
    zeta0 = K.bottom
    if bl[zeta0].lo != L.bottom:
        raise NotALattice("least block does not start at the bottom")
    return SkeletonResult(L, T, K, bl, zeta0)


def skeleton(L: FiniteLattice, method: str = "auto") -> SkeletonResult:
    route = _route(L, method)
    if route == "pairs":
        T = generate_tolerance(L, L.covers)
        return factor_lattice(T)
    spans = _interval_closure(L, L.covers)
    bl = [Block(lo, hi, frozenset(iter_bits(L.poset.up[lo] & L.poset.down[hi]))) for lo, hi in spans]
    return factor_lattice(tolerance_from_blocks(L, bl), bl)


def iterated_skeletons(L: FiniteLattice, method: str = "auto") -> list[FiniteLattice]:
    out = [L]
    while out[-1].n > 1:
        out.append(skeleton(out[-1], method).skeleton)
    return out


def herrmann_rank(L: FiniteLattice, method: str = "auto") -> int:
    return len(iterated_skeletons(L, method)) - 1


def is_h_irreducible(L: FiniteLattice, n: int) -> bool:
    cur = L
    for _ in range(n):
        if cur.n == 1:
            return True
        cur = skeleton(cur).skeleton
    return cur.n == 1


def block_intersection(L: FiniteLattice, a: Block, b: Block) -> tuple[int, int] | None:
    """``a ∩ b`` as an interval ``(lo, hi)``, or None when disjoint."""
    lo, hi = L.join[a.lo][b.lo], L.meet[a.hi][b.hi]
    return (lo, hi) if L.leq(lo, hi) else None
