"""Finite posets and lattices on the dense universe ``0..n-1``.

Orders are stored as bit rows: bit ``j`` of ``up[i]`` is set iff ``i <= j``,
and ``down`` is the transpose.  Lattices additionally carry precomputed
join/meet tables, since every other module hammers them.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .errors import CycleDetected, EmptyLattice, NoBounds, NotALattice, NotComparable, TooLarge

ElementSet = frozenset

DOWNSET_CAP = 4096


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements) -> int:
    m = 0
    for e in elements:
        m |= 1 << int(e)
    return m


@dataclass(frozen=True, eq=False)
class Poset:
    n: int
    up: tuple[int, ...]
    down: tuple[int, ...]

    @classmethod
    def from_covers(cls, n: int, pairs: Sequence[tuple[int, int]]) -> Poset:
        """Reflexive-transitive closure of ``pairs`` (any generating relation)."""
        if n < 0:
            raise ValueError("negative element count")
        succ: list[set[int]] = [set() for _ in range(n)]
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"element id out of range in pair ({a}, {b})")
            if a == b:
                raise CycleDetected(f"self-loop at {a}")
            succ[a].add(b)
        indeg = [0] * n
        for a in range(n):
            for b in succ[a]:
                indeg[b] += 1
        order = [i for i in range(n) if indeg[i] == 0]
        k = 0
        while k < len(order):
            a = order[k]
            k += 1
            for b in sorted(succ[a]):
                indeg[b] -= 1
                if indeg[b] == 0:
                    order.append(b)
        if len(order) != n:
            stuck = sorted(i for i in range(n) if indeg[i] > 0)
            raise CycleDetected(f"cycle through elements {stuck}")
        up = [0] * n
        for a in reversed(order):
            m = 1 << a
            for b in succ[a]:
                m |= up[b]
            up[a] = m
        return cls._from_up(n, up)

    @classmethod
    def from_matrix(cls, matrix) -> Poset:
        m = np.asarray(matrix, dtype=bool)
        n = m.shape[0]
        up = [mask_of(np.flatnonzero(m[i])) for i in range(n)]
        p = cls._from_up(n, up)
        if not p.is_valid():
            raise ValueError("matrix is not a partial order")
        return p

    @classmethod
    def _from_up(cls, n: int, up: Sequence[int]) -> Poset:
        down = [0] * n
        for i in range(n):
            for j in iter_bits(up[i]):
                down[j] |= 1 << i
        return cls(n, tuple(up), tuple(down))

    def is_valid(self) -> bool:
        for i in range(self.n):
            if not (self.up[i] >> i) & 1:
                return False
            for j in iter_bits(self.up[i]):
                if j != i and (self.up[j] >> i) & 1:
                    return False
                if self.up[j] & ~self.up[i]:
                    return False
        return True

    def leq(self, i: int, j: int) -> bool:
        return bool((self.up[i] >> j) & 1)

    def lt(self, i: int, j: int) -> bool:
        return i != j and bool((self.up[i] >> j) & 1)

    def comparable(self, i: int, j: int) -> bool:
        return self.leq(i, j) or self.leq(j, i)

    @cached_property
    def matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for i in range(self.n):
            for j in iter_bits(self.up[i]):
                m[i, j] = True
        m.flags.writeable = False
        return m

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        res = []
        for i in range(self.n):
            strict = self.up[i] & ~(1 << i)
            covers = []
            for j in iter_bits(strict):
                # j covers i iff nothing strictly between
                if not (strict & self.down[j] & ~(1 << j)):
                    covers.append(j)
            res.append(tuple(covers))
        return tuple(res)

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        res: list[list[int]] = [[] for _ in range(self.n)]
        for i, ups in enumerate(self.upper_covers):
            for j in ups:
                res[j].append(i)
        return tuple(tuple(r) for r in res)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i in range(self.n) for j in self.upper_covers[i])

    @cached_property
    def topo_order(self) -> tuple[int, ...]:
        # fewer elements below comes first; ties by index
        return tuple(sorted(range(self.n), key=lambda i: (self.down[i].bit_count(), i)))

    @cached_property
    def depth(self) -> tuple[int, ...]:
        """Length of the longest chain ending at each element."""
        d = [0] * self.n
        for x in self.topo_order:
            for y in self.lower_covers[x]:
                d[x] = max(d[x], d[y] + 1)
        return tuple(d)

    @cached_property
    def length(self) -> int:
        return max(self.depth, default=0)

    def minimal(self) -> list[int]:
        return [i for i in range(self.n) if self.down[i] == 1 << i]

    def maximal(self) -> list[int]:
        return [i for i in range(self.n) if self.up[i] == 1 << i]

    def induced(self, elements: Sequence[int]) -> Poset:
        idx = {e: k for k, e in enumerate(elements)}
        up = []
        for e in elements:
            up.append(mask_of(idx[f] for f in iter_bits(self.up[e]) if f in idx))
        return Poset._from_up(len(elements), up)

    def dual(self) -> Poset:
        return Poset(self.n, self.down, self.up)

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={list(self.covers)})"


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    poset: Poset
    join: tuple[tuple[int, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    bottom: int
    top: int
    name: str = ""
    labels: tuple | None = None

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def covers(self) -> tuple[tuple[int, int], ...]:
        return self.poset.covers

    def leq(self, a: int, b: int) -> bool:
        return self.poset.leq(a, b)

    @cached_property
    def join_array(self) -> np.ndarray:
        a = np.array(self.join, dtype=np.int32).reshape(self.n, self.n)
        a.flags.writeable = False
        return a

    @cached_property
    def meet_array(self) -> np.ndarray:
        a = np.array(self.meet, dtype=np.int32).reshape(self.n, self.n)
        a.flags.writeable = False
        return a

    def join_all(self, elements) -> int:
        r = self.bottom
        for e in elements:
            r = self.join[r][e]
        return r

    def meet_all(self, elements) -> int:
        r = self.top
        for e in elements:
            r = self.meet[r][e]
        return r

    def validate(self) -> None:
        """Exhaustive consistency check of the tables against the order."""
        n, p = self.n, self.poset
        if not p.is_valid():
            raise NotALattice("order relation is not a partial order")
        for a in range(n):
            if not (p.leq(self.bottom, a) and p.leq(a, self.top)):
                raise NoBounds(f"{a} is not between bottom and top")
            for b in range(n):
                j, m = self.join[a][b], self.meet[a][b]
                ub = p.up[a] & p.up[b]
                lb = p.down[a] & p.down[b]
                if not ((ub >> j) & 1 and ub & ~p.up[j] == 0):
                    raise NotALattice(f"join({a},{b})={j} is not the least upper bound")
                if not ((lb >> m) & 1 and lb & ~p.down[m] == 0):
                    raise NotALattice(f"meet({a},{b})={m} is not the greatest lower bound")

    def __repr__(self) -> str:
        tag = f"{self.name}, " if self.name else ""
        return f"FiniteLattice({tag}n={self.n})"


def lattice_from_poset(p: Poset, name: str = "", labels=None) -> FiniteLattice:
    n = p.n
    if n == 0:
        raise EmptyLattice("a lattice needs at least one element")
    mins, maxs = p.minimal(), p.maximal()
    if len(mins) != 1:
        raise NoBounds(f"no unique bottom: minimal elements {mins}")
    if len(maxs) != 1:
        raise NoBounds(f"no unique top: maximal elements {maxs}")
    # work in linear-extension positions so the least candidate is a lowest bit
    order = p.topo_order
    pos = [0] * n
    for k, e in enumerate(order):
        pos[e] = k
    up_t = [mask_of(pos[f] for f in iter_bits(p.up[e])) for e in range(n)]
    down_t = [mask_of(pos[f] for f in iter_bits(p.down[e])) for e in range(n)]
    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for a in range(n):
        join[a][a] = meet[a][a] = a
        for b in range(a + 1, n):
            ub = up_t[a] & up_t[b]
            c = order[(ub & -ub).bit_length() - 1]
            if ub & ~up_t[c]:
                raise NotALattice(f"elements {a} and {b} have no least upper bound")
            lb = down_t[a] & down_t[b]
            d = order[lb.bit_length() - 1]
            if lb & ~down_t[d]:
                raise NotALattice(f"elements {a} and {b} have no greatest lower bound")
            join[a][b] = join[b][a] = c
            meet[a][b] = meet[b][a] = d
    return FiniteLattice(
        p, tuple(map(tuple, join)), tuple(map(tuple, meet)), mins[0], maxs[0], name, labels
    )


def build_lattice(n: int, covers: Sequence[tuple[int, int]], name: str = "") -> FiniteLattice:
    """Build a lattice from a generating relation; covers are re-derived."""
    return lattice_from_poset(Poset.from_covers(n, covers), name)


def chain(n: int) -> FiniteLattice:
    return build_lattice(n, [(i, i + 1) for i in range(n - 1)], name=f"C{n}")


def boolean_lattice(k: int) -> FiniteLattice:
    return downset_lattice(Poset.from_covers(k, []), name=f"B{k}")


def length(L: FiniteLattice) -> int:
    return L.poset.length


def atoms(L: FiniteLattice) -> ElementSet:
    return frozenset(L.poset.upper_covers[L.bottom])


def join_irreducibles(L: FiniteLattice) -> ElementSet:
    lc = L.poset.lower_covers
    return frozenset(x for x in range(L.n) if len(lc[x]) == 1)


def upper_ji(L: FiniteLattice) -> ElementSet:
    return join_irreducibles(L) - atoms(L)


def ji_poset(L: FiniteLattice) -> Poset:
    """Induced order on the join-irreducibles, listed in increasing index."""
    return L.poset.induced(sorted(join_irreducibles(L)))


def ji_length(L: FiniteLattice) -> int:
    return ji_poset(L).length


def is_distributive(L: FiniteLattice) -> bool:
    J, M = L.join_array, L.meet_array
    for x in range(L.n):
        lhs = M[x][J]
        rhs = J[M[x][:, None], M[x][None, :]]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def is_modular(L: FiniteLattice) -> bool:
    J, M = L.join_array, L.meet_array
    leq = L.poset.matrix
    for x in range(L.n):
        # rows z with x <= z; all y
        zs = np.flatnonzero(leq[x])
        lhs = J[x][M[:, zs]]  # x v (y ^ z), shape (n, |zs|)
        rhs = M[J[x][:, None], zs[None, :]]  # (x v y) ^ z
        if not np.array_equal(lhs, rhs):
            return False
    return True


def has_pentagon(L: FiniteLattice) -> bool:
    """Brute-force search for an N5 sublattice."""
    n, J, M, p = L.n, L.join, L.meet, L.poset
    for a in range(n):
        for c in range(n):
            if not p.lt(a, c):
                continue
            for b in range(n):
                if p.comparable(a, b) or p.comparable(b, c):
                    continue
                if J[a][b] == J[c][b] and M[a][b] == M[c][b]:
                    return True
    return False


def has_diamond(L: FiniteLattice) -> bool:
    """Brute-force search for an M3 sublattice."""
    n, J, M, p = L.n, L.join, L.meet, L.poset
    for a, b, c in combinations(range(n), 3):
        if p.comparable(a, b) or p.comparable(a, c) or p.comparable(b, c):
            continue
        top = J[a][b]
        bot = M[a][b]
        if J[a][c] == top and J[b][c] == top and M[a][c] == bot and M[b][c] == bot:
            return True
    return False


# --- isomorphism -----------------------------------------------------------


def refine_colors(
    lower: Sequence[Sequence[int]], upper: Sequence[Sequence[int]], colors: Sequence
) -> list[int]:
    """Colour refinement over the cover graph until the partition is stable.

    Colours are re-indexed by sorted signature, so equal inputs across
    disjoint structures stay comparable.
    """
    n = len(colors)
    uniq = sorted(set(colors))
    rank = {c: k for k, c in enumerate(uniq)}
    col = [rank[c] for c in colors]
    classes = len(uniq)
    while True:
        sigs = [
            (col[v], tuple(sorted(col[u] for u in lower[v])), tuple(sorted(col[u] for u in upper[v])))
            for v in range(n)
        ]
        uniq = sorted(set(sigs))
        if len(uniq) == classes:
            return col
        rank = {s: k for k, s in enumerate(uniq)}
        col = [rank[s] for s in sigs]
        classes = len(uniq)


def base_invariant(p: Poset, v: int) -> tuple:
    return (
        p.depth[v],
        p.down[v].bit_count(),
        p.up[v].bit_count(),
        len(p.lower_covers[v]),
        len(p.upper_covers[v]),
    )


def _joint_colors(p: Poset, q: Poset) -> tuple[list[int], list[int]]:
    n = p.n
    lower = list(p.lower_covers) + [tuple(u + n for u in lc) for lc in q.lower_covers]
    upper = list(p.upper_covers) + [tuple(u + n for u in uc) for uc in q.upper_covers]
    init = [base_invariant(p, v) for v in range(n)] + [base_invariant(q, v) for v in range(q.n)]
    col = refine_colors(lower, upper, init)
    return col[:n], col[n:]


def _as_poset(x) -> Poset:
    return x.poset if isinstance(x, FiniteLattice) else x


def iter_isomorphisms(a, b) -> Iterator[tuple[int, ...]]:
    """Yield every order isomorphism ``a -> b`` as an image tuple.

    Works on posets or lattices (a lattice isomorphism is an order
    isomorphism).  Elements are placed in a linear extension so that all
    lower covers of an element are mapped before it.
    """
    p, q = _as_poset(a), _as_poset(b)
    if p.n != q.n:
        return
    cp, cq = _joint_colors(p, q)
    if sorted(cp) != sorted(cq):
        return
    n = p.n
    order = p.topo_order
    by_color: dict[int, list[int]] = {}
    for v in range(n):
        by_color.setdefault(cq[v], []).append(v)
    q_lower = [frozenset(lc) for lc in q.lower_covers]
    f = [-1] * n
    used = [False] * n

    def place(k: int) -> Iterator[tuple[int, ...]]:
        if k == n:
            yield tuple(f)
            return
        x = order[k]
        want = frozenset(f[y] for y in p.lower_covers[x])
        for c in by_color[cp[x]]:
            if used[c] or q_lower[c] != want:
                continue
            f[x] = c
            used[c] = True
            yield from place(k + 1)
            used[c] = False
        f[x] = -1

    yield from place(0)


def are_isomorphic(a, b) -> tuple[int, ...] | None:
    return next(iter_isomorphisms(a, b), None)


# --- constructions ---------------------------------------------------------


def downset_lattice(p: Poset, cap: int = DOWNSET_CAP, name: str = "") -> FiniteLattice:
    """Lattice of down-sets of ``p`` ordered by inclusion.

    Elements are numbered by (size, bitmask), a linear extension; the
    ``labels`` field holds each down-set as a bitmask over ``p``.
    """
    strict_down = [p.down[x] & ~(1 << x) for x in range(p.n)]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for d in frontier:
            for x in range(p.n):
                if not (d >> x) & 1 and strict_down[x] & ~d == 0:
                    e = d | (1 << x)
                    if e not in seen:
                        seen.add(e)
                        nxt.append(e)
                        if len(seen) > cap:
                            raise TooLarge(f"more than {cap} down-sets")
        frontier = nxt
    ideals = sorted(seen, key=lambda d: (d.bit_count(), d))
    m = len(ideals)
    index = {d: k for k, d in enumerate(ideals)}
    up = [0] * m
    for k, d in enumerate(ideals):
        r = 0
        for k2 in range(k, m):
            if ideals[k2] & d == d:
                r |= 1 << k2
        up[k] = r
    poset = Poset._from_up(m, up)
    join = tuple(tuple(index[d | e] for e in ideals) for d in ideals)
    meet = tuple(tuple(index[d & e] for e in ideals) for d in ideals)
    return FiniteLattice(poset, join, meet, 0, m - 1, name, tuple(ideals))


def interval(L: FiniteLattice, a: int, b: int) -> tuple[FiniteLattice, tuple[int, ...]]:
    """Sublattice ``[a, b]`` re-indexed, plus the index map back into ``L``."""
    if not L.leq(a, b):
        raise NotComparable(f"{a} is not below {b}")
    members = tuple(iter_bits(L.poset.up[a] & L.poset.down[b]))
    idx = {e: k for k, e in enumerate(members)}
    poset = L.poset.induced(members)
    join = tuple(tuple(idx[L.join[x][y]] for y in members) for x in members)
    meet = tuple(tuple(idx[L.meet[x][y]] for y in members) for x in members)
    sub = FiniteLattice(poset, join, meet, idx[a], idx[b])
    return sub, members
