"""Isomorph-free enumeration of small posets and lattices.

Posets are grown one maximal element at a time (every poset arises from a
smaller one by adding a maximal element above some down-set) and
deduplicated by a canonical certificate.  The certificate is the least
order-matrix string over all leaves of an individualise-and-refine search.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .errors import NotALattice, TooLarge
from .lattice import (
    FiniteLattice,
    Poset,
    base_invariant,
    downset_lattice,
    iter_bits,
    lattice_from_poset,
    refine_colors,
)

MAX_POSET_SIZE = 7
MAX_DISTRIBUTIVE_JI = 8
MAX_LATTICE_SIZE = 8


def _encode(p: Poset, order: list[int]) -> tuple[int, ...]:
    pos = [0] * p.n
    for k, e in enumerate(order):
        pos[e] = k
    rows = []
    for e in order:
        r = 0
        for f in iter_bits(p.up[e]):
            r |= 1 << pos[f]
        rows.append(r)
    return tuple(rows)


def certificate(x) -> bytes:
    """Canonical byte string: equal iff the orders are isomorphic."""
    p = x.poset if isinstance(x, FiniteLattice) else x
    n = p.n
    if n == 0:
        return b"\x00"
    lower, upper = p.lower_covers, p.upper_covers
    best: list[tuple[int, ...] | None] = [None]

    def twin_key(v: int) -> tuple[int, int]:
        return (p.up[v] & ~(1 << v), p.down[v] & ~(1 << v))

    def search(col: list[int]) -> None:
        cells: dict[int, list[int]] = {}
        for v in range(n):
            cells.setdefault(col[v], []).append(v)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            s = _encode(p, sorted(range(n), key=col.__getitem__))
            if best[0] is None or s < best[0]:
                best[0] = s
            return
        seen_twins = set()
        for v in target:
            tk = twin_key(v)
            if tk in seen_twins:
                continue
            seen_twins.add(tk)
            search(refine_colors(lower, upper, [(col[u], u != v) for u in range(n)]))

    search(refine_colors(lower, upper, [base_invariant(p, v) for v in range(n)]))
    width = (n + 7) // 8
    return n.to_bytes(2, "big") + b"".join(r.to_bytes(width, "big") for r in best[0])


def canonical_poset(p: Poset) -> Poset:
    """Isomorphic copy of ``p`` whose element order follows its certificate."""
    cert = certificate(p)
    n = int.from_bytes(cert[:2], "big")
    width = (n + 7) // 8
    up = [int.from_bytes(cert[2 + k * width : 2 + (k + 1) * width], "big") for k in range(n)]
    return Poset._from_up(n, up)


def _downsets(p: Poset, limit: int | None = None) -> list[int]:
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
                        if limit is not None and len(seen) > limit:
                            return sorted(seen)
        frontier = nxt
    return sorted(seen)


def _add_maximal(p: Poset, below: int) -> Poset:
    n = p.n
    new = 1 << n
    up = [p.up[x] | (new if (below >> x) & 1 else 0) for x in range(n)]
    up.append(new)
    return Poset._from_up(n + 1, up)


def _extensions(level: list[Poset], max_downsets: int | None = None) -> list[Poset]:
    found: dict[bytes, Poset] = {}
    for q in level:
        for d in _downsets(q):
            p = _add_maximal(q, d)
            if max_downsets is not None and len(_downsets(p, max_downsets)) > max_downsets:
                continue
            c = certificate(p)
            if c not in found:
                found[c] = p
    return [found[c] for c in sorted(found)]


@lru_cache(maxsize=None)
def _poset_level(n: int) -> tuple[Poset, ...]:
    if n == 0:
        return (Poset(0, (), ()),)
    return tuple(_extensions(list(_poset_level(n - 1))))


def enumerate_posets(n: int) -> list[Poset]:
    """All posets on ``n`` elements up to isomorphism, in certificate order."""
    if n > MAX_POSET_SIZE:
        raise TooLarge(f"poset enumeration is capped at {MAX_POSET_SIZE} elements")
    if n < 0:
        raise ValueError("negative size")
    return list(_poset_level(n))


@lru_cache(maxsize=None)
def _bounded_level(n: int, max_downsets: int) -> tuple[Poset, ...]:
    if n == 0:
        return (Poset(0, (), ()),)
    return tuple(_extensions(list(_bounded_level(n - 1, max_downsets)), max_downsets))


def posets_with_few_downsets(max_downsets: int, max_elements: int | None = None) -> Iterator[Poset]:
    """Posets with at most ``max_downsets`` down-sets (removing a maximal element never adds one)."""
    n = 0
    while max_elements is None or n <= max_elements:
        level = _bounded_level(n, max_downsets)
        if not level:
            return
        yield from level
        n += 1


def iter_distributive(max_ji: int | None, max_size: int | None = None, min_ji: int = 0) -> Iterator[FiniteLattice]:
    """Down-set lattices of the posets with ``min_ji..max_ji`` elements, streamed.

    With ``max_size`` the lattices are also capped in size, which lifts the
    poset-size limit.
    """
    if max_size is not None:
        for p in posets_with_few_downsets(max_size, max_ji):
            if p.n >= min_ji:
                yield downset_lattice(p, name=_distributive_name(p))
        return
    if max_ji is None:
        raise ValueError("need max_ji or max_size")
    if max_ji > MAX_DISTRIBUTIVE_JI:
        raise TooLarge(f"distributive enumeration by join-irreducibles is capped at {MAX_DISTRIBUTIVE_JI}")
    for k in range(min_ji, max_ji + 1):
        for p in _poset_level(k):
            yield downset_lattice(p, name=_distributive_name(p))


def _distributive_name(p: Poset) -> str:
    cover = ",".join(f"{a}<{b}" for a, b in p.covers)
    return f"D(J{p.n}:{cover})"


def enumerate_distributive(max_ji: int | None, max_size: int | None = None) -> list[FiniteLattice]:
    return list(iter_distributive(max_ji, max_size))


def _bounded(p: Poset) -> Poset:
    """Adjoin a new bottom (index 0) and top (last index)."""
    n = p.n
    up = [(1 << (n + 2)) - 1]
    for x in range(n):
        up.append((p.up[x] << 1) | (1 << (n + 1)))
    up.append(1 << (n + 1))
    return Poset._from_up(n + 2, up)


def iter_lattices(n: int) -> Iterator[FiniteLattice]:
    if n > MAX_LATTICE_SIZE:
        raise TooLarge(f"lattice enumeration is capped at {MAX_LATTICE_SIZE} elements")
    if n < 1:
        return
    if n == 1:
        yield lattice_from_poset(Poset(1, (1,), (1,)), name="L1#0")
        return
    k = 0
    for q in _poset_level(n - 2):
        try:
            L = lattice_from_poset(_bounded(q))
        except NotALattice:
            continue
        yield FiniteLattice(L.poset, L.join, L.meet, L.bottom, L.top, f"L{n}#{k}")
        k += 1


def enumerate_lattices(n: int) -> list[FiniteLattice]:
    """All lattices with exactly ``n`` elements up to isomorphism."""
    return list(iter_lattices(n))


def lattices_up_to(max_size: int) -> Iterator[FiniteLattice]:
    for n in range(1, max_size + 1):
        yield from iter_lattices(n)
