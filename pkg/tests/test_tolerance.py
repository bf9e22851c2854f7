import pytest

from latskel.enumerate import iter_distributive, lattices_up_to
from latskel.lattice import boolean_lattice, chain, downset_lattice, Poset
from latskel.tolerance import (
    PAIR_ROUTE_MAX,
    blocks,
    factor_lattice,
    generate_tolerance,
    herrmann_rank,
    is_glued,
    is_h_irreducible,
    iterated_skeletons,
    skeleton,
    skeleton_tolerance,
)

from oracles import maximal_cliques, tolerance_closure

SMALL = [L for L in lattices_up_to(7) if L.n > 1]


def test_diagonal_blocks_are_singletons():
    B2 = boolean_lattice(2)
    T = generate_tolerance(B2, [])
    assert [sorted(b.members) for b in blocks(T)] == [[0], [1], [2], [3]]
    assert not is_glued(T)


def test_chain_blocks():
    bl = blocks(skeleton_tolerance(chain(4)))
    assert [sorted(b.members) for b in bl] == [[0, 1], [1, 2], [2, 3]]


def test_d5_skeleton(D5):
    sk = skeleton(D5)
    assert sk.skeleton.n == 2
    lo = sk.blocks[sk.zeta0]
    # D5 elements are down-sets; the bottom block runs from the empty set to {x1, x2}
    assert (D5.labels[lo.lo], D5.labels[lo.hi]) == (0, 0b011)
    other = sk.blocks[1 - sk.zeta0]
    assert (D5.labels[other.lo], D5.labels[other.hi]) == (0b011, 0b111)


@pytest.mark.parametrize("k", range(1, 6))
def test_boolean_has_rank_one(k):
    assert herrmann_rank(boolean_lattice(k)) == 1
    assert is_h_irreducible(boolean_lattice(k), 1)


@pytest.mark.parametrize("n", range(1, 9))
def test_chain_rank(n):
    assert herrmann_rank(chain(n + 1)) == n
    assert [S.n for S in iterated_skeletons(chain(n + 1))] == list(range(n + 1, 0, -1))


def test_simple_lattices_collapse(M3, N5):
    for L in (M3, N5):
        assert skeleton(L).skeleton.n == 1 and herrmann_rank(L) == 1


def test_skeleton_tolerance_matches_naive_closure():
    for L in SMALL:
        T = skeleton_tolerance(L)
        expected = tolerance_closure(L, L.covers)
        assert set(T.pairs) == expected
        assert T.is_tolerance() and is_glued(T)


def test_blocks_are_the_maximal_cliques():
    for L in SMALL:
        T = skeleton_tolerance(L)
        cliques = maximal_cliques(L.n, set(T.pairs))
        found = [b.members for b in blocks(T)]
        assert len(found) == len(cliques) and set(found) == set(cliques)
        for b in blocks(T):
            assert b.members == frozenset(x for x in range(L.n) if L.leq(b.lo, x) and L.leq(x, b.hi))


def test_routes_agree_on_small_lattices():
    for L in SMALL:
        a, b = skeleton(L, "pairs"), skeleton(L, "intervals")
        assert [(x.lo, x.hi) for x in a.blocks] == [(x.lo, x.hi) for x in b.blocks]
        assert (a.tolerance.rel == b.tolerance.rel).all()


def test_routes_agree_past_the_switch():
    big = [L for L in iter_distributive(6, min_ji=6) if L.n > PAIR_ROUTE_MAX][:12]
    assert big
    for L in big:
        a, b = skeleton(L, "pairs"), skeleton(L, "intervals")
        assert [(x.lo, x.hi) for x in a.blocks] == [(x.lo, x.hi) for x in b.blocks]


def test_factor_lattice_of_glued_tolerance_is_ordered_by_endpoints():
    for L in SMALL:
        res = factor_lattice(skeleton_tolerance(L))
        K = res.skeleton
        for a in range(K.n):
            for b in range(K.n):
                assert K.leq(a, b) == L.leq(res.blocks[a].lo, res.blocks[b].lo)
        assert res.blocks[res.zeta0].lo == L.bottom


def test_generated_tolerance_is_least():
    L = boolean_lattice(3)
    T = generate_tolerance(L, [(0, 1)])
    assert set(T.pairs) == tolerance_closure(L, [(0, 1)])


def test_rank_of_n_poset_lattice():
    # down-sets of the N-shaped poset: join-irreducible length 1 yet rank 3
    L = downset_lattice(Poset.from_covers(4, [(0, 2), (0, 3), (1, 3)]))
    assert [S.n for S in iterated_skeletons(L)] == [8, 3, 2, 1]
    assert not is_h_irreducible(L, 2) and is_h_irreducible(L, 3)


def test_unknown_method():
    with pytest.raises(ValueError):
        skeleton(chain(3), "magic")
