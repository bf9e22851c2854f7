import pytest

from latskel.enumerate import iter_distributive, lattices_up_to
from latskel.errors import ChainDependentWeight, InvalidWDS, IsZeta0
from latskel.io import wds_from_dict, wds_to_dict
from latskel.lattice import Poset, boolean_lattice, build_lattice, chain, is_modular, join_irreducibles
from latskel.tolerance import skeleton
from latskel.wds import (
    WeightedDoubleSkeleton,
    dominated_atoms,
    extended_weight,
    extract_wds,
    interval_length,
    j_alpha_count,
    j_alpha_set,
    jk_count,
    mobius,
    reuter_sides,
    wds_isomorphic,
)

from oracles import mobius as brute_mobius

DISTRIBUTIVE = list(iter_distributive(5, min_ji=1))


def test_d5_skeleton_data(D5):
    s = extract_wds(D5)
    assert s.P.n == 3 and s.P.length == 2
    assert s.K.n == 2
    assert [s.w[c] for c in s.P.covers] == [2, 1]
    assert [j_alpha_count(s, a) for a in range(2)] == [2, 1]
    assert extended_weight(s, 0, 2) == 3


def test_chain_and_boolean_weights():
    s = extract_wds(chain(4))
    assert s.P.n == 4 and set(s.w.values()) == {1}
    s = extract_wds(boolean_lattice(4))
    assert s.K.n == 1 and s.P.n == 2 and list(s.w.values()) == [4]


def test_extracted_skeletons_validate():
    for L in list(lattices_up_to(7)) + DISTRIBUTIVE:
        if L.n > 1 and is_modular(L):
            extract_wds(L).validate()


def test_weights_are_interval_lengths():
    for L in DISTRIBUTIVE:
        s = extract_wds(L)
        for (a, b), v in s.w.items():
            assert v == interval_length(L, s.origin[a], s.origin[b])


def test_mobius_against_recursion():
    for L in list(lattices_up_to(6)):
        for x in range(L.n):
            for y in range(L.n):
                assert mobius(L, x, y) == brute_mobius(L.poset, x, y)


def test_mobius_of_boolean_and_chain():
    B = boolean_lattice(3)
    assert mobius(B, B.bottom, B.top) == -1
    C = chain(4)
    assert [mobius(C, 0, y) for y in range(4)] == [1, -1, 0, 0]


def test_block_counts_match_direct_count():
    for L in DISTRIBUTIVE:
        sk = skeleton(L)
        s = extract_wds(L, sk)
        counts = [j_alpha_count(s, a) for a in range(sk.skeleton.n)]
        assert counts == [len(j_alpha_set(L, sk, a, modular=True)) for a in range(sk.skeleton.n)]
        assert sum(counts) == len(join_irreducibles(L))


def test_reuter_identity_on_modular():
    for L in lattices_up_to(8):
        if L.n < 2 or not is_modular(L):
            continue
        sk = skeleton(L)
        for a in range(sk.skeleton.n):
            for k in (1, 2):
                lhs, rhs = reuter_sides(L, sk, a, k)
                assert lhs == rhs


def test_jk_counts():
    B = boolean_lattice(3)
    assert [jk_count(B, k) for k in range(4)] == [1, 3, 3, 1]


def test_dominated_atoms(D5):
    sk = skeleton(D5)
    upper = 1 - sk.zeta0
    assert len(dominated_atoms(D5, sk, upper)) == 2
    with pytest.raises(IsZeta0):
        dominated_atoms(D5, sk, sk.zeta0)


def test_isomorphism(D5):
    assert wds_isomorphic(extract_wds(D5), extract_wds(chain(4))) is None
    s = extract_wds(D5)
    iso = wds_isomorphic(s, s)
    assert iso is not None and iso.psi == (0, 1, 2) and iso.kappa == (0, 1)


def test_isomorphism_is_invariant_under_relabelling():
    for L in DISTRIBUTIVE[:40]:
        perm = list(reversed(range(L.n)))
        M = build_lattice(L.n, [(perm[a], perm[b]) for a, b in L.covers])
        assert wds_isomorphic(extract_wds(L), extract_wds(M)) is not None


def test_weight_changes_break_isomorphism(D5):
    d = wds_to_dict(extract_wds(D5))
    d["w"] = [[0, 1, 1], [1, 2, 2]]
    assert wds_isomorphic(extract_wds(D5), wds_from_dict(d)) is None


def _d5_dict():
    return {
        "P": {"n": 3, "covers": [[0, 1], [1, 2]]},
        "K": {"n": 2, "covers": [[0, 1]]},
        "eta0": [0, 1],
        "eta1": [1, 2],
        "w": [[0, 1, 2], [1, 2, 1]],
    }


@pytest.mark.parametrize(
    "change, axiom",
    [
        (lambda d: d.update(eta0=[0]), "eta-domain"),
        (lambda d: d.update(eta0=[0, 7]), "eta0-range"),
        (lambda d: d.update(eta0=[0, 0]), "eta0-embedding"),
        (lambda d: d.update(eta1=[2, 1]), "eta1-embedding"),
        (lambda d: d.update(eta0=[1, 2], eta1=[0, 2]), "eta0-below-eta1"),
        (lambda d: d.update(w=[[0, 1, 2]]), "weights"),
        (lambda d: d.update(w=[[0, 1, 0], [1, 2, 1]]), "weights"),
        (lambda d: d.update(w=[[0, 1, 2], [0, 2, 1]]), "weights"),
        (lambda d: d["P"].update(n=4), "carrier"),
        (lambda d: d.pop("K"), "format"),
    ],
)
def test_invalid_skeletons_name_their_axiom(change, axiom):
    d = _d5_dict()
    change(d)
    with pytest.raises(InvalidWDS) as err:
        wds_from_dict(d)
    assert err.value.axiom == axiom


def test_join_preservation_axiom():
    # K = B2 but eta0 sends the join of the atoms somewhere above their least upper bound
    P = Poset.from_covers(5, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)])
    K = boolean_lattice(2)
    s = WeightedDoubleSkeleton(P, K, (0, 1, 2, 4), (0, 1, 2, 4), {c: 1 for c in P.covers})
    with pytest.raises(InvalidWDS) as err:
        s.validate()
    assert err.value.axiom == "eta0-join-preserving"


def test_chain_dependent_weight():
    P = Poset.from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    K = boolean_lattice(2)
    s = WeightedDoubleSkeleton(P, K, (0, 1, 2, 3), (0, 1, 2, 3), {(0, 1): 1, (0, 2): 1, (1, 3): 1, (2, 3): 2})
    with pytest.raises(ChainDependentWeight):
        extended_weight(s, 0, 3)
