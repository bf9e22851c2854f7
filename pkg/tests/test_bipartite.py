import random
from itertools import permutations

from hypothesis import given, settings, strategies as st

from latskel.bipartite import (
    INFINITY,
    BipartiteGraph,
    complete_isomorphism,
    domination,
    domination_table,
    exact_domination,
    exact_from_strong,
    is_graph_isomorphism,
    preserves_domination,
    strong_domination,
    strong_from_domination,
)


def example_graph():
    # u1 - x1, u1 - x2, u2 - x2, u2 - x3
    return BipartiteGraph.of(["u1", "u2"], ["x1", "x2", "x3"], [("u1", "x1"), ("u1", "x2"), ("u2", "x2"), ("u2", "x3")])


@st.composite
def graphs(draw, max_u=6, max_x=8):
    nu = draw(st.integers(1, max_u))
    nx = draw(st.integers(1, max_x))
    U = [f"u{i}" for i in range(nu)]
    X = [f"x{i}" for i in range(nx)]
    E = draw(st.sets(st.sampled_from([(u, x) for u in U for x in X])))
    return BipartiteGraph.of(U, X, E)


def test_example_values():
    G = example_graph()
    u1, u2 = frozenset({"u1"}), frozenset({"u2"})
    assert domination(G, u1) == 2
    assert domination(G, u1 | u2) == 3
    assert domination(G, frozenset()) == 0
    assert domination(G, INFINITY) == 3
    assert strong_domination(G, u1 | u2) == 1
    assert strong_domination(G, frozenset()) == 3
    assert exact_domination(G, u1) == 1
    assert exact_domination(G, u1 | u2) == 1
    assert exact_domination(G, frozenset()) == 0


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_strong_and_exact_recovered_from_domination(G):
    sigma = strong_from_domination(domination_table(G), G.U)
    eps = exact_from_strong(sigma, G.U)
    for V in G.subsets():
        assert sigma[V] == strong_domination(G, V)
        assert eps[V] == exact_domination(G, V)
    assert sum(eps.values()) == len(G.X)


@settings(max_examples=60, deadline=None)
@given(graphs(max_u=4, max_x=5), st.integers(0, 10**6))
def test_complete_isomorphism_decides_domination_preservation(G, seed):
    rng = random.Random(seed)
    U2 = [f"v{i}" for i in range(len(G.U))]
    X2 = [f"y{i}" for i in range(len(G.X))]
    phi0 = dict(zip(G.U, rng.sample(U2, len(U2))))
    xi0 = dict(zip(G.X, rng.sample(X2, len(X2))))
    G2 = BipartiteGraph.of(U2, X2, [(phi0[u], xi0[x]) for u, x in G.E])
    # every bijection of the upper vertices
    for image in permutations(U2):
        phi = dict(zip(G.U, image))
        result = complete_isomorphism(G, G2, phi)
        assert (result is not None) == preserves_domination(G, G2, phi)
        if result is not None:
            assert is_graph_isomorphism(G, G2, *result)
    assert complete_isomorphism(G, G2, phi0) is not None


def test_rejects_size_mismatch():
    G = example_graph()
    H = BipartiteGraph.of(["a"], ["b"], [("a", "b")])
    assert complete_isomorphism(G, H, {"u1": "a", "u2": "a"}) is None


def test_callable_domination():
    G = example_graph()
    sigma = strong_from_domination(lambda V: domination(G, V), G.U)
    assert sigma[frozenset(G.U)] == 1
