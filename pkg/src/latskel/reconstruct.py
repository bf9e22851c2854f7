"""Rebuild a distributive lattice from its weighted double skeleton.

The lattice is recovered through its poset of join-irreducibles, which
has length at most one: atoms below, the remaining join-irreducibles
above.  Block counts come from the Moebius formula, and the atom/upper
incidence from the domination function, which the skeleton determines.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .bipartite import INFINITY, BipartiteGraph, exact_from_strong, strong_from_domination
from .errors import InconsistentCounts, NegativeJCount
from .lattice import FiniteLattice, Poset, boolean_lattice, downset_lattice
from .wds import WeightedDoubleSkeleton, extended_weight, extract_wds, j_alpha_count, wds_isomorphic


@dataclass(frozen=True, eq=False)
class ReconstructionReport:
    lattice: FiniteLattice
    ji: Poset
    graph: BipartiteGraph | None
    block_assignment: dict
    upper_counts: dict[int, int]


def blockwise_domination(sigma: WeightedDoubleSkeleton, B) -> int:
    """Atoms dominated by the blocks in ``B`` (upper blocks only)."""
    B = list(B)
    if not B:
        return 0
    K = sigma.K
    zeta0 = K.bottom
    if zeta0 in B:
        raise ValueError("the least block cannot appear in a domination query")
    return extended_weight(sigma, sigma.eta0[zeta0], sigma.eta0[K.join_all(B)])


def reconstruct(sigma: WeightedDoubleSkeleton, verify: bool = True) -> ReconstructionReport:
    sigma.validate()
    K = sigma.K
    zeta0 = K.bottom
    m = extended_weight(sigma, sigma.eta0[zeta0], sigma.eta1[zeta0])

    if K.n == 1:
        L = boolean_lattice(m)
        report = ReconstructionReport(L, Poset.from_covers(m, []), None, {}, {})
    else:
        counts = {a: j_alpha_count(sigma, a) for a in range(K.n) if a != zeta0}
        negative = {a: c for a, c in counts.items() if c < 0}
        if negative:
            raise NegativeJCount(f"blocks {sorted(negative)} get negative join-irreducible counts")
        A = [a for a in sorted(counts) if counts[a] > 0]
        if not A:
            raise InconsistentCounts("a nontrivial skeleton needs join-irreducibles above the atoms")
        for a in A:
            if blockwise_domination(sigma, [a]) == 0:
                raise InconsistentCounts(f"block {a} would hold join-irreducibles above no atom")

        d = {frozenset(c): blockwise_domination(sigma, c) for k in range(len(A) + 1) for c in combinations(A, k)}
        d[INFINITY] = m
        eps = exact_from_strong(strong_from_domination(d, A), A)
        if any(v < 0 for v in eps.values()):
            raise InconsistentCounts("negative exact domination count")
        if sum(v for B, v in eps.items() if B) > m:
            raise InconsistentCounts("more dominated atoms than atoms")

        U = [(a, i) for a in A for i in range(counts[a])]
        edges = []
        atom = 0
        for k in range(1, len(A) + 1):
            for combo in combinations(A, k):
                for _ in range(eps[frozenset(combo)]):
                    edges.extend(((a, i), atom) for a in combo for i in range(counts[a]))
                    atom += 1
        graph = BipartiteGraph.of(U, range(m), edges)
        pos = {u: m + k for k, u in enumerate(U)}
        ji = Poset.from_covers(m + len(U), [(x, pos[u]) for u, x in edges])
        L = downset_lattice(ji)
        report = ReconstructionReport(L, ji, graph, {u: u[0] for u in U}, counts)

    if verify and wds_isomorphic(extract_wds(report.lattice), sigma) is None:
        raise InconsistentCounts("no distributive lattice with join-irreducible length <= 1 has this skeleton")
    return report
