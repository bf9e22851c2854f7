"""Exhaustive verification suites over the enumerated universes.

Each suite streams instances, checks them independently and collects
failures together with a replayable witness in the lattice text format.
"""
from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import chain, combinations
from typing import Callable, Iterable, Iterator

from .bipartite import (
    BipartiteGraph,
    complete_isomorphism,
    domination_table,
    exact_domination,
    exact_from_strong,
    is_graph_isomorphism,
    preserves_domination,
    strong_domination,
    strong_from_domination,
)
from .enumerate import iter_distributive, lattices_up_to
from .errors import LatskelError, UnknownSuite
from .io import format_lattice
from .lattice import (
    FiniteLattice,
    are_isomorphic,
    atoms,
    is_distributive,
    is_modular,
    ji_length,
    join_irreducibles,
    length,
    upper_ji,
)
from .reconstruct import reconstruct
from .search import WdsClasses
from .tolerance import (
    block_intersection,
    is_glued,
    is_h_irreducible,
    skeleton,
)
from .wds import (
    dominated_atoms,
    extended_weight,
    extract_wds,
    j_alpha_count,
    j_alpha_set,
    reuter_sides,
)


@dataclass(frozen=True)
class Bounds:
    max_ji: int | None = None
    max_size: int | None = None
    graphs: int = 500
    seed: int = 0


@dataclass
class Failure:
    instance: str
    message: str
    witness: str = ""


@dataclass
class SuiteReport:
    suite: str
    instances: int = 0
    failures: list[Failure] = field(default_factory=list)
    wall_time: float = 0.0
    bounds: Bounds = field(default_factory=Bounds)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_text(self, timing: bool = False) -> str:
        status = "PASS" if self.passed else "FAIL"
        b = self.bounds
        line = (
            f"suite {self.suite}: {status} instances={self.instances} failures={len(self.failures)}"
            f" max_ji={b.max_ji} max_size={b.max_size}"
        )
        if self.suite == "lemma-bipartite":
            line += f" graphs={b.graphs} seed={b.seed}"
        if timing:
            line += f" time={self.wall_time:.2f}s"
        lines = [line]
        for f in self.failures:
            lines.append(f"  FAILED {f.instance}: {f.message}")
            lines += ["    " + w for w in f.witness.splitlines()]
        return "\n".join(lines)

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "suite": self.suite,
            "passed": self.passed,
            "instances": self.instances,
            "bounds": self.bounds.__dict__,
            "failures": [f.__dict__ for f in self.failures],
        }
        if timing:
            d["wall_time"] = self.wall_time
        return d


# --- universes -------------------------------------------------------------


def _distributive(b: Bounds) -> Iterator[FiniteLattice]:
    if b.max_ji is None or b.max_ji < 1:
        return iter(())
    return iter_distributive(b.max_ji, min_ji=1)


def _small_lattices(b: Bounds) -> Iterator[FiniteLattice]:
    if b.max_size is None or b.max_size < 2:
        return iter(())
    return (L for L in lattices_up_to(b.max_size) if L.n >= 2)


def _both(b: Bounds) -> Iterator[FiniteLattice]:
    return chain(_small_lattices(b), _distributive(b))


# --- per-instance checks ---------------------------------------------------
# Each returns a list of failure messages (empty when the instance passes).


def check_theorem_c(L: FiniteLattice) -> list[str]:
    rebuilt = reconstruct(extract_wds(L)).lattice
    if are_isomorphic(rebuilt, L) is None:
        return [f"reconstruction has {rebuilt.n} elements and is not isomorphic to the input"]
    return []


def check_theorem_a(L: FiniteLattice) -> list[str]:
    if is_modular(L) and is_h_irreducible(L, 2) and ji_length(L) > 1:
        return [f"modular, rank <= 2, but join-irreducible length {ji_length(L)}"]
    return []


def check_lemma_31(L: FiniteLattice) -> list[str]:
    sk = skeleton(L)
    s = extract_wds(L, sk)
    out = []
    for a in range(sk.skeleton.n):
        formula, direct = j_alpha_count(s, a), len(j_alpha_set(L, sk, a, modular=True))
        if formula != direct:
            out.append(f"block {a}: formula {formula} != |J| {direct}")
    return out


def check_reuter(L: FiniteLattice) -> list[str]:
    if not is_modular(L):
        return []
    sk = skeleton(L)
    out = []
    for a in range(sk.skeleton.n):
        for k in (1, 2):
            lhs, rhs = reuter_sides(L, sk, a, k)
            if lhs != rhs:
                out.append(f"block {a}, k={k}: {lhs} != {rhs}")
    return out


def check_length_drop(L: FiniteLattice) -> list[str]:
    S = skeleton(L).skeleton
    if L.n > 1 and not length(S) < length(L):
        return [f"skeleton length {length(S)} not below {length(L)}"]
    return []


def check_blocks(L: FiniteLattice) -> list[str]:
    out: list[str] = []
    sk = skeleton(L)
    K, bl = sk.skeleton, sk.blocks
    J, M, leq = L.join, L.meet, L.leq

    if not is_glued(sk.tolerance):
        out.append("skeleton tolerance is not glued")
    if L.n <= 32:
        other = skeleton(L, "intervals")
        if [(b.lo, b.hi) for b in other.blocks] != [(b.lo, b.hi) for b in bl]:
            out.append("pair-closure and interval-closure blocks differ")

    for a in range(K.n):
        for b in range(K.n):
            ab_j, ab_m = bl[K.join[a][b]], bl[K.meet[a][b]]
            A, B = bl[a], bl[b]
            if J[A.lo][B.lo] != ab_j.lo:
                out.append(f"0 of join({a},{b}) is not the join of the 0s")
            if M[A.hi][B.hi] != ab_m.hi:
                out.append(f"1 of meet({a},{b}) is not the meet of the 1s")
            if not leq(J[A.hi][B.hi], ab_j.hi):
                out.append(f"join of 1s exceeds 1 of join({a},{b})")
            if not leq(ab_m.lo, M[A.lo][B.lo]):
                out.append(f"meet of 0s below 0 of meet({a},{b})")
            if not (K.leq(a, b) == leq(A.lo, B.lo) == leq(A.hi, B.hi)):
                out.append(f"block order disagrees with endpoint order at ({a},{b})")

    for a, b in K.covers:
        if block_intersection(L, bl[a], bl[b]) is None:
            out.append(f"covering blocks {a} < {b} are disjoint")

    skk = skeleton(K)
    for a in range(K.n):
        for b in range(K.n):
            if skk.tolerance.rel[a, b] and block_intersection(L, bl[a], bl[b]) is None:
                out.append(f"blocks {a}, {b} related in the skeleton's tolerance but disjoint")

    for end in ("lo", "hi"):
        pts = [getattr(x, end) for x in bl]
        if len(set(pts)) != K.n or are_isomorphic(L.poset.induced(pts), K) is None:
            out.append(f"block {end} endpoints are not order-isomorphic to the skeleton")

    if L.n > 1 and not length(K) < length(L):
        out.append("skeleton is not shorter than the lattice")

    if is_modular(L):
        out += _modular_block_lemmas(L, sk)
        if is_distributive(L) and ji_length(L) == 1:
            out += _dominated_set_lemma(L, sk)
    return out


def _modular_block_lemmas(L, sk) -> list[str]:
    out = []
    K, z = sk.skeleton, sk.zeta0
    js = [j_alpha_set(L, sk, a, modular=True) for a in range(K.n)]
    ji = join_irreducibles(L)
    if frozenset().union(*js) != ji or sum(map(len, js)) != len(ji):
        out.append("join-irreducibles are not partitioned by the blocks")
    upper = frozenset().union(*(js[a] for a in range(K.n) if a != z))
    if upper != upper_ji(L):
        out.append("non-atom join-irreducibles are not the upper blocks' share")
    block_atoms = frozenset(L.poset.upper_covers[L.bottom]) & sk.blocks[z].members
    if not (atoms(L) == js[z] == block_atoms):
        out.append("atoms differ from the least block's join-irreducibles")
    z0 = L.join_all(atoms(L))
    if (sk.blocks[z].lo, sk.blocks[z].hi) != (L.bottom, z0):
        out.append("least block is not [0, join of atoms]")
    theta2 = skeleton(K).tolerance.rel
    for zeta in range(K.n):
        for a in range(K.n):
            for b in range(a + 1, K.n):
                if len({a, b, zeta}) < 3 or not (K.poset.lt(zeta, a) and K.poset.lt(zeta, b)):
                    continue
                trio = (a, b, zeta)
                if not all(theta2[x, y] for x in trio for y in trio):
                    continue
                for x in js[a]:
                    for y in js[b]:
                        if L.poset.comparable(x, y):
                            out.append(f"J of blocks {a}, {b} over {zeta}: {x} and {y} comparable")
    return out


def _dominated_set_lemma(L, sk) -> list[str]:
    out = []
    K, z = sk.skeleton, sk.zeta0
    s = extract_wds(L, sk)
    live = [a for a in range(K.n) if a != z and j_alpha_set(L, sk, a)]
    dom = {a: dominated_atoms(L, sk, a) for a in live}
    for a in live:
        if not dom[a]:
            out.append(f"block {a} dominates no atom")
    for a in live:
        for b in live:
            if K.leq(a, b) != (dom[a] <= dom[b]):
                out.append(f"order of blocks {a}, {b} not mirrored by dominated atoms")
    for k in range(1, len(live) + 1):
        for combo in combinations(live, k):
            united = frozenset().union(*(dom[a] for a in combo))
            top = K.join_all(combo)
            if len(united) != extended_weight(s, s.eta0[z], s.eta0[top]):
                out.append(f"atoms below blocks {combo} miscounted")
    return out


def _random_graph(rng: random.Random) -> BipartiteGraph:
    nu, nx = rng.randint(1, 6), rng.randint(1, 8)
    p = rng.random()
    U = [f"u{i}" for i in range(nu)]
    X = [f"x{i}" for i in range(nx)]
    E = [(u, x) for u in U for x in X if rng.random() < p]
    return BipartiteGraph.of(U, X, E)


def _relabel(G: BipartiteGraph, rng: random.Random) -> tuple[BipartiteGraph, dict, dict]:
    U2 = [f"v{i}" for i in range(len(G.U))]
    X2 = [f"y{i}" for i in range(len(G.X))]
    rng.shuffle(U2)
    rng.shuffle(X2)
    phi, xi = dict(zip(G.U, U2)), dict(zip(G.X, X2))
    G2 = BipartiteGraph.of(sorted(U2), sorted(X2), [(phi[u], xi[x]) for u, x in G.E])
    return G2, phi, xi


def check_graph(G: BipartiteGraph, rng: random.Random) -> list[str]:
    out = []
    subsets = G.subsets()
    sigma = strong_from_domination(domination_table(G), G.U)
    if any(sigma[V] != strong_domination(G, V) for V in subsets):
        out.append("strong domination recovered from domination is wrong")
    eps = exact_from_strong(sigma, G.U)
    if any(eps[V] != exact_domination(G, V) for V in subsets):
        out.append("exact domination recovered from strong domination is wrong")
    if sum(eps.values()) != len(G.X):
        out.append("exact domination classes do not partition the lower vertices")

    G2, phi, _ = _relabel(G, rng)
    found = complete_isomorphism(G, G2, phi)
    if found is None or not is_graph_isomorphism(G, G2, *found):
        out.append("induced bijection of a relabelled copy was not completed")
    # arbitrary bijections onto the copy and onto a random graph
    for target in (G2, _random_graph(rng)):
        if len(target.U) != len(G.U):
            continue
        image = list(target.U)
        rng.shuffle(image)
        psi = dict(zip(G.U, image))
        result = complete_isomorphism(G, target, psi)
        if preserves_domination(G, target, psi) != (result is not None):
            out.append("acceptance of a bijection does not match domination preservation")
        elif result is not None and not is_graph_isomorphism(G, target, *result):
            out.append("accepted bijection completed to a non-isomorphism")
    return out


# --- driver ----------------------------------------------------------------


def _run_per_instance(
    name: str,
    bounds: Bounds,
    universe: Iterable[FiniteLattice],
    check: Callable[[FiniteLattice], list[str]],
    jobs: int,
) -> SuiteReport:
    report = SuiteReport(name, bounds=bounds)
    items = list(universe) if jobs > 1 else universe
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_guarded, [check] * len(items), items, chunksize=8))
        pairs = zip(items, results)
    else:
        pairs = ((L, _guarded(check, L)) for L in items)
    for L, msgs in pairs:
        report.instances += 1
        for msg in msgs:
            report.failures.append(Failure(L.name or f"n={L.n}", msg, format_lattice(L)))
    return report


def _guarded(check, L) -> list[str]:
    try:
        return check(L)
    except LatskelError as exc:
        return [f"{exc.name}: {exc}"]


def _theorem_b(bounds: Bounds) -> SuiteReport:
    report = SuiteReport("theorem-b", bounds=bounds)
    groups = WdsClasses()
    h2: dict[int, bool] = {}
    for L in _distributive(bounds):
        report.instances += 1
        h2[id(L)] = is_h_irreducible(L, 2)
        groups.add(L)
        if h2[id(L)]:
            for msg in _guarded(check_theorem_c, L):
                report.failures.append(Failure(L.name, msg, format_lattice(L)))
    for cls in groups.classes():
        if len(cls) > 1 and any(h2[id(L)] for L in cls):
            for L1, L2 in combinations(cls, 2):
                if are_isomorphic(L1, L2) is None:
                    report.failures.append(
                        Failure(
                            f"{L1.name} / {L2.name}",
                            "isomorphic skeletons, non-isomorphic lattices, one of rank <= 2",
                            format_lattice(L1) + format_lattice(L2),
                        )
                    )
    return report


def _lemma_bipartite(bounds: Bounds) -> SuiteReport:
    report = SuiteReport("lemma-bipartite", bounds=bounds)
    rng = random.Random(bounds.seed)
    for k in range(bounds.graphs):
        G = _random_graph(rng)
        report.instances += 1
        for msg in check_graph(G, rng):
            edges = " ".join(f"{u}-{x}" for u, x in sorted(G.E))
            report.failures.append(Failure(f"graph#{k}", msg, f"U={list(G.U)} X={list(G.X)} E={edges}"))
    return report


DEFAULTS = {
    "theorem-c": Bounds(max_ji=5),
    "theorem-b": Bounds(max_ji=5),
    "theorem-a": Bounds(max_size=8),
    "lemma-31": Bounds(max_size=12),
    "lemma-blocks": Bounds(max_ji=5, max_size=7),
    "lemma-bipartite": Bounds(graphs=500, seed=0),
    "reuter-k2": Bounds(max_size=8),
    "length-drop": Bounds(max_ji=5, max_size=7),
}
SUITES = tuple(DEFAULTS)


def default_bounds(name: str, **overrides) -> Bounds:
    if name not in DEFAULTS:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    given = {k: v for k, v in overrides.items() if v is not None}
    return replace(DEFAULTS[name], **given)


def run_suite(name: str, bounds: Bounds | None = None, jobs: int = 1) -> SuiteReport:
    if name not in DEFAULTS:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    b = bounds if bounds is not None else DEFAULTS[name]
    start = time.perf_counter()
    if name == "theorem-c":
        report = _run_per_instance(name, b, (L for L in _distributive(b) if ji_length(L) <= 1), check_theorem_c, jobs)
    elif name == "theorem-b":
        report = _theorem_b(b)
    elif name == "theorem-a":
        report = _run_per_instance(name, b, _small_lattices(b), check_theorem_a, jobs)
    elif name == "lemma-31":
        universe = iter_distributive(None, b.max_size, min_ji=1) if b.max_size and b.max_size >= 2 else iter(())
        report = _run_per_instance(name, b, universe, check_lemma_31, jobs)
    elif name == "lemma-blocks":
        report = _run_per_instance(name, b, _both(b), check_blocks, jobs)
    elif name == "lemma-bipartite":
        report = _lemma_bipartite(b)
    elif name == "reuter-k2":
        report = _run_per_instance(name, b, _small_lattices(b), check_reuter, jobs)
    else:
        report = _run_per_instance(name, b, _both(b), check_length_drop, jobs)
    report.wall_time = time.perf_counter() - start
    return report


def run_all(overrides: dict | None = None, jobs: int = 1) -> list[SuiteReport]:
    overrides = overrides or {}
    return [run_suite(n, default_bounds(n, **overrides), jobs) for n in SUITES]


def reports_to_json(reports: list[SuiteReport], timing: bool = False) -> str:
    return json.dumps([r.to_dict(timing) for r in reports], indent=2, sort_keys=True) + "\n"
