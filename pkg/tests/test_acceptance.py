"""Acceptance criteria, one test each.  A PASS/FAIL line per criterion is
printed (and repeated in the terminal summary)."""
import subprocess
import sys
import time

from conftest import ACCEPTANCE
from latskel.io import format_lattice, read_lattice
from latskel.lattice import are_isomorphic, is_distributive, ji_length, join_irreducibles
from latskel.search import search_ji1_not_h2, search_rank3_counterexample
from latskel.suites import run_suite
from latskel.tolerance import herrmann_rank
from latskel.wds import extract_wds, wds_isomorphic


def record(key, ok, detail):
    ACCEPTANCE[key] = (bool(ok), detail)
    print(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")
    assert ok, detail


def suite_check(key, name, limit):
    r = run_suite(name)
    detail = f"{r.instances} instances, {len(r.failures)} failures, {r.wall_time:.1f}s (limit {limit}s)"
    record(key, r.passed and r.instances > 0 and r.wall_time < limit, detail)
    return r


def test_1_reconstruction_round_trip():
    r = suite_check("1 round trip (|Ji| <= 5, ji length <= 1)", "theorem-c", 120)
    assert r.instances == 37


def test_2_rank_two_uniqueness():
    suite_check("2 rank <= 2 determined by skeleton (|Ji| <= 5)", "theorem-b", 300)


def test_3_modular_rank_two_has_short_ji():
    suite_check("3 modular rank <= 2 => ji length <= 1 (|L| <= 8)", "theorem-a", 600)


def test_4_sharpness_witnesses(tmp_path):
    start = time.perf_counter()
    pair = search_rank3_counterexample(8)
    single = search_ji1_not_h2(8)
    assert pair is not None and single is not None
    paths = [tmp_path / "rank3_a.txt", tmp_path / "rank3_b.txt", tmp_path / "ji1.txt"]
    for path, L in zip(paths, (*pair, single)):
        path.write_text(format_lattice(L), encoding="utf-8")
    A, B, C = (read_lattice(p) for p in paths)
    checks = [
        are_isomorphic(A, B) is None,
        wds_isomorphic(extract_wds(A), extract_wds(B)) is not None,
        herrmann_rank(A) == 3 and herrmann_rank(B) == 3,
        is_distributive(A) and is_distributive(B),
        is_distributive(C) and ji_length(C) <= 1 and herrmann_rank(C) >= 3,
    ]
    detail = (
        f"pair {pair[0].name} / {pair[1].name} ({A.n} elements each, |Ji|={len(join_irreducibles(A))}),"
        f" witness {single.name} ({C.n} elements, rank {herrmann_rank(C)}),"
        f" re-read from disk, {time.perf_counter() - start:.1f}s"
    )
    record("4 rank-3 pair and ji-length-1 rank-3 witness", all(checks), detail)


def test_5_block_count_formula():
    suite_check("5 block count formula (|L| <= 12)", "lemma-31", 60)


def test_6_reuter_identity():
    suite_check("6 cover-count identity k=1,2 (modular, |L| <= 8)", "reuter-k2", 600)


def test_7_bipartite_machinery():
    r = suite_check("7 domination counting on 500 seeded graphs", "lemma-bipartite", 600)
    assert r.instances == 500


def test_8_structural_lemmas():
    a = run_suite("lemma-blocks")
    b = run_suite("length-drop")
    detail = (
        f"blocks: {a.instances} instances, {len(a.failures)} failures;"
        f" length drop: {b.instances} instances, {len(b.failures)} failures"
    )
    record("8 block lemmas and length drop (|L| <= 7 plus |Ji| <= 5)", a.passed and b.passed and a.instances > 0, detail)


def test_9_determinism():
    cmd = [sys.executable, "-m", "latskel.cli", "verify", "--suite", "all"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    same = first.stdout == second.stdout and first.returncode == second.returncode == 0
    detail = f"two full runs, {len(first.stdout)} bytes each, identical={first.stdout == second.stdout}"
    record("9 deterministic full verification report", same and first.stdout, detail)
