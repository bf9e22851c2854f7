import pytest

from latskel.errors import UnknownSuite
from latskel.io import parse_lattice
from latskel.suites import SUITES, Bounds, _run_per_instance, reports_to_json, run_suite
from latskel.lattice import chain


@pytest.mark.parametrize("name", SUITES)
def test_small_bounds_pass(name):
    r = run_suite(name, Bounds(max_ji=3, max_size=5, graphs=30, seed=1))
    assert r.passed, r.to_text()
    assert r.instances > 0


def test_zero_bounds_give_no_instances():
    assert run_suite("theorem-c", Bounds(max_ji=0)).instances == 0
    assert run_suite("theorem-a", Bounds(max_size=1)).instances == 0


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nope")


def test_failures_carry_replayable_witnesses():
    def always_fails(L):
        return ["deliberate"]

    r = _run_per_instance("fake", Bounds(), [chain(3)], always_fails, jobs=1)
    assert not r.passed and r.instances == 1
    f = r.failures[0]
    assert f.message == "deliberate"
    assert parse_lattice(f.witness).n == 3
    assert "FAILED" in r.to_text() and "FAIL" in r.to_text().splitlines()[0]


def test_parallel_matches_serial():
    b = Bounds(max_ji=4, max_size=6)
    serial = run_suite("lemma-blocks", b, jobs=1)
    parallel = run_suite("lemma-blocks", b, jobs=2)
    assert serial.to_text() == parallel.to_text()


def test_reports_json_excludes_time():
    r = run_suite("length-drop", Bounds(max_ji=2, max_size=3))
    assert "wall_time" not in reports_to_json([r])
    assert "wall_time" in reports_to_json([r], timing=True)
