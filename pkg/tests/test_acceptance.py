"""Acceptance criteria 1-16, driven through the command line.

Every check shells out to ``python -m quiverhom`` with JSON output and a
fixed seed.  Each test prints (and records) one pass/fail line; the
summary is repeated at the end of the pytest run.  Running this file
directly prints the same lines without pytest.
"""

import contextlib
import functools
import json
import subprocess
import sys

import pytest

from quiverhom.checks import FIXTURES

from acceptance_log import LINES

SEED = 7

CHECK_ALL = ("check", "--property", "all", "--seed", str(SEED), str(FIXTURES))
COMMANDS = {
    "check": CHECK_ALL,
    "analyze-finset": ("analyze", str(FIXTURES / "two_point_line.json")),
    "grade-cycle": ("grade", str(FIXTURES / "oriented_3cycle.json")),
    "grade-diamond": ("grade", str(FIXTURES / "diamond.json")),
    "limit-line": ("limit", str(FIXTURES / "hexagon_line.json")),
    "homology-line": ("homology", str(FIXTURES / "hexagon_line.json"), "--max-degree", "2"),
    "limit-doubling": ("limit", str(FIXTURES / "doubling_loop.json")),
    "relative-circle": ("relative", str(FIXTURES / "circle_line.json"), "--base-vertex", "0"),
    "excision-arcs": ("excision", str(FIXTURES / "hexagon_arcs.json")),
    "at-loop": ("at", str(FIXTURES / "hexagon_loop.json")),
    "sigma-loop": ("sigma", str(FIXTURES / "hexagon_loop.json"), "--max-degree", "1"),
}


def cli(*args):
    p = subprocess.run([sys.executable, "-m", "quiverhom", *args, "--format", "json"],
                       capture_output=True)
    return p.returncode, p.stdout


@functools.lru_cache(maxsize=None)
def first_run():
    return {k: cli(*argv) for k, argv in COMMANDS.items()}


def output(key):
    code, out = first_run()[key]
    assert code == 0, f"{key} exited with {code}"
    return json.loads(out)


def suite(name):
    for s in output("check")["suites"]:
        if s["name"] == name:
            return s
    raise KeyError(name)


def all_passed(name, trials):
    s = suite(name)
    assert s["ok"] and not s["failures"], s["failures"]
    assert s["trials"] == s["passed"] == trials, (s["trials"], s["passed"])
    return s


@contextlib.contextmanager
def criterion(n, text):
    try:
        yield
    except BaseException:
        LINES[n] = f"criterion {n:2d}: FAIL  {text}"
        print(LINES[n])
        raise
    LINES[n] = f"criterion {n:2d}: pass  {text}"
    print(LINES[n])


def test_c01_system_round_trip():
    with criterion(1, "set representations <-> path-semigroup systems, 200 round trips"):
        all_passed("system-roundtrip", 200)
        a = output("analyze-finset")
        assert a["roundtrip"] and a["system_size"] == 5


def test_c02_empty_end_exactness():
    with criterion(2, "related exactness at empty ends = mono / epi, 200 morphisms"):
        s = all_passed("empty-end-exactness", 200)
        # both outcomes of each equivalence were exercised
        assert all(v > 0 for v in s["details"]["branches"].values())


def test_c03_grading():
    with criterion(3, "arrow positive function exists iff all cycles symmetric, 200 quivers"):
        s = all_passed("grading-criterion", 200)
        assert 0 < s["details"]["graded"] < 200
        code, out = first_run()["grade-cycle"]
        assert code == 0
        g = json.loads(out)
        assert g["arrow_function"] is None and g["nonsymmetric_cycle"] == ["a", "b", "c"]
        assert output("grade-diamond")["arrow_function"] == {"1": 0, "2": 1, "3": 0, "4": 1}


def test_c04_point_rep():
    with criterion(4, "point representation: H0 = Z, H1 = H2 = 0"):
        all_passed("point-homology", 50)


def test_c05_line_of_isomorphisms():
    with criterion(5, "line of isomorphic hexagons: H0 = H1 = Z, projection an isomorphism"):
        all_passed("line-of-isomorphisms", 20)
        h = output("homology-line")["homology"]
        assert [(g["free_rank"], g["torsion"]) for g in h] == [(1, []), (1, []), (0, [])]
        lim = output("limit-line")
        assert lim["complex"]["ranks"] == [6, 6]
        assert lim["projection"]["isomorphism"]


def test_c06_component_products():
    with criterion(6, "homology of disjoint unions is the product; constant circle gives Z^m"):
        s = all_passed("component-product-homology", 103)
        cc = s["details"]["constant_circle"]
        for m in ("1", "2", "3"):
            assert cc[m] == [{"free_rank": int(m), "torsion": []}] * 2


def test_c07_cycle_vanishing():
    with criterion(7, "oriented cycles with doubling round trip: zero limit, H1 = 0"):
        s = all_passed("cycle-fixed-vanishing", 6)
        inst = s["details"]["instances"]
        for m in (1, 2, 3):
            assert inst[f"doubling-{m}"] == {"H1": "0", "ranks": [0, 0]}
            assert inst[f"identity-{m}"]["H1"] == "Z"
        lim = output("limit-doubling")
        assert lim["complex"]["ranks"] == [0] and lim["round_trip_certified"]


def test_c08_antipodal():
    with criterion(8, "antipodal hexagon: Z/2 on odd cycles, 0 on the 2-cycle, Z/2 for the square"):
        s = all_passed("antipodal-h0", 4)
        assert s["details"]["h0"] == {"hexagon_loop.json": "Z/2", "hexagon_2cycle.json": "0",
                                      "hexagon_3cycle.json": "Z/2", "square_loop.json": "Z/2"}


def test_c09_rho():
    with criterion(9, "rho well defined and natural, 100 morphisms"):
        all_passed("rho-naturality", 100)


def test_c10_homotopy():
    with criterion(10, "homotopies accepted with equal H_n maps; 50 perturbations rejected"):
        s = all_passed("homotopy-invariance", 100)
        assert s["details"]["rejected_perturbations"] == 50


def test_c11_basepoints():
    with criterion(11, "relative homology vs basepointed homology over A2"):
        s = all_passed("basepoint-relative", 3)
        inst = s["details"]["instances"]
        assert inst["circle"] == {"absolute": ["Z", "Z", "0"], "relative": ["0", "Z", "0"]}
        assert inst["sphere"] == {"absolute": ["Z", "0", "Z"], "relative": ["0", "0", "Z"]}
        r = output("relative-circle")
        assert r["higher_degrees_agree"] and r["degree0_ok"]
        assert r["absolute"][0]["free_rank"] == 1 + r["relative"][0]["free_rank"]


def test_c12_excision_and_left_exactness():
    with criterion(12, "covering pairs give H0 = H1 = 0; limits left exact on 100 sequences"):
        s = all_passed("excision", 51)
        assert s["details"]["swapped_arcs"] == {"H0": "0", "H1": "0", "covered": True}
        all_passed("left-exactness", 100)
        e = output("excision-arcs")
        assert e["covered"] and e["vanishes"]
        assert e["H0"]["free_rank"] == e["H1"]["free_rank"] == 0


def test_c13_at_components():
    with criterion(13, "attachment space components = quiver components, 100 reps"):
        all_passed("at-component-count", 100)
        a = output("at-loop")
        assert a["components"] == a["quiver_components"] == 1


def test_c14_at_split():
    with criterion(14, "vertex-disjoint splits embed and partition the attachment space, 50 splits"):
        all_passed("at-split", 50)


def test_c15_sigma():
    with criterion(15, "sigma base independent, a chain map, natural; H0 = x2 on the odd loop"):
        s = all_passed("sigma-natural", 101)
        assert s["details"]["hexagon_loop_h0"] == [[2]]
        sg = output("sigma-loop")
        assert all(c["base_independent"] and c["chain_map"] for c in sg["components"])
        assert sg["homology"][0]["matrix"] == {"data": [2], "shape": [1, 1]}


def test_c16_determinism():
    with criterion(16, "second full CLI run is byte-identical"):
        first = first_run()
        for key, argv in COMMANDS.items():
            assert cli(*argv) == first[key], key


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
