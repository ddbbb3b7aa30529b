"""Acceptance criteria, run at full corpus sizes.

Each test records one PASS/FAIL line which is printed in the terminal
summary.  Assertions are made at the stated tolerance; nothing is relaxed.
"""
import json
import logging
import time

import pytest

from conftest import ACCEPTANCE, GOLDEN
from resolution_cases import build, snapshot
from trackcube.analysis import lemma1_bound, theorem_bound
from trackcube.campaign import (DEFAULT_COUNTS, duality_suite, median_suite, normalization_suite,
                                principality_suite, resolution_suite, theorem_suite)
from trackcube.complex import complex_from_faces

SEED = 1


def record(name, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else "")
    ACCEPTANCE.append(line)
    print(line)
    return ok


@pytest.fixture(autouse=True)
def _quiet():
    logging.disable(logging.WARNING)
    yield
    logging.disable(logging.NOTSET)


@pytest.fixture(scope="module")
def theorem_corpus():
    logging.disable(logging.WARNING)
    try:
        return theorem_suite(SEED, DEFAULT_COUNTS["theorem"])
    finally:
        logging.disable(logging.NOTSET)


def test_constants():
    K1 = complex_from_faces([(1, 2, 3)])
    K2 = complex_from_faces([(1, 2, 3), (2, 3, 4)])
    got = (lemma1_bound(2), theorem_bound(K1), theorem_bound(K2))
    ok = got == (8, 102, 202)
    record("constants", ok, f"C(2)={got[0]}, K1={got[1]}, K2={got[2]}")
    assert ok


def test_duality():
    r = duality_suite(SEED, DEFAULT_COUNTS["duality"])
    cubes = all(v == 2 ** n for n, v in r["cube_vertices"].items())
    chains = all(c["path"] and c["vertices"] == n + 1 for n, c in r["chains"].items())
    ok = cubes and chains and r["round_trip_failures"] == 0 and r["seconds"] < 10
    record("duality", ok, f"{len(r['records'])} round trips, "
           f"{r['round_trip_failures']} failures, {r['seconds']:.1f}s")
    assert cubes and chains
    assert r["round_trip_failures"] == 0
    assert r["seconds"] < 10


def test_median():
    r = median_suite(SEED, DEFAULT_COUNTS["median"])
    exhaustive = sum(x["fine_exhaustive"] + x["coarse_exhaustive"] for x in r["records"])
    ok = r["failures"] == 0 and r["seconds"] < 60
    record("median", ok, f"{r['triples']} triples, {exhaustive} duals searched exhaustively, "
           f"{r['failures']} failures, {r['seconds']:.1f}s")
    assert r["failures"] == 0
    assert r["seconds"] < 60


def test_principality():
    r = principality_suite(SEED, DEFAULT_COUNTS["principality"])
    ok = r["count_mismatches"] == 0 and r["seconds"] < 300
    record("principality", ok,
           f"{r['count_mismatches']} of {len(r['records'])} with #fine vertices != #regions "
           f"({r['mismatches_without_multiple_crossings']} without a multiply crossing pair), "
           f"{r['nonprincipal_instances']} with a nonprincipal vertex, {r['seconds']:.1f}s")
    assert r["seconds"] < 300
    assert r["count_mismatches"] == 0


def test_lemma1(theorem_corpus):
    r = theorem_corpus
    ok = r["lemma1_violations"] == 0
    record("lemma1", ok, f"max count {r['lemma1_max']} <= {lemma1_bound(2)} over "
           f"{r['instances']} patterns, {r['lemma1_violations']} violations")
    assert r["lemma1_max"] <= lemma1_bound(2)
    assert r["lemma1_violations"] == 0


def test_lemma2(theorem_corpus):
    r = theorem_corpus
    ok = r["lemma2_violations"] == 0 and r["lemma2_max"] <= 4
    record("lemma2", ok, f"max count {r['lemma2_max']} <= 4, {r['lemma2_violations']} violations")
    assert ok


def test_theorem(theorem_corpus):
    r = theorem_corpus
    ok = r["bound_violations"] == 0 and r["trichotomy_gaps"] == 0
    record("theorem", ok, f"{r['bound_violations']} bound violations, "
           f"{r['trichotomy_gaps']} trichotomy gaps, max classes {r['max_classes']}, "
           f"{r['seconds']:.1f}s for the corpus")
    assert ok


def test_resolution():
    r = resolution_suite(SEED, DEFAULT_COUNTS["resolution"])
    ok = r["pass"]
    record("resolution", ok, ", ".join(f"{k} {v}" for k, v in r["failures"].items())
           + " failures")
    assert ok


def test_normalization():
    r = normalization_suite(SEED, DEFAULT_COUNTS["normalization"])
    ok = r["pass"]
    record("normalization", ok, f"{len(r['records'])} drawings, {r['failures']} failures")
    assert ok


def test_worked_fixtures():
    t0 = time.perf_counter()
    sq, srep = build("square")
    ne, nrep = build("nested")
    facts = {
        "square fine vertices": sq.fine.V == 4,
        "square crossing hyperplanes": len(sq.pattern.crossing_pairs) == 1 and sq.fine.n == 2,
        "square parallelism classes": len(sq.complement.parallelism_classes) == 2,
        "nested path": ne.fine.V == 3 and len(ne.fine.edges) == 2,
        "nested parallelism classes": len(ne.complement.parallelism_classes) == 1,
    }
    golden = {name: snapshot(name) == json.loads((GOLDEN / f"{name}_pullback.json").read_text())
              for name in ("square", "nested")}
    bad = [k for k, v in facts.items() if not v] + [f"{k} golden" for k, v in golden.items() if not v]
    ok = not bad
    record("worked fixtures", ok,
           ("all facts and golden files match" if ok else "mismatched: " + "; ".join(bad))
           + f" (square classes = {len(sq.complement.parallelism_classes)}), "
           f"{time.perf_counter() - t0:.2f}s")
    assert all(golden.values())
    assert ok
