"""Seeded property campaigns over generated instances.

Each suite returns a list of per-instance records (plain dicts) in instance
order plus a summary.  Instance ``k`` of a suite draws from
``instance_rng(seed, offset + k)`` so any record can be replayed alone.
"""
from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations

import numpy as np

from .analysis import check_theorem_A, lemma1_bound
from .dual import coarse_dual, dual_complex, fine_dual, read_off_pocset
from .errors import TrackCubeError
from .generate import (drop_parallel, generalized_instance, instance_rng, random_disk,
                       random_pocset, random_two_pattern, random_vertex_map)
from .normalize import normalize
from .pattern import arcs_cross, validate_drawing
from .pocset import validate_pocset
from .regions import PatternComplement
from .resolution import check_resolution, resolve

log = logging.getLogger(__name__)

SUITES = ("duality", "median", "principality", "theorem", "resolution", "normalization")
DEFAULT_COUNTS = {"duality": 200, "median": 500, "principality": 1000, "theorem": 500,
                  "resolution": 300, "normalization": 200}
# disjoint index ranges so suites never share random streams
OFFSETS = {name: 1_000_000 * (i + 1) for i, name in enumerate(SUITES)}


def _map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=8))


# duality

def duality_record(args) -> dict:
    seed, k = args
    rng = instance_rng(seed, OFFSETS["duality"] + k)
    n = int(rng.integers(1, 13))
    P = random_pocset(n, rng, density=float(rng.uniform(0.1, 0.8)))
    X = dual_complex(P)
    same = bool(np.array_equal(read_off_pocset(X), P.less))
    return {"index": k, "pairs": n, "vertices": X.V, "round_trip": same}


def duality_suite(seed: int, count: int = 200, jobs: int = 1) -> dict:
    t0 = time.perf_counter()
    cubes = {n: dual_complex(validate_pocset(n)).V for n in range(1, 11)}
    chains = {}
    for n in range(1, 11):
        X = dual_complex(validate_pocset(n, [(2 * i, 2 * i + 2) for i in range(n - 1)]))
        deg = np.bincount(np.array(X.edge_list()).ravel(), minlength=X.V) if X.edges else np.zeros(1)
        is_path = X.V == n + 1 and len(X.edges) == n and sorted(deg.tolist())[:2] == [1, 1] \
            and max(deg) <= 2
        chains[n] = {"vertices": X.V, "path": bool(is_path)}
    records = _map(duality_record, [(seed, k) for k in range(count)], jobs)
    ok = (all(cubes[n] == 2 ** n for n in cubes) and all(c["path"] for c in chains.values())
          and all(r["round_trip"] for r in records))
    return {"suite": "duality", "pass": ok, "seconds": time.perf_counter() - t0,
            "cube_vertices": cubes, "chains": chains, "records": records,
            "round_trip_failures": sum(not r["round_trip"] for r in records)}


# medians

def _codes(X) -> np.ndarray | None:
    n = X.n
    if n > 63:
        return None
    w = (np.uint64(1) << np.arange(n, dtype=np.uint64)) if n else np.zeros(0, dtype=np.uint64)
    return (X.vertices.astype(np.uint64) * w).sum(axis=1).astype(np.uint64)


def median_failures(X, rng=None, exhaustive_limit: int = 200, samples: int = 1000) -> tuple[int, int]:
    """(triples checked, triples whose majority vote is not a vertex)."""
    codes = _codes(X)
    V = X.V
    if codes is None or V > exhaustive_limit:
        from .dual import median
        from .errors import MedianMissing
        rng = rng or np.random.default_rng(0)
        bad = 0
        for _ in range(samples):
            x, y, z = (int(i) for i in rng.integers(V, size=3))
            try:
                median(X, x, y, z)
            except MedianMissing:
                bad += 1
        return samples, bad
    srt = np.sort(codes)
    bad = 0
    checked = 0
    for i in range(V):
        x = codes[i]
        Y = codes[i:]
        maj = (x & Y[:, None]) | (x & Y[None, :]) | (Y[:, None] & Y[None, :])
        pos = np.searchsorted(srt, maj)
        pos[pos == len(srt)] = 0
        found = srt[pos] == maj
        tri = np.triu(np.ones((len(Y), len(Y)), dtype=bool))
        bad += int((~found & tri).sum())
        checked += int(tri.sum())
    return checked, bad


def median_record(args) -> dict:
    seed, k = args
    rng = instance_rng(seed, OFFSETS["median"] + k)
    inst = random_two_pattern(rng)
    pc = PatternComplement(inst.pattern)
    out = {"index": k, "kind": inst.kind, "tracks": len(inst.pattern.tracks)}
    for name, X in (("fine", fine_dual(pc)), ("coarse", coarse_dual(pc)[0])):
        checked, bad = median_failures(X, rng)
        out[f"{name}_vertices"] = X.V
        out[f"{name}_triples"] = checked
        out[f"{name}_failures"] = bad
        out[f"{name}_exhaustive"] = X.V <= 200
    return out


def median_suite(seed: int, count: int = 500, jobs: int = 1) -> dict:
    t0 = time.perf_counter()
    records = _map(median_record, [(seed, k) for k in range(count)], jobs)
    fails = sum(r["fine_failures"] + r["coarse_failures"] for r in records)
    return {"suite": "median", "pass": fails == 0, "seconds": time.perf_counter() - t0,
            "failures": fails, "records": records,
            "triples": sum(r["fine_triples"] + r["coarse_triples"] for r in records)}


# principality

def multiple_crossings(P) -> int:
    """Number of track pairs that cross in more than one place."""
    D = P.drawing
    seen: dict = {}
    for f, ids in D.arcs_by_face.items():
        for a, b in combinations(ids, 2):
            if arcs_cross(f, D.arcs[a], D.arcs[b]):
                key = tuple(sorted((P.track_of_arc[a], P.track_of_arc[b])))
                seen[key] = seen.get(key, 0) + 1
    return sum(1 for v in seen.values() if v > 1)


def principality_record(args) -> dict:
    seed, k = args
    inst = random_two_pattern(instance_rng(seed, OFFSETS["principality"] + k))
    P = inst.pattern
    pc = PatternComplement(P)
    X = fine_dual(pc)
    n = len(P.tracks)
    principal = {tuple(pc.principal_ultrafilter(r.id)[t] for t in range(n)) for r in pc.regions}
    nonprincipal = sum(tuple(int(b) for b in row) not in principal for row in X.vertices)
    return {"index": k, "kind": inst.kind, "faces": inst.complex.T, "tracks": n,
            "regions": len(pc.regions), "fine_vertices": X.V,
            "distinct_principal": len(principal), "nonprincipal_vertices": nonprincipal,
            "count_equal": X.V == len(pc.regions), "multiply_crossing_pairs": multiple_crossings(P)}


def principality_suite(seed: int, count: int = 1000, jobs: int = 1) -> dict:
    t0 = time.perf_counter()
    records = _map(principality_record, [(seed, k) for k in range(count)], jobs)
    unequal = [r for r in records if not r["count_equal"]]
    return {"suite": "principality", "pass": not unequal, "seconds": time.perf_counter() - t0,
            "count_mismatches": len(unequal),
            "nonprincipal_instances": sum(r["nonprincipal_vertices"] > 0 for r in records),
            "mismatches_without_multiple_crossings":
                sum(r["multiply_crossing_pairs"] == 0 for r in unequal),
            "records": records}


# lemmas and the class bound

def theorem_record(args) -> dict:
    seed, k = args
    idx = OFFSETS["theorem"] + k
    inst = random_two_pattern(instance_rng(seed, idx))
    P = drop_parallel(inst.pattern)
    K = inst.complex
    base = {"index": k, "kind": inst.kind, "faces": K.T, "edges": K.E,
            "tracks_before": len(inst.pattern.tracks), "tracks": len(P.tracks)}
    if not P.tracks:
        base.update(skipped=True)
        return base
    r = check_theorem_A(K, P)
    base.update(skipped=False, classes=r.classes, bound=r.bound, dimension=r.dimension,
                lemma1_max=r.lemma1_max, lemma2_max=r.lemma2_max,
                lemma1_violations=len(r.lemma1_violations),
                lemma1_over_8=int(r.lemma1_max > lemma1_bound(2)),
                lemma2_violations=len(r.lemma2_violations),
                trichotomy_gaps=len(r.trichotomy_gaps),
                interpretation_disagreements=r.lemma1_interpretation_disagreements,
                categories=r.category_counts)
    return base


def theorem_suite(seed: int, count: int = 500, jobs: int = 1) -> dict:
    t0 = time.perf_counter()
    records = [r for r in _map(theorem_record, [(seed, k) for k in range(count)], jobs)]
    used = [r for r in records if not r["skipped"]]
    l1 = max((r["lemma1_max"] for r in used), default=0)
    l2 = max((r["lemma2_max"] for r in used), default=0)
    summary = {
        "instances": len(used),
        "skipped_empty": len(records) - len(used),
        "lemma1_max": l1,
        "lemma1_violations": sum(r["lemma1_violations"] + r["lemma1_over_8"] for r in used),
        "lemma2_max": l2,
        "lemma2_violations": sum(r["lemma2_violations"] for r in used),
        "bound_violations": sum(r["classes"] > r["bound"] for r in used),
        "trichotomy_gaps": sum(r["trichotomy_gaps"] for r in used),
        "interpretation_disagreements": sum(r["interpretation_disagreements"] for r in used),
        "max_classes": max((r["classes"] for r in used), default=0),
    }
    ok = (summary["lemma1_violations"] == 0 and summary["lemma2_violations"] == 0
          and summary["bound_violations"] == 0 and summary["trichotomy_gaps"] == 0)
    return {"suite": "theorem", "pass": ok, "seconds": time.perf_counter() - t0,
            **summary, "records": records}


# resolutions

def resolution_record(args) -> dict:
    seed, k = args
    rng = instance_rng(seed, OFFSETS["resolution"] + k)
    K = random_disk(int(rng.integers(1, 21)), rng)
    P = random_pocset(int(rng.integers(1, 8)), rng, max_width=2)
    X = dual_complex(P)
    f = random_vertex_map(K, X, rng)
    R = resolve(K, X, f)
    rep = check_resolution(R)
    return {"index": k, "faces": K.T, "pairs": P.n, "target_vertices": X.V,
            "tracks": rep["tracks"], "regions": rep["regions"],
            "fine_vertices": rep["fine_vertices"], "dimension_target": rep["dimension_target"],
            "dimension_fine": rep["dimension_fine"],
            "max_pairwise_crossing": rep["max_pairwise_crossing"], **rep["checks"]}


RESOLUTION_CHECKS = ("d_pattern", "edges_to_edges", "minimal_preimage_independent", "dimension_bound")


def resolution_suite(seed: int, count: int = 300, jobs: int = 1) -> dict:
    t0 = time.perf_counter()
    records = _map(resolution_record, [(seed, k) for k in range(count)], jobs)
    fails = {c: sum(not r[c] for r in records) for c in RESOLUTION_CHECKS}
    extra = {c: sum(not r[c] for r in records)
             for c in ("halfspace_map_consistent", "crossing_consistent", "vertex_images",
                       "principal", "regions_match")}
    return {"suite": "resolution", "pass": not any(fails.values()),
            "seconds": time.perf_counter() - t0, "failures": fails,
            "other_failures": extra, "records": records}


# normalization

def normalization_record(args) -> dict:
    seed, k = args
    rng = instance_rng(seed, OFFSETS["normalization"] + k)
    D, base = generalized_instance(rng)
    res = normalize(D)
    drops = [m.crossings_before - m.crossings_after for m in res.moves]
    try:
        validate_drawing(D.complex, res.pattern.drawing.counts, res.pattern.drawing.arcs,
                         allow_empty=True)
        strict = True
    except TrackCubeError:
        strict = False
    expected = (res.initial_crossings - res.final_crossings) // 2
    return {"index": k, "initial": res.initial_crossings, "final": res.final_crossings,
            "moves": len(res.moves), "expected_moves": expected,
            "exact_moves": len(res.moves) * 2 == res.initial_crossings - res.final_crossings,
            "all_drops_two": all(d == 2 for d in drops), "strict": strict,
            "closed_loops": res.closed_loops, "empty": res.empty,
            "arc_crossings_monotone": all(a >= b for a, b in zip(res.arc_crossings, res.arc_crossings[1:])),
            "cliques_monotone": all(a >= b for a, b in zip(res.cliques, res.cliques[1:])),
            "restored_base": sorted(res.pattern.drawing.arcs) == sorted(base.pattern.drawing.arcs)}


def normalization_suite(seed: int, count: int = 200, jobs: int = 1) -> dict:
    t0 = time.perf_counter()
    records = _map(normalization_record, [(seed, k) for k in range(count)], jobs)
    ok = all(r["exact_moves"] and r["all_drops_two"] and r["strict"] for r in records)
    return {"suite": "normalization", "pass": ok, "seconds": time.perf_counter() - t0,
            "failures": sum(not (r["exact_moves"] and r["all_drops_two"] and r["strict"]) for r in records),
            "clique_increases": sum(not r["cliques_monotone"] for r in records),
            "arc_crossing_increases": sum(not r["arc_crossings_monotone"] for r in records),
            "records": records}


RUNNERS = {"duality": duality_suite, "median": median_suite, "principality": principality_suite,
           "theorem": theorem_suite, "resolution": resolution_suite,
           "normalization": normalization_suite}


def run_campaign(seed: int, suites=SUITES, scale: float = 1.0, jobs: int = 1) -> dict:
    out = {"seed": int(seed), "scale": scale, "suites": {}}
    for name in suites:
        count = max(1, int(round(DEFAULT_COUNTS[name] * scale)))
        log.info("running %s on %d instances", name, count)
        out["suites"][name] = RUNNERS[name](seed, count, jobs)
    out["pass"] = all(s["pass"] for s in out["suites"].values())
    return out
