"""Command line entry point.

Exit codes: 0 when every check passes, 1 when some check fails, 2 on
malformed or inadmissible input.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from . import io
from .analysis import check_theorem_A
from .cliques import DEFAULT_BUDGET
from .complex import validate_complex
from .dual import DEFAULT_CAP, coarse_dual, dimension, dual_complex, fine_dual
from .errors import (AxiomViolation, CapExceeded, DanglingEdge, DegenerateSimplex,
                     DuplicateSimplex, InputError, InstanceTooLarge, MissingSimplex,
                     NonEmptyRequired, Not2Pattern, NotATrack, ParityViolation, PocsetError,
                     PreconditionH1, TrackCubeError)
from .generate import (generalized_instance, direct_pattern, instance_rng, pullback_instance,
                       random_disk, random_pocset)
from .normalize import normalize
from .pattern import max_pairwise_crossing
from .regions import PatternComplement
from .resolution import check_resolution, parse_vertex_map, resolve

log = logging.getLogger("trackcube")

# failures of admissibility rather than of a checked property
INPUT_ERRORS = (InputError, MissingSimplex, DuplicateSimplex, DegenerateSimplex, DanglingEdge,
                AxiomViolation, NonEmptyRequired, NotATrack, PocsetError, PreconditionH1,
                Not2Pattern, ParityViolation, CapExceeded, InstanceTooLarge)


def _region_json(r):
    return {"id": r.id, "vertices": sorted(r.vertices)}


def _report(args, sources, **body) -> dict:
    rep = {"command": args.command, "argv": sys.argv[1:] if args.echo is None else args.echo,
           "inputs": sources}
    rep.update(body)
    return rep


def _digests(paths, parts) -> list[dict]:
    return [{"path": str(p), "sha256": io.digest(io.read_json(p))} for p in paths]


def _status(ok) -> str:
    return "pass" if ok else "fail"


def _out(args) -> Path | None:
    if args.out is None:
        return None
    p = Path(args.out)
    p.mkdir(parents=True, exist_ok=True)
    return p


def _finish(args, report, ok=True) -> int:
    out = _out(args)
    text = json.dumps(report, indent=2)
    if out is not None:
        (out / "report.json").write_text(text + "\n", encoding="utf-8")
    print(text)
    return 0 if ok else 1


def _complex_and_pattern(parts):
    K = io.load_complex(parts.get("complex"))
    if "drawing" not in parts:
        raise InputError("no pattern given")
    return K, io.pattern_from_json(K, parts["drawing"])


# subcommands

def cmd_validate(args) -> int:
    parts = io.load_bundle(args.paths)
    body: dict = {}
    if "complex" in parts:
        K = validate_complex(parts["complex"])
        body["complex"] = {"V": K.V, "E": K.E, "T": K.T, "pure": K.is_pure,
                           "h1_z2": K.h1_z2, "boundary_edges": len(K.boundary_edges),
                           "status": "pass"}
        if "drawing" in parts:
            gen = bool(parts["drawing"].get("generalized", False))
            D = io.drawing_from_json(K, parts["drawing"], allow_empty=True)
            entry = {"arcs": len(D.arcs), "crossing_points": D.total_crossings,
                     "generalized": gen, "status": "pass"}
            if not gen:
                P = io.pattern_from_json(K, parts["drawing"])
                entry["tracks"] = len(P.tracks)
                entry["max_pairwise_crossing"] = max_pairwise_crossing(P, args.budget)
            body["drawing"] = entry
    elif "drawing" in parts:
        raise InputError("a drawing needs a complex")
    if "pocset" in parts:
        P = io.load_pocset(parts["pocset"])
        body["pocset"] = {"pairs": P.n, "relations": len(P.relations()), "status": "pass"}
    if not body:
        raise InputError("nothing recognisable in the given files")
    return _finish(args, _report(args, _digests(args.paths, parts), **body))


def _export_dual(args, X, stem: str, out) -> dict:
    if out is None:
        return {}
    if args.format == "dot":
        path = out / f"{stem}.dot"
        path.write_text(X.to_dot(stem), encoding="utf-8")
    else:
        path = out / f"{stem}.json"
        io.write_json(path, X.to_json())
    files = {stem: str(path)}
    if not args.no_plots:
        from .plotting import plot_dual
        files[f"{stem}_figure"] = str(plot_dual(X, out / f"{stem}.png"))
    return files


def _dual_summary(X, budget) -> dict:
    return {"hyperplanes": X.n, "vertices": X.V, "edges": len(X.edges),
            "dimension": dimension(X, budget)}


def cmd_dual(args) -> int:
    parts = io.load_bundle(args.paths)
    out = _out(args)
    body: dict = {"duals": {}, "files": {}}
    if "pocset" in parts:
        X = dual_complex(io.load_pocset(parts["pocset"]), args.cap)
        body["duals"]["dual"] = _dual_summary(X, args.budget)
        body["files"].update(_export_dual(args, X, "dual", out))
        if out is None:
            body["dual"] = X.to_json() if args.format == "json" else X.to_dot()
    else:
        K, P = _complex_and_pattern(parts)
        pc = PatternComplement(P)
        Xf = fine_dual(pc, args.cap)
        Xc, _, vmap = coarse_dual(pc, args.cap)
        for stem, X in (("fine_dual", Xf), ("coarse_dual", Xc)):
            body["duals"][stem] = _dual_summary(X, args.budget)
            body["files"].update(_export_dual(args, X, stem, out))
        body["coarse_vertex_of"] = {str(v): vmap[v] for v in K.vertices}
    return _finish(args, _report(args, _digests(args.paths, parts), **body))


def cmd_classes(args) -> int:
    parts = io.load_bundle(args.paths)
    K, P = _complex_and_pattern(parts)
    pc = PatternComplement(P)
    coarse = {str(t): [sorted(pc.coarse[t][0].vertices), sorted(pc.coarse[t][1].vertices)]
              for t in range(len(P.tracks))}
    rep = _report(args, _digests(args.paths, parts),
                  tracks=len(P.tracks), regions=[_region_json(r) for r in pc.regions],
                  coarse_halfspaces=coarse, inessential=list(pc.inessential),
                  parallelism_classes=[list(c) for c in pc.parallelism_classes],
                  class_count=len(pc.parallelism_classes))
    out = _out(args)
    if out is not None:
        with open(out / "classes.csv", "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["class", "track"])
            for i, c in enumerate(pc.parallelism_classes):
                for t in c:
                    w.writerow([i, t])
    return _finish(args, rep)


def cmd_bound_check(args) -> int:
    parts = io.load_bundle(args.paths)
    K, P = _complex_and_pattern(parts)
    r = check_theorem_A(K, P, budget=args.budget, vertex_cap=args.cap)
    body = r.to_json()
    body["checks"] = {
        "class_bound": _status(r.classes <= r.bound),
        "lemma1": _status(not r.lemma1_violations),
        "lemma2": _status(not r.lemma2_violations),
        "trichotomy": _status(not r.trichotomy_gaps),
    }
    if r.lemma1_interpretation_disagreements:
        body["checks"]["lemma1_interpretations"] = "warning"
    out = _out(args)
    if out is not None and not args.no_plots:
        from .plotting import plot_classes
        body["files"] = {"figure": str(plot_classes(r, out / "categories.png"))}
    return _finish(args, _report(args, _digests(args.paths, parts), **body), r.passed)


def cmd_resolve(args) -> int:
    parts = io.load_bundle(args.paths)
    K = io.load_complex(parts.get("complex"))
    X = dual_complex(io.load_pocset(parts.get("pocset")), args.cap)
    if "vertex_map" not in parts:
        raise InputError("no vertex_map given")
    f = parse_vertex_map(K, X, parts["vertex_map"])
    R = resolve(K, X, f, args.cap)
    rep = check_resolution(R, args.budget)
    body = {"checks": {k: _status(v) for k, v in rep["checks"].items()},
            **{k: v for k, v in rep.items() if k not in ("checks",)}}
    body["F"] = list(R.F)
    body["Phi"] = list(R.Phi)
    body["track_hyperplanes"] = list(R.pullback.track_hyperplane)
    out = _out(args)
    if out is None:
        body["pattern"] = io.pattern_to_json(R.pattern)
    else:
        files = {"pattern": str(out / "pullback.json")}
        io.write_json(out / "pullback.json", {"complex": K.to_json(),
                                              "pattern": io.pattern_to_json(R.pattern)})
        files.update(_export_dual(args, R.fine, "fine_dual", out))
        files.update(_export_dual(args, R.coarse, "coarse_dual", out))
        body["files"] = files
    return _finish(args, _report(args, _digests(args.paths, parts), **body), rep["pass"])


def cmd_normalize(args) -> int:
    parts = io.load_bundle(args.paths)
    K = io.load_complex(parts.get("complex"))
    if "drawing" not in parts:
        raise InputError("no drawing given")
    D = io.drawing_from_json(K, parts["drawing"], generalized=True, allow_empty=True)
    res = normalize(D, budget=args.budget)
    body = res.to_json()
    exact = len(res.moves) * 2 == res.initial_crossings - res.final_crossings
    drops = all(m.crossings_before - m.crossings_after == 2 for m in res.moves)
    body["checks"] = {"move_count": _status(exact), "per_move_drop": _status(drops)}
    if res.empty:
        body["checks"]["empty_result"] = "warning"
    body["tracks"] = len(res.pattern.tracks)
    out = _out(args)
    if out is None:
        body["pattern"] = io.pattern_to_json(res.pattern)
    else:
        io.write_json(out / "normalized.json", {"complex": K.to_json(),
                                                "pattern": io.pattern_to_json(res.pattern)})
        body["files"] = {"pattern": str(out / "normalized.json")}
        if not args.no_plots:
            from .plotting import plot_normalize
            body["files"]["figure"] = str(plot_normalize(res, out / "normalize.png"))
    return _finish(args, _report(args, _digests(args.paths, parts), **body), exact and drops)


GEN_KINDS = ("complex-disk", "pattern-direct", "pattern-pullback", "pocset", "drawing-generalized")


def generate_instance(kind: str, size: int, seed: int, index: int = 0) -> dict:
    rng = instance_rng(seed, index)
    if kind == "complex-disk":
        return random_disk(size, rng).to_json()
    if kind == "pocset":
        return random_pocset(size, rng).to_json()
    if kind == "pattern-direct":
        inst = direct_pattern(rng, max_faces=size)
        return {"complex": inst.complex.to_json(), "pattern": io.pattern_to_json(inst.pattern)}
    if kind == "pattern-pullback":
        inst = pullback_instance(rng, max_faces=size)
        X = inst.target
        return {"complex": inst.complex.to_json(), "pattern": io.pattern_to_json(inst.pattern),
                "pocset": X.pocset.to_json(),
                "vertex_map": {str(v): X.bitstring(x) for v, x in sorted(inst.vertex_map.items())}}
    if kind == "drawing-generalized":
        D, base = generalized_instance(rng, max_faces=size)
        return {"complex": D.complex.to_json(), "drawing": io.drawing_to_json(D)}
    raise InputError(f"unknown kind {kind!r}")


def cmd_gen_random(args) -> int:
    docs = [generate_instance(args.kind, args.size, args.seed, i) for i in range(args.count)]
    out = _out(args)
    if out is None:
        print(json.dumps(docs[0] if args.count == 1 else docs, indent=2))
        return 0
    names = []
    for i, doc in enumerate(docs):
        p = out / f"{args.kind}-{args.seed}-{i}.json"
        io.write_json(p, doc)
        names.append(str(p))
    print(json.dumps({"command": args.command, "files": names}, indent=2))
    return 0


def cmd_stress(args) -> int:
    from .campaign import SUITES, run_campaign
    suites = args.suites or list(SUITES)
    bad = sorted(set(suites) - set(SUITES))
    if bad:
        raise InputError(f"unknown suites {bad}")
    # per-instance warnings (empty pullbacks, closed loops) would swamp the report
    quiet = [logging.getLogger(f"trackcube.{m}") for m in ("resolution", "normalize")]
    levels = [lg.level for lg in quiet]
    for lg in quiet:
        lg.setLevel(logging.ERROR)
    try:
        result = run_campaign(args.seed, suites, args.scale, args.jobs)
    finally:
        for lg, lv in zip(quiet, levels):
            lg.setLevel(lv)
    summary = {name: {k: v for k, v in s.items() if k != "records"}
               for name, s in result["suites"].items()}
    out = _out(args)
    body = {"seed": args.seed, "scale": args.scale, "suites": summary, "pass": result["pass"]}
    if out is not None:
        io.write_json(out / "campaign.json", result)
        files = {"campaign": str(out / "campaign.json")}
        for name, s in result["suites"].items():
            recs = s["records"]
            if not recs:
                continue
            keys = sorted({k for r in recs for k in r})
            path = out / f"{name}.csv"
            with open(path, "w", newline="") as fh:
                w = csv.DictWriter(fh, fieldnames=keys)
                w.writeheader()
                for r in recs:
                    w.writerow({k: json.dumps(v) if isinstance(v, (dict, list)) else v
                                for k, v in r.items()})
            files[f"{name}_csv"] = str(path)
        if not args.no_plots:
            from .plotting import plot_campaign
            for p in plot_campaign(result, out):
                files[p.stem + "_figure"] = str(p)
        body["files"] = files
    return _finish(args, _report(args, [], **body), result["pass"])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="dual vertex cap")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="clique search node budget")
    common.add_argument("--out", help="output directory")
    common.add_argument("--format", choices=("json", "dot"), default="json")
    common.add_argument("--no-plots", action="store_true", help="skip figures")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="trackcube", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name, fn, help_ in (
            ("validate", cmd_validate, "check instance files"),
            ("dual", cmd_dual, "dual cube complex of a pocset or a pattern"),
            ("classes", cmd_classes, "regions, halfspaces and parallelism classes"),
            ("bound-check", cmd_bound_check, "class bound and the interval lemmas"),
            ("resolve", cmd_resolve, "pullback pattern and resolution of a vertex map"),
            ("normalize", cmd_normalize, "remove self-returning arcs")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("paths", nargs="+")
        p.set_defaults(func=fn)
    p = sub.add_parser("gen-random", parents=[common], help="write random instances")
    p.add_argument("kind", choices=GEN_KINDS)
    p.add_argument("size", type=int)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=cmd_gen_random)
    p = sub.add_parser("stress", parents=[common], help="run the property campaigns")
    p.add_argument("--suites", nargs="*")
    p.add_argument("--scale", type=float, default=1.0, help="multiplier on instance counts")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_stress)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    args.echo = list(argv) if argv is not None else None
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TrackCubeError as exc:
        print(f"check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
