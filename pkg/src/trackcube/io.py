"""JSON instance formats for complexes, drawings, patterns, pocsets and maps.

A file may hold one object directly (a complex has ``vertices``, a drawing
has ``crossing_counts``, a pocset has ``pairs``) or a bundle with the keys
``complex``, ``pattern`` / ``drawing``, ``pocset`` and ``vertex_map``.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .complex import SimplicialComplex2, edge_name, parse_edge_name, validate_complex
from .errors import InputError
from .pattern import Arc, Drawing, Pattern, make_pattern, validate_drawing
from .pocset import Pocset, pocset_from_json


def read_json(path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def write_json(path, doc) -> None:
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=False) + "\n", encoding="utf-8")


def digest(doc) -> str:
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def load_bundle(paths) -> dict:
    """Merge several files into {complex, drawing, pocset, vertex_map} raw parts."""
    out: dict = {}

    def put(key, value, src):
        if key in out:
            raise InputError(f"{src}: second '{key}' given")
        out[key] = value

    for p in paths:
        doc = read_json(p)
        if not isinstance(doc, dict):
            raise InputError(f"{p}: expected a JSON object")
        if "vertices" in doc and "faces" in doc:
            put("complex", doc, p)
        if "crossing_counts" in doc or "arcs" in doc:
            put("drawing", doc, p)
        if "pairs" in doc:
            put("pocset", doc, p)
        for key, alias in (("complex", "complex"), ("pattern", "drawing"),
                           ("drawing", "drawing"), ("pocset", "pocset"),
                           ("vertex_map", "vertex_map")):
            if key in doc:
                put(alias, doc[key], p)
    return out


def drawing_from_json(K: SimplicialComplex2, doc: dict, generalized: bool | None = None,
                      allow_empty: bool = False) -> Drawing:
    try:
        raw_counts = doc.get("crossing_counts", {})
        counts = {parse_edge_name(k): int(v) for k, v in raw_counts.items()}
        arcs = []
        for j, a in enumerate(doc.get("arcs", [])):
            face = tuple(sorted(int(x) for x in a["face"]))
            ends = a["endpoints"]
            if len(ends) != 2:
                raise InputError(f"arc {j} needs two endpoints")
            pts = [(parse_edge_name(e), int(i)) for e, i in ends]
            arcs.append(Arc.make(face, pts[0], pts[1]))
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"malformed drawing: {exc!r}") from None
    if generalized is None:
        generalized = bool(doc.get("generalized", False))
    return validate_drawing(K, counts, arcs, generalized=generalized, allow_empty=allow_empty)


def pattern_from_json(K: SimplicialComplex2, doc: dict, allow_empty: bool = True) -> Pattern:
    D = drawing_from_json(K, doc, generalized=False, allow_empty=allow_empty)
    tracks = doc.get("tracks", "auto")
    if tracks == "auto" or tracks is None:
        return make_pattern(K, D)
    return make_pattern(K, D, tracks)


def drawing_to_json(D: Drawing) -> dict:
    doc = {
        "crossing_counts": {edge_name(e): c for e, c in sorted(D.counts.items()) if c},
        "arcs": [{"face": list(a.face),
                  "endpoints": [[edge_name(e), i] for e, i in a.ends]} for a in D.arcs],
    }
    if D.generalized:
        doc["generalized"] = True
    return doc


def pattern_to_json(P: Pattern) -> dict:
    doc = drawing_to_json(P.drawing)
    doc["tracks"] = [list(t) for t in P.tracks]
    return doc


def load_complex(raw) -> SimplicialComplex2:
    if raw is None:
        raise InputError("no complex given")
    return validate_complex(raw)


def load_pocset(raw) -> Pocset:
    if raw is None:
        raise InputError("no pocset given")
    return pocset_from_json(raw)
