"""JSON-compatible interchange documents for diagrams and derived objects.

A diagram document looks like

    {"k": 3,
     "vertices": [{"id": 0, "kind": "uni", "color": 1},
                  {"id": 3, "kind": "tri", "rotation": [0, 1, 2]}],
     "edges": [{"id": 0, "ends": [0, 3]}]}

Vertex and edge ids are arbitrary integers, unique within their kind.  A
trivalent rotation lists incident edge ids in cyclic order; a self-loop lists
its edge twice.  When the rotation is omitted the incident edges are taken in
ascending id order.  parse/serialize round-trip up to isomorphism: the parsed
diagram has the same canonical key.
"""

from __future__ import annotations

import json

from . import bounded as bnd
from . import chords as ch
from .diagrams import Diagram, build
from .errors import ParseError
from .lincomb import terms_doc


def serialize(D: Diagram) -> dict:
    vertices = []
    for v, color in enumerate(D.colors):
        if color is None:
            vertices.append({"id": v, "kind": "tri",
                             "rotation": [h // 2 for h in D.incidence[v]]})
        else:
            vertices.append({"id": v, "kind": "uni", "color": color})
    edges = [{"id": e, "ends": list(D.edge_ends(e))} for e in range(D.n_edges)]
    return {"k": D.k, "vertices": vertices, "edges": edges}


def serialize_text(D: Diagram) -> str:
    return json.dumps(serialize(D), sort_keys=True, separators=(",", ":"))


def _require(cond, where, message):
    if not cond:
        raise ParseError(f"{where}: {message}")


def parse(doc) -> Diagram:
    """Read a diagram document (dict or JSON text); errors name the offender."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"not valid JSON: {exc}") from None
    _require(isinstance(doc, dict), "document", "expected an object")
    for field in ("k", "vertices", "edges"):
        _require(field in doc, "document", f"missing field {field!r}")
    k = doc["k"]
    _require(isinstance(k, int) and k >= 1, "k", "must be an integer >= 1")

    order = []          # vertex ids in document order
    colors = {}
    rotations = {}
    for i, v in enumerate(doc["vertices"]):
        where = f"vertices[{i}]"
        _require(isinstance(v, dict), where, "expected an object")
        _require(isinstance(v.get("id"), int), where, "missing integer id")
        vid = v["id"]
        _require(vid not in colors, where, f"duplicate vertex id {vid}")
        kind = v.get("kind")
        _require(kind in ("uni", "tri"), where, f"kind must be uni or tri, got {kind!r}")
        if kind == "uni":
            color = v.get("color")
            _require(isinstance(color, int), where, "univalent vertex needs an integer color")
            _require(1 <= color <= k, where, f"color {color} out of range 1..{k}")
            _require("rotation" not in v, where, "rotation belongs to trivalent vertices")
            colors[vid] = color
        else:
            colors[vid] = None
            if "rotation" in v:
                rot = v["rotation"]
                _require(isinstance(rot, list) and len(rot) == 3
                         and all(isinstance(e, int) for e in rot),
                         where, "rotation must list three edge ids")
                rotations[vid] = tuple(rot)
        order.append(vid)

    index = {vid: i for i, vid in enumerate(order)}
    edges = []
    edge_ids = {}
    for i, e in enumerate(doc["edges"]):
        where = f"edges[{i}]"
        _require(isinstance(e, dict), where, "expected an object")
        _require(isinstance(e.get("id"), int), where, "missing integer id")
        eid = e["id"]
        _require(eid not in edge_ids, where, f"duplicate edge id {eid}")
        ends = e.get("ends")
        _require(isinstance(ends, list) and len(ends) == 2, where, "ends must list two vertex ids")
        for end in ends:
            _require(end in index, where, f"unknown vertex id {end}")
        edge_ids[eid] = i
        edges.append((index[ends[0]], index[ends[1]]))

    valence = [0] * len(order)
    for u, v in edges:
        valence[u] += 1
        valence[v] += 1
    for vid in order:
        i = index[vid]
        want = 1 if colors[vid] is not None else 3
        _require(valence[i] == want, f"vertex {vid}",
                 f"{'univalent' if want == 1 else 'trivalent'} vertex has valence {valence[i]}")

    built_rotations = {}
    for vid, rot in rotations.items():
        where = f"vertex {vid}"
        for eid in rot:
            _require(eid in edge_ids, where, f"rotation names unknown edge {eid}")
        built_rotations[index[vid]] = tuple(edge_ids[eid] for eid in rot)
    try:
        return build(k, [colors[vid] for vid in order], edges, built_rotations)
    except Exception as exc:
        raise ParseError(str(exc)) from None


# -- other object kinds ----------------------------------------------------------


def chord_doc(c: ch.ChordDiagram) -> dict:
    return {"d": c.d, "pairing": list(c.pairing)}


def parse_chord(doc) -> ch.ChordDiagram:
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"not valid JSON: {exc}") from None
    _require(isinstance(doc, dict) and isinstance(doc.get("pairing"), list),
             "document", "expected an object with a pairing list")
    try:
        return ch.ChordDiagram(tuple(doc["pairing"]))
    except Exception as exc:
        raise ParseError(str(exc)) from None


def bounded_doc(B: bnd.BoundedDiagram) -> dict:
    return {"k": B.k, "graph": serialize(B.graph),
            "order": [list(seg) for seg in B.order]}


def parse_bounded(doc) -> bnd.BoundedDiagram:
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"not valid JSON: {exc}") from None
    for field in ("k", "graph", "order"):
        _require(isinstance(doc, dict) and field in doc, "document", f"missing field {field!r}")
    graph = parse(doc["graph"])
    try:
        return bnd.BoundedDiagram(doc["k"], graph, tuple(tuple(seg) for seg in doc["order"]))
    except Exception as exc:
        raise ParseError(str(exc)) from None


def relator_doc(relator) -> dict:
    return {"id": relator.rid, "element": terms_doc(relator.element)}
