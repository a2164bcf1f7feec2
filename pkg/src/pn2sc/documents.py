"""JSON documents for nets (``.pn.json``) and statecharts (``.sc.json``).

Net document::

    {"format": "pn2sc-net/1",
     "places": [{"id": 0, "name": "a"}, {"id": 5, "name": "p_5", "merged": true}, ...],
     "transitions": [{"id": 1, "name": "t"}, ...],
     "arcs": [{"from": 0, "to": 1}, ...]}

``merged`` (optional, default false) marks places produced by reduction.
Ids may be integers or strings.  Integer ids are kept as model ids; string
ids are replaced by fresh integers in document order.  Writers always emit
integer ids sorted ascending, so ``write_net(read_net(write_net(n)))`` is
byte-identical to ``write_net(n)``.

Statechart document::

    {"format": "pn2sc-statechart/1",
     "roots": [{"id": 7, "kind": "and", "name": "AND_7", "children": [...]}],
     "hyperedges": [{"id": 3, "name": "t", "sources": [0], "targets": [2]}],
     "top": 7}

``sources``/``targets`` reference basic-state ids.  A failure dump omits
``top`` and carries the residual net under ``"residual_net"`` together with
``"outcome": "stuck"``.
"""
from __future__ import annotations

import json
from typing import Any

from pn2sc.engine import Stuck, Success
from pn2sc.errors import (
    DanglingEndpointError,
    DocumentSyntaxError,
    DuplicateIdError,
    MalformedModelError,
    SchemaError,
)
from pn2sc.models import PetriNet, Statechart, StateKind, validate

NET_FORMAT = "pn2sc-net/1"
STATECHART_FORMAT = "pn2sc-statechart/1"


def _dump(doc: dict) -> bytes:
    return (json.dumps(doc, indent=1, ensure_ascii=False) + "\n").encode("utf-8")


def _parse(data: bytes | str) -> Any:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentSyntaxError(f"not UTF-8: {exc.reason}", 1, exc.start + 1) from None
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from None


def _require(obj, key, kind, where):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    if key not in obj:
        raise SchemaError(f"{where}: missing field {key!r}")
    value = obj[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise SchemaError(f"{where}: field {key!r} has wrong type {type(value).__name__}")
    return value


def _check_format(doc, expected):
    if not isinstance(doc, dict):
        raise SchemaError("document root must be an object")
    fmt = doc.get("format", expected)
    if fmt != expected:
        raise SchemaError(f"unsupported format tag {fmt!r}, expected {expected!r}")


def net_from_document(doc: Any) -> PetriNet:
    _check_format(doc, NET_FORMAT)
    places = _require(doc, "places", list, "document")
    transitions = _require(doc, "transitions", list, "document")
    arcs = _require(doc, "arcs", list, "document")

    entries = []
    for kind, items in (("place", places), ("transition", transitions)):
        for i, item in enumerate(items):
            where = f"{kind}s[{i}]"
            raw = _require(item, "id", (int, str), where)
            if isinstance(raw, bool):
                raise SchemaError(f"{where}: id must be an integer or string")
            name = item.get("name", "")
            if not isinstance(name, str):
                raise SchemaError(f"{where}: field 'name' must be a string")
            merged = item.get("merged", False)
            if not isinstance(merged, bool):
                raise SchemaError(f"{where}: field 'merged' must be a boolean")
            entries.append((kind, raw, name, merged))

    seen: set = set()
    for _, raw, _, _ in entries:
        if raw in seen:
            raise DuplicateIdError(f"duplicate id {raw!r}")
        seen.add(raw)

    net = PetriNet()
    ints = [e[1] for e in entries if isinstance(e[1], int)]
    net.next_id = max(ints) + 1 if ints else 0
    mapping: dict = {}
    for kind, raw, name, merged in entries:
        node_id = raw if isinstance(raw, int) else None
        if kind == "place":
            node = net.add_place(name, node_id, merged)
        else:
            node = net.add_transition(name, node_id)
        mapping[raw] = node.id

    for i, arc in enumerate(arcs):
        where = f"arcs[{i}]"
        ends = []
        for key in ("from", "to"):
            raw = _require(arc, key, (int, str), where)
            if raw not in mapping or isinstance(raw, bool):
                raise DanglingEndpointError(f"{where}: {key} references unknown id {raw!r}")
            ends.append(mapping[raw])
        net.add_arc(*ends)
    return net


def read_net(data: bytes | str) -> PetriNet:
    """Parse a net document; bipartite/duplicate-arc problems raise model errors."""
    return net_from_document(_parse(data))


def _place_record(p) -> dict:
    rec = {"id": p.id, "name": p.name}
    if p.merged:
        rec["merged"] = True
    return rec


def net_to_document(net: PetriNet) -> dict:
    problems = validate(net)
    if problems:
        raise MalformedModelError(f"cannot serialize invalid net: {problems[0].message}")
    return {
        "format": NET_FORMAT,
        "places": [_place_record(net.places[pid]) for pid in sorted(net.places)],
        "transitions": [{"id": tid, "name": net.transitions[tid].name} for tid in sorted(net.transitions)],
        "arcs": [{"from": a, "to": b} for a, b in net.arcs()],
    }


def write_net(net: PetriNet) -> bytes:
    return _dump(net_to_document(net))


def _state_record(sc: Statechart, sid: int) -> dict:
    st = sc.states[sid]
    rec = {"id": st.id, "kind": st.kind.value, "name": st.name}
    if st.kind is not StateKind.BASIC:
        rec["children"] = [_state_record(sc, c) for c in sorted(st.contains)]
    return rec


def statechart_to_document(sc: Statechart) -> dict:
    if not sc.states:
        raise MalformedModelError("statechart is empty")
    roots = sc.check_forest()
    for e in sc.hyperedges.values():
        for sid in e.rnext | e.next:
            if sc.states.get(sid) is None or sc.states[sid].kind is not StateKind.BASIC:
                raise MalformedModelError(f"hyperedge {e.id} references non-basic state {sid}")
    doc = {
        "format": STATECHART_FORMAT,
        "roots": [_state_record(sc, r) for r in roots],
        "hyperedges": [
            {"id": e.id, "name": e.name, "sources": sorted(e.rnext), "targets": sorted(e.next)}
            for e in (sc.hyperedges[k] for k in sorted(sc.hyperedges))
        ],
    }
    if sc.top_state is not None:
        doc["top"] = sc.top_state
    return doc


def write_statechart(result: Statechart | Success | Stuck) -> bytes:
    """Serialize a statechart, a successful outcome, or a failure dump."""
    if isinstance(result, Success):
        result = result.statechart
    if isinstance(result, Stuck):
        doc = statechart_to_document(result.statechart)
        doc["outcome"] = "stuck"
        doc["rule_applications"] = result.rule_applications
        doc["residual_net"] = net_to_document(result.net)
        return _dump(doc)
    if result.top_state is not None and result.top_state not in result.states:
        raise MalformedModelError(f"top state {result.top_state} does not exist")
    return _dump(statechart_to_document(result))


def statechart_from_document(doc: Any) -> Statechart:
    _check_format(doc, STATECHART_FORMAT)
    roots = _require(doc, "roots", list, "document")
    edges = _require(doc, "hyperedges", list, "document")
    sc = Statechart()

    def build(rec, where):
        sid = _require(rec, "id", int, where)
        kind_raw = _require(rec, "kind", str, where)
        name = rec.get("name", "")
        try:
            kind = StateKind(kind_raw)
        except ValueError:
            raise SchemaError(f"{where}: unknown state kind {kind_raw!r}") from None
        if kind is StateKind.BASIC:
            if rec.get("children"):
                raise SchemaError(f"{where}: basic state has children")
            return sc.add_basic(name, sid).id
        children = _require(rec, "children", list, where)
        ids = [build(c, f"{where}.children[{i}]") for i, c in enumerate(children)]
        return sc.add_compound(kind, ids, name, sid).id

    for i, rec in enumerate(roots):
        try:
            build(rec, f"roots[{i}]")
        except DuplicateIdError as exc:
            raise DuplicateIdError(f"roots[{i}]: {exc}") from None
    for i, rec in enumerate(edges):
        where = f"hyperedges[{i}]"
        eid = _require(rec, "id", int, where)
        refs = []
        for key in ("sources", "targets"):
            ids = _require(rec, key, list, where)
            for sid in ids:
                st = sc.states.get(sid) if isinstance(sid, int) else None
                if st is None or st.kind is not StateKind.BASIC:
                    raise DanglingEndpointError(f"{where}: {key} entry {sid!r} is not a basic state")
            refs.append(ids)
        sc.add_hyperedge(rec.get("name", ""), refs[0], refs[1], eid)
    if "top" in doc:
        top = doc["top"]
        if top not in sc.states or top not in sc.roots():
            raise DanglingEndpointError(f"top {top!r} is not a root state")
        sc.top_state = top
    return sc


def read_statechart(data: bytes | str) -> Statechart:
    return statechart_from_document(_parse(data))


def read_failure_dump(data: bytes | str) -> tuple[Statechart, PetriNet | None]:
    """Return the partial statechart and residual net stored in a dump."""
    doc = _parse(data)
    sc = statechart_from_document(doc)
    net = net_from_document(doc["residual_net"]) if "residual_net" in doc else None
    return sc, net
