"""Canonical text forms for statecharts and (residual) Petri-Nets.

Statechart forms are exact: containment is a forest with named Basic
leaves, so encoding each state from its sorted child encodings identifies
the model up to ids, insertion order and compound names.

Net forms come from colour refinement and are exact only when refinement
separates every node; :attr:`CanonicalForm.exact` reports that.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from pn2sc.errors import MalformedModelError, PreconditionError
from pn2sc.models import PetriNet, Statechart, StateKind, validate

_PREFIX = {StateKind.OR: "O", StateKind.AND: "A"}


@dataclass(frozen=True)
class CanonicalForm:
    text: str
    exact: bool = field(default=True, compare=False)

    def __str__(self):
        return self.text


def _q(name: str) -> str:
    return json.dumps(name, ensure_ascii=False)


def state_encodings(sc: Statechart) -> dict[int, str]:
    """Encode every state bottom-up; raise on shared children or cycles."""
    sc.parents()
    roots = sc.roots()
    enc: dict[int, str] = {}
    states = sc.states
    stack = [(sid, False) for sid in roots]
    while stack:
        sid, expanded = stack.pop()
        st = states[sid]
        if st.kind is StateKind.BASIC:
            enc[sid] = f"B({_q(st.name)})"
        elif expanded:
            enc[sid] = _PREFIX[st.kind] + "[" + ",".join(sorted(enc[c] for c in st.contains)) + "]"
        else:
            stack.append((sid, True))
            stack.extend((c, False) for c in st.contains)
    if len(enc) != len(states):
        raise MalformedModelError("containment cycle")
    return enc


def hyperedge_encodings(sc: Statechart) -> list[str]:
    out = []
    for e in sc.hyperedges.values():
        for sid in e.rnext | e.next:
            st = sc.states.get(sid)
            if st is None or st.kind is not StateKind.BASIC:
                raise MalformedModelError(f"hyperedge {e.id} links non-basic state {sid}")
        src = sorted(sc.states[s].name for s in e.rnext)
        dst = sorted(sc.states[s].name for s in e.next)
        out.append(f"H({_q(e.name)})({json.dumps(src, ensure_ascii=False)}->{json.dumps(dst, ensure_ascii=False)})")
    return sorted(out)


def canonical_statechart(sc: Statechart) -> CanonicalForm:
    enc = state_encodings(sc)
    lines = ["statechart"]
    lines += sorted(("top " if sid == sc.top_state else "root ") + enc[sid] for sid in sc.roots())
    lines += ["edge " + h for h in hyperedge_encodings(sc)]
    return CanonicalForm("\n".join(lines))


def statecharts_equivalent(a: Statechart, b: Statechart) -> bool:
    return canonical_statechart(a) == canonical_statechart(b)


def canonical_net(net: PetriNet) -> CanonicalForm:
    """Colour-refinement encoding of ``net``.

    Initial colours are (kind, name) with merged places treated as
    unnamed; each round appends the sorted colours of a node's in- and
    out-neighbours.  Colours are renumbered by sorting signatures, which
    makes the result independent of ids.
    """
    problems = validate(net)
    if problems:
        raise PreconditionError(f"invalid net: {problems[0].message}")
    ins: dict[int, list[int]] = {}
    outs: dict[int, list[int]] = {}
    sig: dict[int, str] = {}
    for p in net.places.values():
        sig[p.id] = "P" + ("*" if p.merged else _q(p.name))
        ins[p.id], outs[p.id] = list(p.pret), list(p.postt)
    for t in net.transitions.values():
        sig[t.id] = "T" + _q(t.name)
        ins[t.id], outs[t.id] = list(t.prep), list(t.postp)

    color = _renumber(sig)
    classes = len(set(color.values()))
    while True:
        sig = {
            n: f"{color[n]}|{sorted(color[m] for m in ins[n])}|{sorted(color[m] for m in outs[n])}"
            for n in color
        }
        new = _renumber(sig)
        new_classes = len(set(new.values()))
        color = new
        if new_classes == classes:
            break
        classes = new_classes

    label = {}
    for p in net.places.values():
        label[color[p.id]] = "P" + ("*" if p.merged else _q(p.name))
    for t in net.transitions.values():
        label[color[t.id]] = "T" + _q(t.name)
    lines = ["net"]
    lines += [f"label {c} {label[c]}" for c in sorted(label)]
    lines += sorted(
        f"node {color[n]} in={sorted(color[m] for m in ins[n])} out={sorted(color[m] for m in outs[n])}"
        for n in color
    )
    lines += sorted(f"arc {color[a]} {color[b]}" for a, b in net.arcs())
    return CanonicalForm("\n".join(lines), exact=classes == len(color))


def _renumber(sig: dict[int, str]) -> dict[int, int]:
    rank = {s: i for i, s in enumerate(sorted(set(sig.values())))}
    return {n: rank[s] for n, s in sig.items()}


def nets_equivalent(a: PetriNet, b: PetriNet) -> bool:
    return canonical_net(a) == canonical_net(b)
