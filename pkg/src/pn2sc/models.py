"""Petri-Net and statechart domain types.

Both models use opaque integer ids drawn from a per-model monotone counter;
names are labels only.  Every structural change to a :class:`PetriNet` goes
through :meth:`PetriNet.add_arc`, :meth:`PetriNet.remove_place` and
:meth:`PetriNet.remove_transition`, which keep the dual references
(``t.prep``/``p.postt`` and ``t.postp``/``p.pret``) in step.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

from pn2sc.errors import (
    BipartitenessError,
    DuplicateArcError,
    DuplicateIdError,
    MalformedModelError,
    MissingNodeError,
    ModelError,
)


@dataclass(eq=False)
class Place:
    id: int
    name: str
    pret: set[int] = field(default_factory=set)
    postt: set[int] = field(default_factory=set)
    # True once the place stands for several input places (AND survivor or
    # OR product); canonical_net ignores the name of such places.
    merged: bool = False


@dataclass(eq=False)
class Transition:
    id: int
    name: str
    prep: set[int] = field(default_factory=set)
    postp: set[int] = field(default_factory=set)


class PetriNet:
    """Mutable bipartite graph of places and transitions (no markings)."""

    def __init__(self):
        self.places: dict[int, Place] = {}
        self.transitions: dict[int, Transition] = {}
        self.next_id = 0

    def __repr__(self):
        return f"<PetriNet places={len(self.places)} transitions={len(self.transitions)}>"

    @property
    def element_count(self) -> int:
        return len(self.places) + len(self.transitions)

    def _claim_id(self, node_id: int | None) -> int:
        if node_id is None:
            node_id = self.next_id
        elif node_id in self.places or node_id in self.transitions:
            raise DuplicateIdError(f"id {node_id} already in use")
        self.next_id = max(self.next_id, node_id + 1)
        return node_id

    def add_place(self, name: str = "", id: int | None = None, merged: bool = False) -> Place:
        pid = self._claim_id(id)
        place = Place(pid, name, merged=merged)
        self.places[pid] = place
        return place

    def add_transition(self, name: str = "", id: int | None = None) -> Transition:
        tid = self._claim_id(id)
        tr = Transition(tid, name)
        self.transitions[tid] = tr
        return tr

    def node(self, node_id: int) -> Place | Transition:
        try:
            return self.places[node_id]
        except KeyError:
            pass
        try:
            return self.transitions[node_id]
        except KeyError:
            raise MissingNodeError(node_id) from None

    def add_arc(self, source: int, target: int) -> None:
        src = self.node(source)
        dst = self.node(target)
        if isinstance(src, Place) and isinstance(dst, Transition):
            if src.id in dst.prep:
                raise DuplicateArcError(f"arc {source} -> {target} already exists")
            dst.prep.add(src.id)
            src.postt.add(dst.id)
        elif isinstance(src, Transition) and isinstance(dst, Place):
            if dst.id in src.postp:
                raise DuplicateArcError(f"arc {source} -> {target} already exists")
            src.postp.add(dst.id)
            dst.pret.add(src.id)
        else:
            kind = "place" if isinstance(src, Place) else "transition"
            raise BipartitenessError(f"arc {source} -> {target} joins two {kind}s")

    def has_arc(self, source: int, target: int) -> bool:
        src = self.node(source)
        if isinstance(src, Place):
            return target in src.postt
        return target in src.postp

    def remove_place(self, pid: int) -> Place:
        place = self.places.pop(pid, None)
        if place is None:
            raise MissingNodeError(pid, "place")
        for tid in place.postt:
            self.transitions[tid].prep.discard(pid)
        for tid in place.pret:
            self.transitions[tid].postp.discard(pid)
        return place

    def remove_transition(self, tid: int) -> Transition:
        tr = self.transitions.pop(tid, None)
        if tr is None:
            raise MissingNodeError(tid, "transition")
        for pid in tr.prep:
            self.places[pid].postt.discard(tid)
        for pid in tr.postp:
            self.places[pid].pret.discard(tid)
        return tr

    def arcs(self) -> Iterator[tuple[int, int]]:
        """Yield every arc as ``(source, target)``, sorted by source then target."""
        nodes = sorted(
            [(p.id, p.postt) for p in self.places.values()]
            + [(t.id, t.postp) for t in self.transitions.values()]
        )
        for src, targets in nodes:
            for dst in sorted(targets):
                yield src, dst

    def copy(self) -> PetriNet:
        other = PetriNet()
        other.next_id = self.next_id
        for p in self.places.values():
            other.places[p.id] = Place(p.id, p.name, set(p.pret), set(p.postt), p.merged)
        for t in self.transitions.values():
            other.transitions[t.id] = Transition(t.id, t.name, set(t.prep), set(t.postp))
        return other


class Violation(NamedTuple):
    kind: str
    ids: tuple
    message: str


def validate(net) -> list[Violation]:
    """Check every :class:`PetriNet` invariant; return the violations found."""
    if not isinstance(net, PetriNet):
        return [Violation("not-a-net", (), f"expected a single PetriNet, got {type(net).__name__}")]
    out: list[Violation] = []
    places, transitions = net.places, net.transitions
    for key, p in places.items():
        if key != p.id:
            out.append(Violation("duplicate-id", (key, p.id), f"place stored under {key} has id {p.id}"))
    for key, t in transitions.items():
        if key != t.id:
            out.append(Violation("duplicate-id", (key, t.id), f"transition stored under {key} has id {t.id}"))
    seen: dict[int, int] = {}
    for obj in list(places.values()) + list(transitions.values()):
        seen[obj.id] = seen.get(obj.id, 0) + 1
    for node_id, count in sorted(seen.items()):
        if count > 1:
            out.append(Violation("duplicate-id", (node_id,), f"id {node_id} used by {count} nodes"))
    if seen and net.next_id <= max(seen):
        out.append(Violation("id-counter", (net.next_id,), "next_id does not exceed every live id"))

    for p in places.values():
        for tid in sorted(p.postt | p.pret):
            if tid not in transitions:
                out.append(Violation("dangling", (p.id, tid), f"place {p.id} references missing transition {tid}"))
        for tid in sorted(p.postt):
            if tid in transitions and p.id not in transitions[tid].prep:
                out.append(Violation("dual-reference", (p.id, tid), f"{tid} in p{p.id}.postt but p{p.id} not in prep"))
        for tid in sorted(p.pret):
            if tid in transitions and p.id not in transitions[tid].postp:
                out.append(Violation("dual-reference", (tid, p.id), f"{tid} in p{p.id}.pret but p{p.id} not in postp"))
    for t in transitions.values():
        for pid in sorted(t.prep | t.postp):
            if pid not in places:
                out.append(Violation("dangling", (t.id, pid), f"transition {t.id} references missing place {pid}"))
        for pid in sorted(t.prep):
            if pid in places and t.id not in places[pid].postt:
                out.append(Violation("dual-reference", (pid, t.id), f"p{pid} in t{t.id}.prep but t{t.id} not in postt"))
        for pid in sorted(t.postp):
            if pid in places and t.id not in places[pid].pret:
                out.append(Violation("dual-reference", (t.id, pid), f"p{pid} in t{t.id}.postp but t{t.id} not in pret"))
    return out


class StateKind(str, enum.Enum):
    BASIC = "basic"
    OR = "or"
    AND = "and"


@dataclass(eq=False)
class State:
    id: int
    name: str
    kind: StateKind
    # frozenset for Basic states, a mutable set for OR/AND compounds
    contains: set[int] | frozenset[int] = frozenset()

    @property
    def is_compound(self) -> bool:
        return self.kind is not StateKind.BASIC


@dataclass(eq=False)
class HyperEdge:
    id: int
    name: str
    rnext: frozenset[int]
    next: frozenset[int]


class Statechart:
    """Forest of Basic/OR/AND states plus hyperedges.

    Parent links are not stored; :meth:`parents` derives them on demand so
    that moving a large child set between compounds stays cheap.
    """

    def __init__(self):
        self.states: dict[int, State] = {}
        self.hyperedges: dict[int, HyperEdge] = {}
        self.top_state: int | None = None
        self.next_id = 0

    def __repr__(self):
        return f"<Statechart states={len(self.states)} hyperedges={len(self.hyperedges)} top={self.top_state}>"

    def _claim_id(self, node_id: int | None) -> int:
        if node_id is None:
            node_id = self.next_id
        elif node_id in self.states or node_id in self.hyperedges:
            raise DuplicateIdError(f"id {node_id} already in use")
        self.next_id = max(self.next_id, node_id + 1)
        return node_id

    def add_basic(self, name: str, id: int | None = None) -> State:
        sid = self._claim_id(id)
        st = State(sid, name, StateKind.BASIC)
        self.states[sid] = st
        return st

    def add_compound(self, kind: StateKind, contains: Iterable[int] = (), name: str | None = None,
                     id: int | None = None, check: bool = True) -> State:
        """Create an OR or AND state.

        ``contains`` may be a ``set``, in which case it is adopted without
        copying.  ``check=False`` skips the child lookup for callers that
        move children between compounds they already own.
        """
        if kind is StateKind.BASIC:
            raise ModelError("compound state cannot be Basic")
        sid = self._claim_id(id)
        children = contains if type(contains) is set else set(contains)
        for cid in children if check else ():
            if cid not in self.states:
                raise MissingNodeError(cid, "state")
        if name is None:
            name = f"{kind.name}_{sid}"
        st = State(sid, name, kind, children)
        self.states[sid] = st
        return st

    def add_hyperedge(self, name: str, rnext: Iterable[int], next: Iterable[int],
                      id: int | None = None) -> HyperEdge:
        eid = self._claim_id(id)
        edge = HyperEdge(eid, name, frozenset(rnext), frozenset(next))
        for sid in edge.rnext | edge.next:
            if sid not in self.states:
                raise MissingNodeError(sid, "state")
        self.hyperedges[eid] = edge
        return edge

    def remove_state(self, sid: int) -> State:
        st = self.states.pop(sid, None)
        if st is None:
            raise MissingNodeError(sid, "state")
        return st

    def parents(self) -> dict[int, int]:
        """Map each contained state to its parent; raise if a state has two."""
        parent: dict[int, int] = {}
        for st in self.states.values():
            if st.kind is StateKind.BASIC and st.contains:
                raise MalformedModelError(f"basic state {st.id} contains children")
            for cid in st.contains:
                if cid not in self.states:
                    raise MalformedModelError(f"state {st.id} contains missing state {cid}")
                if cid in parent:
                    raise MalformedModelError(f"state {cid} has parents {parent[cid]} and {st.id}")
                parent[cid] = st.id
        return parent

    def roots(self) -> list[int]:
        parent = self.parents()
        return sorted(sid for sid in self.states if sid not in parent)

    def check_forest(self) -> list[int]:
        """Return the roots, raising :class:`MalformedModelError` on cycles."""
        roots = self.roots()
        reached = 0
        stack = list(roots)
        while stack:
            st = self.states[stack.pop()]
            reached += 1
            stack.extend(st.contains)
        if reached != len(self.states):
            raise MalformedModelError("containment cycle")
        return roots

    def basics(self) -> list[State]:
        return [st for st in self.states.values() if st.kind is StateKind.BASIC]

    def copy(self) -> Statechart:
        other = Statechart()
        other.next_id = self.next_id
        other.top_state = self.top_state
        for st in self.states.values():
            contains = st.contains if st.kind is StateKind.BASIC else set(st.contains)
            other.states[st.id] = State(st.id, st.name, st.kind, contains)
        other.hyperedges = dict(self.hyperedges)
        return other


class EquivMap:
    """Injective map from live places to the OR state standing for them."""

    def __init__(self):
        self.forward: dict[int, int] = {}
        self._reverse: dict[int, int] = {}

    def __getitem__(self, pid: int) -> int:
        return self.forward[pid]

    def __contains__(self, pid: int) -> bool:
        return pid in self.forward

    def __len__(self):
        return len(self.forward)

    def set(self, pid: int, or_id: int) -> None:
        owner = self._reverse.get(or_id)
        if owner is not None and owner != pid:
            raise ModelError(f"OR {or_id} already equivalent to place {owner}")
        old = self.forward.get(pid)
        if old is not None:
            del self._reverse[old]
        self.forward[pid] = or_id
        self._reverse[or_id] = pid

    def pop(self, pid: int) -> int:
        or_id = self.forward.pop(pid)
        del self._reverse[or_id]
        return or_id

    def is_injective(self) -> bool:
        return len(set(self.forward.values())) == len(self.forward)

    def copy(self) -> EquivMap:
        other = EquivMap()
        other.forward = dict(self.forward)
        other._reverse = dict(self._reverse)
        return other
