"""Petri-Net to statechart reduction.

:func:`initialize` maps every place to a Basic state wrapped in an OR state
and every transition to a hyperedge.  :func:`reduce` then applies the AND
and OR rules until none matches, destroying the net as the statechart
hierarchy grows.  A worklist of candidate transitions is maintained so that
after each application only the neighbourhood of the merged place is
re-examined.
"""
from __future__ import annotations

import enum
import heapq
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Union

from pn2sc.errors import MalformedModelError, MissingNodeError, PreconditionError, StaleMatchError
from pn2sc.models import EquivMap, PetriNet, Statechart, StateKind, validate


class Side(str, enum.Enum):
    PREP = "prep"
    POSTP = "postp"


@dataclass(frozen=True)
class AndMatch:
    t: int
    side: Side
    group: frozenset[int]

    @property
    def rule(self) -> str:
        return f"AND-{self.side.value}"


@dataclass(frozen=True)
class OrMatch:
    t: int
    q: int
    r: int

    rule = "OR"


Match = Union[AndMatch, OrMatch]


@dataclass
class Snapshot:
    step: int
    rule: str
    places: int
    transitions: int
    net: PetriNet | None = None
    statechart: Statechart | None = None


class TraceRecorder:
    """Snapshot sink; pass an instance as ``trace`` to :func:`initialize`."""

    def __init__(self, keep_models: bool = True):
        self.keep_models = keep_models
        self.snapshots: list[Snapshot] = []

    def __call__(self, snapshot: Snapshot) -> None:
        self.snapshots.append(snapshot)

    @property
    def rules(self) -> list[str]:
        return [s.rule for s in self.snapshots]


class Worklist:
    """Ordered set of transition ids, popped in ascending order."""

    def __init__(self, items: Iterable[int] = ()):
        self._heap = sorted(set(items))
        self._members = set(self._heap)

    def push(self, tid: int) -> None:
        if tid not in self._members:
            self._members.add(tid)
            heapq.heappush(self._heap, tid)

    def extend(self, tids: Iterable[int]) -> None:
        for tid in tids:
            self.push(tid)

    def pop(self) -> int:
        tid = heapq.heappop(self._heap)
        self._members.remove(tid)
        return tid

    def __len__(self):
        return len(self._members)

    def __contains__(self, tid):
        return tid in self._members

    def __iter__(self):
        return iter(sorted(self._members))


class RandomWorklist(Worklist):
    """Set of transition ids popped in a seeded pseudo-random order."""

    def __init__(self, items: Iterable[int] = (), seed: int | None = None):
        self._rng = random.Random(seed)
        self._items = sorted(set(items))
        self._rng.shuffle(self._items)
        self._members = set(self._items)

    def push(self, tid: int) -> None:
        if tid not in self._members:
            self._members.add(tid)
            self._items.append(tid)

    def pop(self) -> int:
        items = self._items
        i = self._rng.randrange(len(items))
        items[i], items[-1] = items[-1], items[i]
        tid = items.pop()
        self._members.remove(tid)
        return tid


@dataclass
class TransformState:
    net: PetriNet
    sc: Statechart
    equiv: EquivMap
    worklist: Worklist
    # place id -> Basic state id, fixed at initialization
    basic_of: dict[int, int] = field(default_factory=dict)
    trace: Callable[[Snapshot], None] | None = None
    applications: dict[str, int] = field(default_factory=lambda: {"AND": 0, "OR": 0})
    step: int = 0

    @property
    def rule_applications(self) -> int:
        return self.applications["AND"] + self.applications["OR"]


@dataclass
class Success:
    statechart: Statechart
    net: PetriNet
    rule_applications: int
    applications: dict[str, int]

    ok = True


@dataclass
class Stuck:
    """Residual net plus the partial statechart forest built so far."""

    net: PetriNet
    statechart: Statechart
    rule_applications: int
    applications: dict[str, int]

    ok = False

    @property
    def roots(self) -> list[int]:
        return self.statechart.roots()


ReductionOutcome = Union[Success, Stuck]


def _emit(state: TransformState, rule: str) -> None:
    hook = state.trace
    if hook is None:
        return
    keep = getattr(hook, "keep_models", False)
    hook(Snapshot(
        state.step, rule, len(state.net.places), len(state.net.transitions),
        state.net.copy() if keep else None,
        state.sc.copy() if keep else None,
    ))


def initialize(net: PetriNet, sc: Statechart | None = None,
               trace: Callable[[Snapshot], None] | None = None) -> TransformState:
    """Build the initial statechart for ``net``.

    One Basic state plus an enclosing OR per place, one hyperedge per
    transition whose ``rnext``/``next`` point at the Basic states of the
    transition's input/output places.  The net is taken over by the returned
    state and destroyed by :func:`reduce`.
    """
    problems = validate(net)
    if problems:
        raise PreconditionError(f"invalid net: {problems[0].message} ({len(problems)} violation(s))")
    if sc is None:
        sc = Statechart()
    elif sc.states or sc.hyperedges:
        raise PreconditionError("statechart must be empty before initialization")

    equiv = EquivMap()
    basic_of: dict[int, int] = {}
    for pid in sorted(net.places):
        b = sc.add_basic(net.places[pid].name)
        o = sc.add_compound(StateKind.OR, {b.id})
        basic_of[pid] = b.id
        equiv.set(pid, o.id)
    for tid in sorted(net.transitions):
        t = net.transitions[tid]
        sc.add_hyperedge(t.name, (basic_of[p] for p in t.prep), (basic_of[p] for p in t.postp))

    state = TransformState(net, sc, equiv, Worklist(net.transitions), basic_of, trace)
    _emit(state, "init")
    return state


def _transition(state: TransformState, tid: int):
    try:
        return state.net.transitions[tid]
    except KeyError:
        raise MissingNodeError(tid, "transition") from None


def _uniform_group(places, group) -> bool:
    it = iter(group)
    first = places[next(it)]
    pret, postt = first.pret, first.postt
    for pid in it:
        p = places[pid]
        if p.pret != pret or p.postt != postt:
            return False
    return True


def match_and(state: TransformState, tid: int) -> AndMatch | None:
    """Return an AND match for transition ``tid``, trying its preset first."""
    t = _transition(state, tid)
    places = state.net.places
    if len(t.prep) > 1 and _uniform_group(places, t.prep):
        return AndMatch(tid, Side.PREP, frozenset(t.prep))
    if len(t.postp) > 1 and _uniform_group(places, t.postp):
        return AndMatch(tid, Side.POSTP, frozenset(t.postp))
    return None


def match_or(state: TransformState, tid: int) -> OrMatch | None:
    """Return an OR match for ``tid`` if it links exactly one place to another.

    The match is blocked when some transition (``tid`` itself included) has
    both places in its preset, or both in its postset.
    """
    t = _transition(state, tid)
    if len(t.prep) != 1 or len(t.postp) != 1:
        return None
    (q,) = t.prep
    (r,) = t.postp
    pq, pr = state.net.places[q], state.net.places[r]
    # transitions having both q and r in their preset are q.postt & r.postt
    if not pq.postt.isdisjoint(pr.postt) or not pq.pret.isdisjoint(pr.pret):
        return None
    return OrMatch(tid, q, r)


def _apply_and(state: TransformState, m: AndMatch) -> None:
    net, sc, equiv = state.net, state.sc, state.equiv
    survivor = min(m.group)
    a = sc.add_compound(StateKind.AND, {equiv[q] for q in m.group})
    p = sc.add_compound(StateKind.OR, {a.id})
    for q in m.group:
        equiv.pop(q)
        if q != survivor:
            net.remove_place(q)
    equiv.set(survivor, p.id)
    place = net.places[survivor]
    place.merged = True
    state.worklist.extend(place.pret)
    state.worklist.extend(place.postt)
    state.applications["AND"] += 1
    state.step += 1
    _emit(state, m.rule)


def _apply_or(state: TransformState, m: OrMatch) -> None:
    net, sc, equiv = state.net, state.sc, state.equiv
    q_or = sc.remove_state(equiv.pop(m.q))
    r_or = sc.remove_state(equiv.pop(m.r))
    # merge the smaller child set into the larger so long sequences stay linear
    big, small = (q_or.contains, r_or.contains)
    if len(big) < len(small):
        big, small = small, big
    big |= small
    net.remove_transition(m.t)
    q = net.remove_place(m.q)
    r = net.remove_place(m.r)
    pret = q.pret | r.pret
    postt = q.postt | r.postt
    merged = net.add_place(merged=True)
    merged.name = f"p_{merged.id}"
    for tid in pret:
        net.add_arc(tid, merged.id)
    for tid in postt:
        net.add_arc(merged.id, tid)
    p_sc = sc.add_compound(StateKind.OR, big, check=False)
    equiv.set(merged.id, p_sc.id)
    state.worklist.extend(pret)
    state.worklist.extend(postt)
    state.applications["OR"] += 1
    state.step += 1
    _emit(state, m.rule)


def apply_and(state: TransformState, m: AndMatch) -> None:
    """Merge the places of ``m.group`` into their minimum-id member.

    The statechart gains an AND over the group's OR images, wrapped in a new
    OR that becomes the survivor's image.
    """
    t = state.net.transitions.get(m.t)
    side = None if t is None else (t.prep if m.side is Side.PREP else t.postp)
    if not side or side != m.group or len(side) < 2 or not _uniform_group(state.net.places, side):
        raise StaleMatchError(f"AND match on transition {m.t} no longer holds")
    _apply_and(state, m)


def apply_or(state: TransformState, m: OrMatch) -> None:
    """Replace ``m.t`` and its two places by one fresh place.

    The fresh place inherits the union of both places' arcs (minus ``m.t``);
    its OR image holds the children of both consumed OR states.
    """
    if m.t not in state.net.transitions or match_or(state, m.t) != m:
        raise StaleMatchError(f"OR match on transition {m.t} no longer holds")
    _apply_or(state, m)


def apply(state: TransformState, m: Match) -> None:
    if isinstance(m, AndMatch):
        apply_and(state, m)
    else:
        apply_or(state, m)


def find_match(state: TransformState, tid: int) -> Match | None:
    return match_and(state, tid) or match_or(state, tid)


def all_matches(state: TransformState) -> list[Match]:
    """Every AND/OR match (both AND sides) over all live transitions."""
    out: list[Match] = []
    places = state.net.places
    for tid in sorted(state.net.transitions):
        t = state.net.transitions[tid]
        for side, group in ((Side.PREP, t.prep), (Side.POSTP, t.postp)):
            if len(group) > 1 and _uniform_group(places, group):
                out.append(AndMatch(tid, side, frozenset(group)))
        m = match_or(state, tid)
        if m is not None:
            out.append(m)
    return out


def finalize_success(state: TransformState) -> Statechart:
    """Wrap the last place's OR image in a fresh AND root and make it the top state."""
    if len(state.net.places) != 1:
        raise PreconditionError(f"finalize needs exactly one place, net has {len(state.net.places)}")
    (last,) = state.net.places
    sc = state.sc
    if sc.top_state is None:
        st = sc.add_compound(StateKind.AND, {state.equiv[last]})
        sc.top_state = st.id
    return sc


def check_invariants(state: TransformState) -> None:
    """Raise :class:`MalformedModelError` if the working state is inconsistent."""
    problems = validate(state.net)
    if problems:
        raise MalformedModelError(f"net invariant broken: {problems[0].message}")
    equiv = state.equiv
    if set(equiv.forward) != set(state.net.places):
        raise MalformedModelError("equiv is not total over live places")
    if not equiv.is_injective():
        raise MalformedModelError("equiv is not injective")
    parent = state.sc.parents()
    state.sc.check_forest()
    for pid, or_id in equiv.forward.items():
        st = state.sc.states.get(or_id)
        if st is None or st.kind is not StateKind.OR:
            raise MalformedModelError(f"equiv({pid}) is not a live OR state")
        if or_id in parent:
            raise MalformedModelError(f"equiv({pid}) = {or_id} has a parent")


POLICIES = ("deterministic", "random")


def reduce(state: TransformState, policy: str = "deterministic", seed: int | None = None,
           debug: bool = False) -> ReductionOutcome:
    """Apply the reduction rules until no transition matches.

    ``policy`` selects the worklist order: ``"deterministic"`` pops the
    smallest transition id, ``"random"`` pops in an order drawn from
    ``seed``.  AND is tried before OR on every popped transition.  Once the
    worklist drains, all live transitions are rescanned before giving up.
    """
    if policy in ("det", "deterministic"):
        wl: Worklist = Worklist(state.worklist)
    elif policy == "random":
        wl = RandomWorklist(state.worklist, seed)
    else:
        raise ValueError(f"unknown policy {policy!r}")
    state.worklist = wl
    net = state.net
    transitions = net.transitions
    while True:
        while wl:
            tid = wl.pop()
            if tid not in transitions:
                continue
            m = match_and(state, tid)
            if m is not None:
                _apply_and(state, m)
            else:
                m = match_or(state, tid)
                if m is None:
                    continue
                _apply_or(state, m)
            if debug:
                check_invariants(state)
        for tid in sorted(transitions):
            if find_match(state, tid) is not None:
                wl.push(tid)
        if not wl:
            break

    if len(net.places) == 1:
        return Success(finalize_success(state), net, state.rule_applications, dict(state.applications))
    return Stuck(net, state.sc, state.rule_applications, dict(state.applications))


def transform(net: PetriNet, policy: str = "deterministic", seed: int | None = None,
              trace: Callable[[Snapshot], None] | None = None, debug: bool = False) -> ReductionOutcome:
    """Initialize and reduce ``net`` in one call (``net`` is consumed)."""
    return reduce(initialize(net, trace=trace), policy, seed, debug)
