"""Exhaustive reference for the reduction rules.

Works on its own frozen representation of the net and explores every
possible rule-application order, so it shares no code with the engine's
matcher, scheduler or statechart construction.  Places are keyed by the
set of input places they stand for; each carries the sorted child
encodings of its OR image.
"""
from __future__ import annotations

import json
from functools import lru_cache


def _q(name):
    return json.dumps(name, ensure_ascii=False)


def _freeze(net):
    places = [(frozenset([p.id]), (f"B({_q(p.name)})",)) for p in net.places.values()]
    key_of = {p: frozenset([p]) for p in net.places}
    transitions = tuple(sorted(
        (t.id, frozenset(key_of[p] for p in t.prep), frozenset(key_of[p] for p in t.postp))
        for t in net.transitions.values()
    ))
    return frozenset(places), transitions


def _moves(places, transitions):
    """Yield every successor state reachable by one rule application."""
    pmap = dict(places)
    pret = {k: set() for k in pmap}
    postt = {k: set() for k in pmap}
    for tid, pre, post in transitions:
        for k in pre:
            postt[k].add(tid)
        for k in post:
            pret[k].add(tid)

    for tid, pre, post in transitions:
        for group in (pre, post):
            if len(group) < 2:
                continue
            ctx = {(frozenset(pret[k]), frozenset(postt[k])) for k in group}
            if len(ctx) != 1:
                continue
            new_key = frozenset().union(*group)
            inner = ",".join(sorted("O[" + ",".join(pmap[k]) + "]" for k in group))
            new_places = {k: v for k, v in pmap.items() if k not in group}
            new_places[new_key] = ("A[" + inner + "]",)

            def sub(s, group=group, new_key=new_key):
                return frozenset(new_key if k in group else k for k in s)

            new_ts = tuple((t2, sub(a), sub(b)) for t2, a, b in transitions)
            yield frozenset(new_places.items()), new_ts

        if len(pre) == 1 and len(post) == 1:
            (q,), (r,) = pre, post
            blocked = any(
                (q in a and r in a) or (q in b and r in b) for _, a, b in transitions
            )
            if blocked:
                continue
            new_key = q | r
            new_places = {k: v for k, v in pmap.items() if k not in (q, r)}
            new_places[new_key] = tuple(sorted(pmap[q] + pmap[r]))

            def sub(s, q=q, r=r, new_key=new_key):
                return frozenset(new_key if k in (q, r) else k for k in s)

            new_ts = tuple((t2, sub(a), sub(b)) for t2, a, b in transitions if t2 != tid)
            yield frozenset(new_places.items()), new_ts


def explore(net):
    """Return the set of terminal outcomes over all application orders.

    Each outcome is ``("success", statechart_text)`` or
    ``("stuck", (residual OR encodings, residual transition links))``; the
    statechart text uses the same encoding as ``canonical_statechart``.
    """
    names = {p.id: p.name for p in net.places.values()}
    tnames = {t.id: t.name for t in net.transitions.values()}
    edges = sorted(
        f"edge H({_q(t.name)})({json.dumps(sorted(names[p] for p in t.prep), ensure_ascii=False)}"
        f"->{json.dumps(sorted(names[p] for p in t.postp), ensure_ascii=False)})"
        for t in net.transitions.values()
    )

    @lru_cache(maxsize=None)
    def go(places, transitions):
        outcomes = set()
        terminal = True
        for nxt in _moves(places, transitions):
            terminal = False
            outcomes |= go(*nxt)
        if not terminal:
            return frozenset(outcomes)
        if len(places) == 1:
            ((_, children),) = places
            top = "top A[O[" + ",".join(children) + "]]"
            return frozenset([("success", "\n".join(["statechart", top] + edges))])
        enc = {k: "O[" + ",".join(v) + "]" for k, v in places}
        residual = tuple(sorted(enc.values()))
        links = tuple(sorted(
            f"{tnames[tid]}:{sorted(enc[k] for k in a)}->{sorted(enc[k] for k in b)}"
            for tid, a, b in transitions
        ))
        return frozenset([("stuck", (residual, links))])

    return go(*_freeze(net))


def verdicts(net):
    return {kind for kind, _ in explore(net)}
