import pytest

from pn2sc.engine import transform
from pn2sc.equivalence import (
    canonical_net,
    canonical_statechart,
    nets_equivalent,
    statecharts_equivalent,
)
from pn2sc.errors import MalformedModelError, PreconditionError
from pn2sc.models import PetriNet, Statechart, StateKind
from pn2sc.suite import CASES, build_net, chain, tc01_artificial, tc02_insurance, tc03_patient


def permuted_chain():
    # same chain p1 -> t1 -> p2, transition created first
    net = PetriNet()
    t = net.add_transition("t1").id
    b = net.add_place("p2").id
    a = net.add_place("p1").id
    net.add_arc(t, b)
    net.add_arc(a, t)
    return net


def test_statechart_reflexive():
    sc = transform(tc01_artificial()).statechart
    assert statecharts_equivalent(sc, sc)


def test_statechart_ignores_ids_and_compound_names():
    a = Statechart()
    x, y = a.add_basic("x").id, a.add_basic("y").id
    a.add_compound(StateKind.OR, [x, y], name="first")
    b = Statechart()
    y2 = b.add_basic("y", id=10).id
    x2 = b.add_basic("x", id=3).id
    b.add_compound(StateKind.OR, [y2, x2], name="other")
    assert statecharts_equivalent(a, b)


def test_statechart_distinguishes_kind():
    a = Statechart()
    a.add_compound(StateKind.OR, [a.add_basic("x").id])
    b = Statechart()
    b.add_compound(StateKind.AND, [b.add_basic("x").id])
    assert not statecharts_equivalent(a, b)


def test_statechart_duplicate_names_multiset():
    a = Statechart()
    a.add_compound(StateKind.OR, [a.add_basic("x").id, a.add_basic("x").id])
    b = Statechart()
    b.add_compound(StateKind.OR, [b.add_basic("x").id])
    assert not statecharts_equivalent(a, b)
    assert "B(\"x\"),B(\"x\")" in canonical_statechart(a).text


def test_statechart_different_nets_differ():
    a = transform(tc01_artificial()).statechart
    b = transform(tc02_insurance()).statechart
    assert not statecharts_equivalent(a, b)


def test_statechart_seeds_agree():
    forms = {canonical_statechart(transform(tc02_insurance(), "random", s).statechart) for s in range(8)}
    assert len(forms) == 1


def test_statechart_equivalence_relation_spot_check():
    outs = [transform(c.build()) for c in CASES if c.reducible]
    scs = [o.statechart for o in outs]
    for a in scs:
        for b in scs:
            assert statecharts_equivalent(a, b) == statecharts_equivalent(b, a)
    again = [transform(c.build(), "random", 3).statechart for c in CASES if c.reducible]
    for a, b in zip(scs, again):
        assert statecharts_equivalent(a, b)


def test_statechart_rejects_cycle():
    sc = Statechart()
    a = sc.add_compound(StateKind.OR, [], name="a").id
    b = sc.add_compound(StateKind.OR, [a], name="b").id
    sc.states[a] = sc.states[a].__class__(a, "a", StateKind.OR, frozenset({b}))
    with pytest.raises(MalformedModelError):
        canonical_statechart(sc)


def test_net_permuted_copies_equal():
    assert nets_equivalent(chain(2), permuted_chain())
    assert canonical_net(chain(2)).exact


def test_net_chain_lengths_differ():
    assert not nets_equivalent(chain(2), chain(3))


def test_net_symmetric_inexact():
    net = PetriNet()
    t = net.add_transition("t").id
    for _ in range(2):
        net.add_arc(net.add_place("a").id, t)
    assert not canonical_net(net).exact


def test_net_merged_places_name_blind():
    a, b = PetriNet(), PetriNet()
    a.add_place("p_5", merged=True)
    b.add_place("p_9", merged=True)
    assert nets_equivalent(a, b)
    c = PetriNet()
    c.add_place("p_9")
    assert not nets_equivalent(b, c)


def test_net_stuck_residuals_agree_across_seeds():
    forms = {canonical_net(transform(tc03_patient(), "random", s).net) for s in range(8)}
    assert len(forms) == 1


def test_net_requires_valid():
    net = chain(2)
    net.transitions[2].prep.add(1)
    with pytest.raises(PreconditionError):
        canonical_net(net)
