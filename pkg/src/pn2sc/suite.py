"""Hand-built regression nets.

Small analogues of classic workflow shapes with known verdicts (which nets
reduce to a single place and which get stuck), plus an 11-place /
10-transition net whose reduction takes one AND step and four OR steps.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from pn2sc.models import PetriNet


def build_net(places: Sequence[str], transitions: Sequence[tuple[str, Sequence[str], Sequence[str]]]) -> PetriNet:
    """Build a net from place names and ``(name, inputs, outputs)`` triples.

    Places get ids first, in the given order, then transitions.
    """
    net = PetriNet()
    by_name = {}
    for name in places:
        if name in by_name:
            raise ValueError(f"duplicate place name {name!r}")
        by_name[name] = net.add_place(name).id
    for name, inputs, outputs in transitions:
        t = net.add_transition(name).id
        for p in inputs:
            net.add_arc(by_name[p], t)
        for p in outputs:
            net.add_arc(t, by_name[p])
    return net


def trace_example() -> PetriNet:
    """Seven parallel branches, then a two-step sequence where the first step has
    a parallel alternative; merging across it leaves a loop."""
    group = [f"g{i}" for i in range(1, 8)]
    return build_net(
        ["a", *group, "b", "c", "d"],
        [
            ("start", [], ["a"]),
            ("fork", ["a"], group),
            ("join", group, ["b"]),
            ("x1", ["b"], ["c"]),
            ("x2", ["b"], ["c"]),
            ("y1", ["c"], ["d"]),
            ("y2", ["c"], ["d"]),
            ("cancel", ["c"], []),
            ("end", ["d"], []),
            ("notify", ["d"], []),
        ],
    )


def chain(n: int = 2) -> PetriNet:
    names = [f"p{i}" for i in range(1, n + 1)]
    return build_net(names, [(f"t{i}", [names[i - 1]], [names[i]]) for i in range(1, n)])


def tc01_artificial() -> PetriNet:
    """Parallel split of two sequences, then a choice between two routes."""
    return build_net(
        ["s", "a1", "a2", "b1", "b2", "c", "d1", "d2", "e"],
        [
            ("split", ["s"], ["a1", "b1"]),
            ("work_a", ["a1"], ["a2"]),
            ("work_b", ["b1"], ["b2"]),
            ("sync", ["a2", "b2"], ["c"]),
            ("opt1", ["c"], ["d1"]),
            ("opt2", ["c"], ["d2"]),
            ("merge1", ["d1"], ["e"]),
            ("merge2", ["d2"], ["e"]),
        ],
    )


def tc02_insurance() -> PetriNet:
    """Register, check policy and damage in parallel, decide, then pay or reject."""
    return build_net(
        ["received", "policy", "damage", "policy_ok", "damage_ok", "assessed", "closed"],
        [
            ("register", ["received"], ["policy", "damage"]),
            ("check_policy", ["policy"], ["policy_ok"]),
            ("check_damage", ["damage"], ["damage_ok"]),
            ("assess", ["policy_ok", "damage_ok"], ["assessed"]),
            ("pay", ["assessed"], ["closed"]),
            ("reject", ["assessed"], ["closed"]),
            ("archive", ["closed"], []),
        ],
    )


def tc03_patient() -> PetriNet:
    """Admission and discharge sequences around an unstructured core where
    one examination feeds a result into the other branch."""
    return build_net(
        ["arrived", "triaged", "derm", "lab", "derm_done", "sample", "lab_done", "ready", "left"],
        [
            ("admit", ["arrived"], ["triaged"]),
            ("route", ["triaged"], ["derm", "lab"]),
            ("examine", ["derm"], ["derm_done", "sample"]),
            ("analyse", ["lab", "sample"], ["lab_done"]),
            ("conclude", ["derm_done", "lab_done"], ["ready"]),
            ("discharge", ["ready"], ["left"]),
        ],
    )


def tc04_loop() -> PetriNet:
    """A simple redo loop."""
    return build_net(
        ["s", "a", "b", "e"],
        [
            ("enter", ["s"], ["a"]),
            ("work", ["a"], ["b"]),
            ("redo", ["b"], ["a"]),
            ("leave", ["b"], ["e"]),
        ],
    )


def tc05_crossed_sync() -> PetriNet:
    """Two parallel branches with a cross synchronization between them."""
    return build_net(
        ["s", "a", "b", "c", "m", "d", "e"],
        [
            ("fork", ["s"], ["a", "b"]),
            ("ta", ["a"], ["c", "m"]),
            ("tb", ["b", "m"], ["d"]),
            ("join", ["c", "d"], ["e"]),
        ],
    )


def tc06_loop_exit_branch() -> PetriNet:
    """A retry loop from inside one parallel branch back above the fork, plus
    an exit from that branch which bypasses the join."""
    return build_net(
        ["s", "a", "b", "a2", "e", "x"],
        [
            ("fork", ["s"], ["a", "b"]),
            ("step", ["a"], ["a2"]),
            ("retry", ["a2"], ["s"]),
            ("join", ["a2", "b"], ["e"]),
            ("escape", ["a"], ["x"]),
        ],
    )


def tc07_nested_loops() -> PetriNet:
    """An inner redo loop nested in an outer repeat loop."""
    return build_net(
        ["s", "a", "b", "c", "d", "e"],
        [
            ("enter", ["s"], ["a"]),
            ("work", ["a"], ["b"]),
            ("retry", ["b"], ["a"]),
            ("next", ["b"], ["c"]),
            ("check", ["c"], ["d"]),
            ("redo", ["d"], ["a"]),
            ("leave", ["d"], ["e"]),
        ],
    )


def tc08_nested_parallel_choice() -> PetriNet:
    """A choice whose one alternative is a parallel block."""
    return build_net(
        ["s", "p1", "p2", "q1", "q2", "m", "e"],
        [
            ("split", ["s"], ["p1", "p2"]),
            ("do1", ["p1"], ["q1"]),
            ("do2", ["p2"], ["q2"]),
            ("join", ["q1", "q2"], ["m"]),
            ("skip", ["s"], ["m"]),
            ("end", ["m"], ["e"]),
        ],
    )


def tc09_overlapping_forks() -> PetriNet:
    """Two forks whose branches are joined crosswise."""
    return build_net(
        ["s", "a", "b", "c", "d", "e", "f"],
        [
            ("fork1", ["s"], ["a", "b"]),
            ("fork2", ["a"], ["c", "d"]),
            ("join1", ["b", "c"], ["e"]),
            ("join2", ["d", "e"], ["f"]),
        ],
    )


def tc10_loop_into_branch() -> PetriNet:
    """A loop that re-enters one branch of a parallel block from outside it."""
    return build_net(
        ["s", "a", "b", "a2", "b2", "e"],
        [
            ("fork", ["s"], ["a", "b"]),
            ("ta", ["a"], ["a2"]),
            ("tb", ["b"], ["b2"]),
            ("join", ["a2", "b2"], ["e"]),
            ("again", ["e"], ["a"]),
        ],
    )


def tc11_loop_around_parallel() -> PetriNet:
    """A parallel block repeated by an outer loop."""
    return build_net(
        ["s", "a1", "a2", "b1", "b2", "c", "e"],
        [
            ("fork", ["s"], ["a1", "b1"]),
            ("ta", ["a1"], ["a2"]),
            ("tb", ["b1"], ["b2"]),
            ("join", ["a2", "b2"], ["c"]),
            ("repeat", ["c"], ["s"]),
            ("leave", ["c"], ["e"]),
        ],
    )


@dataclass(frozen=True)
class RegressionCase:
    name: str
    build: Callable[[], PetriNet]
    reducible: bool


CASES: tuple[RegressionCase, ...] = (
    RegressionCase("chain3", lambda: chain(3), True),
    RegressionCase("trace_example", trace_example, True),
    RegressionCase("tc01_artificial", tc01_artificial, True),
    RegressionCase("tc02_insurance", tc02_insurance, True),
    RegressionCase("tc03_patient", tc03_patient, False),
    RegressionCase("tc04_loop", tc04_loop, True),
    RegressionCase("tc05_crossed_sync", tc05_crossed_sync, False),
    RegressionCase("tc06_loop_exit_branch", tc06_loop_exit_branch, False),
    RegressionCase("tc07_nested_loops", tc07_nested_loops, True),
    RegressionCase("tc08_nested_parallel_choice", tc08_nested_parallel_choice, True),
    RegressionCase("tc09_overlapping_forks", tc09_overlapping_forks, False),
    RegressionCase("tc10_loop_into_branch", tc10_loop_into_branch, False),
    RegressionCase("tc11_loop_around_parallel", tc11_loop_around_parallel, True),
)


def case(name: str) -> RegressionCase:
    for c in CASES:
        if c.name == name:
            return c
    raise KeyError(name)
