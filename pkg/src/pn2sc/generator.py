"""Synthetic reducible nets for the performance ladder.

A random block is drawn from a small SEQ/PAR grammar (a leaf is a single
place; SEQ chains blocks through fresh transitions; PAR forks into parallel
branches and joins them back), then cloned and chained until the net has
the requested number of elements.  Every such net reduces to a single
place: PAR branches satisfy the AND precondition once each branch is down
to one place, and SEQ links satisfy the OR precondition.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from pn2sc.errors import GeneratorSpecError
from pn2sc.models import PetriNet

LADDER = (200, 1000, 5000, 10000, 40000, 200000)


@dataclass(frozen=True)
class Template:
    seq_len: tuple[int, int] = (2, 4)
    par_branches: tuple[int, int] = (2, 3)
    depth: int = 3

    def __post_init__(self):
        lo, hi = self.seq_len
        if lo < 2 or hi < lo:
            raise GeneratorSpecError(f"bad sequence length range {self.seq_len}")
        lo, hi = self.par_branches
        if lo < 2 or hi < lo:
            raise GeneratorSpecError(f"bad branch count range {self.par_branches}")
        if self.depth < 0:
            raise GeneratorSpecError("depth must be >= 0")


@dataclass(frozen=True)
class GeneratorSpec:
    target_elements: int
    seed: int = 0
    template: Template = Template()

    def __post_init__(self):
        if self.target_elements < 1:
            raise GeneratorSpecError(f"target_elements must be >= 1, got {self.target_elements}")


# Block trees: "L" is a leaf, ("S", [children]) a sequence, ("P", [children]) a parallel block.

def _draw(rng: random.Random, tpl: Template, depth: int):
    if depth == 0 or rng.random() < 0.25:
        return "L"
    if rng.random() < 0.5:
        kind, (lo, hi) = "S", tpl.seq_len
    else:
        kind, (lo, hi) = "P", tpl.par_branches
    return (kind, [_draw(rng, tpl, depth - 1) for _ in range(rng.randint(lo, hi))])


def block_size(block) -> int:
    """Places plus transitions contributed by ``block``."""
    if block == "L":
        return 1
    kind, children = block
    inner = sum(block_size(c) for c in children)
    if kind == "S":
        return inner + len(children) - 1
    # entry place, fork, join, exit place
    return inner + 4


class _Builder:
    def __init__(self):
        self.net = PetriNet()
        self.places = 0
        self.transitions = 0

    def place(self) -> int:
        self.places += 1
        return self.net.add_place(f"p{self.places}").id

    def transition(self) -> int:
        self.transitions += 1
        return self.net.add_transition(f"t{self.transitions}").id

    def link(self, src_place: int, dst_places) -> int:
        t = self.transition()
        self.net.add_arc(src_place, t)
        for p in dst_places:
            self.net.add_arc(t, p)
        return t

    def build(self, block) -> tuple[int, int]:
        """Instantiate ``block``; return its (entry place, exit place)."""
        if block == "L":
            p = self.place()
            return p, p
        kind, children = block
        if kind == "S":
            entry, exit_ = self.build(children[0])
            for child in children[1:]:
                c_entry, c_exit = self.build(child)
                self.link(exit_, [c_entry])
                exit_ = c_exit
            return entry, exit_
        entry = self.place()
        fork = self.transition()
        self.net.add_arc(entry, fork)
        join = self.transition()
        for child in children:
            c_entry, c_exit = self.build(child)
            self.net.add_arc(fork, c_entry)
            self.net.add_arc(c_exit, join)
        exit_ = self.place()
        self.net.add_arc(join, exit_)
        return entry, exit_


def generate(spec: GeneratorSpec) -> PetriNet:
    """Build a reducible net with exactly ``spec.target_elements`` elements."""
    rng = random.Random(spec.seed)
    target = spec.target_elements
    block = _draw(rng, spec.template, spec.template.depth)
    while block_size(block) > target:
        block = _draw(rng, spec.template, spec.template.depth) if rng.random() < 0.5 else "L"
    size = block_size(block)

    copies = (target + 1) // (size + 1)
    remainder = target - (copies * size + copies - 1)

    b = _Builder()
    entry, exit_ = b.build(block)
    for _ in range(copies - 1):
        c_entry, c_exit = b.build(block)
        b.link(exit_, [c_entry])
        exit_ = c_exit
    for _ in range(remainder // 2):
        p = b.place()
        b.link(exit_, [p])
        exit_ = p
    if remainder % 2:
        # a sink transition changes the element count but is never reduced
        b.link(exit_, [])
    return b.net


def ladder_label(target: int) -> str:
    return f"sp{target}"
