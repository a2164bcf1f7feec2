"""Petri-Net to hierarchical statechart transformation by AND/OR reduction."""
from pn2sc.documents import read_net, read_statechart, write_net, write_statechart
from pn2sc.dot import export_dot
from pn2sc.engine import (
    AndMatch,
    OrMatch,
    Stuck,
    Success,
    TraceRecorder,
    apply_and,
    apply_or,
    finalize_success,
    initialize,
    match_and,
    match_or,
    reduce,
    transform,
)
from pn2sc.equivalence import canonical_net, canonical_statechart, statecharts_equivalent
from pn2sc.generator import GeneratorSpec, generate
from pn2sc.models import PetriNet, Statechart, StateKind, validate

__version__ = "0.1.0"
