import pytest

from pn2sc.dot import AND_CLUSTER, OR_CLUSTER, export_dot, write_trace
from pn2sc.engine import TraceRecorder, transform
from pn2sc.models import PetriNet, Statechart, StateKind
from pn2sc.suite import chain, trace_example


def test_single_place_net():
    net = PetriNet()
    net.add_place("a")
    text = export_dot(net).decode()
    assert text.count("shape=circle") == 1
    assert "shape=box" not in text
    assert text.startswith('digraph "G" {')


def test_chain_net_arcs():
    text = export_dot(chain(2)).decode()
    assert "n0 -> n2;" in text and "n2 -> n1;" in text
    assert "fillcolor=black" in text


def test_nested_clusters_styles():
    sc = Statechart()
    inner = sc.add_compound(StateKind.OR, [sc.add_basic("x").id]).id
    sc.add_compound(StateKind.AND, [inner])
    lines = export_dot(sc).decode().splitlines()
    and_line = next(i for i, l in enumerate(lines) if AND_CLUSTER in l)
    or_line = next(i for i, l in enumerate(lines) if OR_CLUSTER in l)
    assert and_line < or_line
    assert "solid" in AND_CLUSTER and "dashed" in OR_CLUSTER
    assert lines[or_line].startswith("    ")  # nested one level deeper


def test_success_statechart_export():
    text = export_dot(transform(chain(3)).statechart).decode()
    assert text.count("fillcolor=yellow") == 3
    assert text.count("fillcolor=black") == 2


def test_deterministic_bytes():
    assert export_dot(transform(trace_example()).statechart) == export_dot(transform(trace_example()).statechart)


def test_trace_files(tmp_path):
    rec = TraceRecorder()
    transform(trace_example(), trace=rec)
    paths = write_trace(rec.snapshots, tmp_path)
    assert len(paths) == 6
    assert [p.name.split("_", 2)[2] for p in paths] == [
        "init.dot", "AND-postp.dot", "OR.dot", "OR.dot", "OR.dot", "OR.dot"]
    text = paths[-1].read_text()
    assert "cluster_net" in text and "cluster_statechart" in text


def test_snapshot_without_models():
    rec = TraceRecorder(keep_models=False)
    transform(chain(2), trace=rec)
    with pytest.raises(ValueError):
        export_dot(rec.snapshots[0])


def test_unsupported_type():
    with pytest.raises(TypeError):
        export_dot("net")
