"""Graphviz DOT export for nets, statecharts and trace snapshots.

Places are white circles and transitions black bars.  In statecharts,
Basic states are yellow ovals, hyperedges black bars, AND states solid
clusters and OR states dashed clusters.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

from pn2sc.engine import Snapshot
from pn2sc.models import PetriNet, Statechart, StateKind

PLACE_STYLE = 'shape=circle, style=filled, fillcolor=white, label={label}'
BAR_STYLE = 'shape=box, style=filled, fillcolor=black, fontcolor=white, height=0.15, label={label}'
BASIC_STYLE = 'shape=ellipse, style=filled, fillcolor=yellow, label={label}'
AND_CLUSTER = 'style="solid,filled"; fillcolor=lightgray;'
OR_CLUSTER = 'style="dashed,filled"; fillcolor=white;'


def _qs(text: str) -> str:
    return json.dumps(text, ensure_ascii=False)


def _net_lines(net: PetriNet, prefix: str, indent: str) -> list[str]:
    out = []
    for pid in sorted(net.places):
        p = net.places[pid]
        out.append(f"{indent}{prefix}{pid} [{PLACE_STYLE.format(label=_qs(p.name))}];")
    for tid in sorted(net.transitions):
        t = net.transitions[tid]
        out.append(f"{indent}{prefix}{tid} [{BAR_STYLE.format(label=_qs(t.name))}];")
    for a, b in net.arcs():
        out.append(f"{indent}{prefix}{a} -> {prefix}{b};")
    return out


def _statechart_lines(sc: Statechart, prefix: str, indent: str) -> list[str]:
    out: list[str] = []

    def emit(sid: int, depth: str):
        st = sc.states[sid]
        if st.kind is StateKind.BASIC:
            out.append(f"{depth}{prefix}{sid} [{BASIC_STYLE.format(label=_qs(st.name))}];")
            return
        style = AND_CLUSTER if st.kind is StateKind.AND else OR_CLUSTER
        out.append(f"{depth}subgraph cluster_{prefix}{sid} {{")
        out.append(f"{depth}  label={_qs(st.name)}; {style}")
        for cid in sorted(st.contains):
            emit(cid, depth + "  ")
        if not st.contains:
            out.append(f'{depth}  {prefix}{sid}_empty [shape=point, style=invis];')
        out.append(f"{depth}}}")

    for root in sc.check_forest():
        emit(root, indent)
    for eid in sorted(sc.hyperedges):
        e = sc.hyperedges[eid]
        out.append(f"{indent}{prefix}{eid} [{BAR_STYLE.format(label=_qs(e.name))}];")
        for sid in sorted(e.rnext):
            out.append(f"{indent}{prefix}{sid} -> {prefix}{eid};")
        for sid in sorted(e.next):
            out.append(f"{indent}{prefix}{eid} -> {prefix}{sid};")
    return out


def export_dot(model: PetriNet | Statechart | Snapshot, name: str = "G") -> bytes:
    if isinstance(model, PetriNet):
        body = _net_lines(model, "n", "  ")
    elif isinstance(model, Statechart):
        body = ["  compound=true;"] + _statechart_lines(model, "s", "  ")
    elif isinstance(model, Snapshot):
        if model.net is None or model.statechart is None:
            raise ValueError("snapshot carries no model copies; record with keep_models=True")
        body = [
            "  compound=true;",
            f"  label={_qs(f'step {model.step}: {model.rule}')};",
            "  subgraph cluster_net {",
            '    label="Petri-Net"; color=gray;',
            *_net_lines(model.net, "n", "    "),
            "  }",
            "  subgraph cluster_statechart {",
            '    label="statechart"; color=gray;',
            *_statechart_lines(model.statechart, "s", "    "),
            "  }",
        ]
    else:
        raise TypeError(f"cannot export {type(model).__name__} to DOT")
    lines = [f"digraph {_qs(name)} {{", "  rankdir=LR;", *body, "}"]
    return ("\n".join(lines) + "\n").encode("utf-8")


def write_trace(snapshots: Iterable[Snapshot], directory: str | Path) -> list[Path]:
    """Write one DOT file per snapshot, named ``step_NNN_<rule>.dot``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for snap in snapshots:
        path = directory / f"step_{snap.step:03d}_{snap.rule}.dot"
        path.write_bytes(export_dot(snap, name=f"step{snap.step}"))
        paths.append(path)
    return paths
