"""Reduce a small workflow net step by step and dump every step as DOT.

Render the files with e.g. ``dot -Tsvg step_000_init.dot -o step0.svg``.
"""
import sys
import tempfile

from pn2sc import TraceRecorder, export_dot, transform
from pn2sc.dot import write_trace
from pn2sc.suite import trace_example

net = trace_example()
print(f"input: {len(net.places)} places, {len(net.transitions)} transitions")

recorder = TraceRecorder(keep_models=True)
outcome = transform(net, trace=recorder)

for snap in recorder.snapshots:
    print(f"step {snap.step}: {snap.rule:10s} places left: {snap.places}")
print("applications:", outcome.applications)

out_dir = sys.argv[1] if len(sys.argv) > 1 else tempfile.mkdtemp(prefix="pn2sc_trace_")
for path in write_trace(recorder.snapshots, out_dir):
    print("wrote", path)

# the final statechart on its own
print(export_dot(outcome.statechart).decode()[:400], "...")
