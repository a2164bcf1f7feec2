"""Load and transform times over the generated size ladder.

Pass a smaller ladder for a quick look: ``python3 scaling.py 200,1000,5000``
"""
import sys

from pn2sc.bench import run_bench
from pn2sc.generator import LADDER

sizes = [int(s) for s in sys.argv[1].split(",")] if len(sys.argv) > 1 else LADDER
report = run_bench(sizes, repetitions=3, progress=lambda r: print("done", r.label, file=sys.stderr))
print(report.to_table())

rows = report.rows
for a, b in zip(rows, rows[1:]):
    print(f"{b.label}/{a.label}: elements x{b.elements / a.elements:.1f}, "
          f"transform x{b.transform_ms / a.transform_ms:.1f}")
