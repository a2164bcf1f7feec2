"""Two-interval benchmark over the generated size ladder.

For each size the net is generated once and serialized; every repetition
then times ``read_net`` on the serialized bytes (load interval) and
``initialize`` + ``reduce`` on the loaded net (transform interval).
Generation and output writing are never timed.  One warm-up repetition is
discarded and medians are reported.  The garbage collector is paused inside
each timed interval, as :mod:`timeit` does.
"""
from __future__ import annotations

import csv
import gc
import io
import statistics
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Callable, Iterable

from pn2sc.documents import read_net, write_net
from pn2sc.engine import transform
from pn2sc.generator import LADDER, GeneratorSpec, generate, ladder_label

# "M": optimization implemented by hand (the worklist scheduler)
OPTIMIZATION = "M"


@dataclass
class BenchRow:
    label: str
    target: int
    elements: int
    load_ms: float
    load_min_ms: float
    transform_ms: float
    transform_min_ms: float
    outcome: str
    rule_applications: int
    seed: int
    repetitions: int
    optimization: str = OPTIMIZATION
    error: str = ""


@dataclass
class BenchReport:
    rows: list[BenchRow]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, [f.name for f in fields(BenchRow)], lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow(asdict(row))
        return buf.getvalue()

    def to_table(self) -> str:
        """Table with one column per ladder size, load and transform on separate lines."""
        head = ["", *(r.label for r in self.rows)]
        body = [
            ["elements", *(str(r.elements) for r in self.rows)],
            ["load (ms)", *(f"{r.load_ms:.1f}" for r in self.rows)],
            ["transform (ms)", *(f"{r.transform_ms:.1f}" for r in self.rows)],
            ["outcome", *(r.outcome for r in self.rows)],
            ["rules applied", *(str(r.rule_applications) for r in self.rows)],
        ]
        widths = [max(len(line[i]) for line in [head, *body]) for i in range(len(head))]
        fmt = lambda line: "  ".join(cell.rjust(w) for cell, w in zip(line, widths))
        title = f"optimizations: {OPTIMIZATION}  (sequential, median of repetitions)"
        return "\n".join([title, fmt(head), *(fmt(line) for line in body)]) + "\n"

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv(), encoding="utf-8")


def _timed(fn: Callable, *args):
    gc.collect()
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        start = time.perf_counter()
        result = fn(*args)
        elapsed = time.perf_counter() - start
    finally:
        if was_enabled:
            gc.enable()
    return result, elapsed * 1000.0


def net_bytes(target: int, seed: int, cache_dir: str | Path | None = None) -> bytes:
    """Serialized generated net, cached on disk when ``cache_dir`` is given."""
    if cache_dir is not None:
        path = Path(cache_dir) / f"{ladder_label(target)}_seed{seed}.pn.json"
        if path.exists():
            return path.read_bytes()
    data = write_net(generate(GeneratorSpec(target, seed)))
    if cache_dir is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
    return data


def measure(data: bytes, repetitions: int = 5, warmup: bool = True):
    """Return (load samples ms, transform samples ms, last outcome, element count)."""
    loads, transforms = [], []
    outcome = None
    elements = 0
    for i in range(repetitions + (1 if warmup else 0)):
        net, load_ms = _timed(read_net, data)
        elements = net.element_count
        outcome, transform_ms = _timed(transform, net)
        if warmup and i == 0:
            continue
        loads.append(load_ms)
        transforms.append(transform_ms)
    return loads, transforms, outcome, elements


def bench_size(target: int, repetitions: int = 5, seed: int = 0,
               cache_dir: str | Path | None = None) -> BenchRow:
    label = ladder_label(target)
    try:
        data = net_bytes(target, seed, cache_dir)
        loads, transforms, outcome, elements = measure(data, repetitions)
    except Exception as exc:  # recorded in the report, never fatal
        return BenchRow(label, target, 0, float("nan"), float("nan"), float("nan"), float("nan"),
                        "error", 0, seed, repetitions, error=f"{type(exc).__name__}: {exc}")
    return BenchRow(
        label, target, elements,
        statistics.median(loads), min(loads),
        statistics.median(transforms), min(transforms),
        "success" if outcome.ok else "stuck", outcome.rule_applications,
        seed, repetitions,
    )


def run_bench(sizes: Iterable[int] = LADDER, repetitions: int = 5, seed: int = 0,
              cache_dir: str | Path | None = None,
              progress: Callable[[BenchRow], None] | None = None) -> BenchReport:
    rows = []
    for target in sizes:
        row = bench_size(target, repetitions, seed, cache_dir)
        rows.append(row)
        if progress is not None:
            progress(row)
    return BenchReport(rows)
