"""``pn2sc`` command line: transform, generate, bench, compare.

Exit codes: 0 success (or equal for ``compare``), 1 input/usage error,
2 transformation stuck, 3 ``compare`` found the models different.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from pn2sc import bench, documents, dot, engine, equivalence, generator
from pn2sc.errors import Pn2scError

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_STUCK = 2
EXIT_DIFFERENT = 3


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_ERROR


def cmd_transform(args) -> int:
    try:
        data = Path(args.input).read_bytes()
    except OSError as exc:
        return _fail(f"{args.input}: {exc.strerror}")
    try:
        start = time.perf_counter()
        net = documents.read_net(data)
        load_ms = (time.perf_counter() - start) * 1000
    except Pn2scError as exc:
        return _fail(f"{args.input}: {exc}")

    recorder = engine.TraceRecorder(keep_models=True) if args.trace_dir else None
    start = time.perf_counter()
    outcome = engine.transform(net, policy=args.policy, seed=args.seed, trace=recorder)
    transform_ms = (time.perf_counter() - start) * 1000

    try:
        Path(args.output).write_bytes(documents.write_statechart(outcome))
        if recorder is not None:
            dot.write_trace(recorder.snapshots, args.trace_dir)
    except OSError as exc:
        return _fail(f"{exc.filename}: {exc.strerror}")

    apps = outcome.applications
    print(f"outcome: {'success' if outcome.ok else 'stuck'}")
    print(f"rule applications: {outcome.rule_applications} (AND {apps['AND']}, OR {apps['OR']})")
    print(f"load: {load_ms:.3f} ms")
    print(f"transform: {transform_ms:.3f} ms")
    if not outcome.ok:
        print(f"residual places: {len(outcome.net.places)}")
        return EXIT_STUCK
    return EXIT_OK


def cmd_generate(args) -> int:
    try:
        tpl = generator.Template(tuple(args.seq_len), tuple(args.branches), args.depth)
        net = generator.generate(generator.GeneratorSpec(args.target, args.seed, tpl))
    except Pn2scError as exc:
        return _fail(str(exc))
    try:
        Path(args.output).write_bytes(documents.write_net(net))
    except OSError as exc:
        return _fail(f"{args.output}: {exc.strerror}")
    print(f"{generator.ladder_label(args.target)}: {len(net.places)} places, "
          f"{len(net.transitions)} transitions ({net.element_count} elements)")
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        return _fail(f"bad --sizes value {args.sizes!r}")
    if args.reps < 1:
        return _fail("--reps must be >= 1")

    def progress(row):
        note = f" ({row.error})" if row.error else ""
        print(f"{row.label}: load {row.load_ms:.1f} ms, transform {row.transform_ms:.1f} ms, "
              f"{row.outcome}{note}", file=sys.stderr)

    report = bench.run_bench(sizes, args.reps, args.seed, args.cache_dir, progress)
    print(report.to_table(), end="")
    if args.report:
        report.write(args.report)
    return EXIT_OK


def _load_for_compare(path: str):
    data = Path(path).read_bytes()
    sc, net = documents.read_failure_dump(data)
    return equivalence.canonical_statechart(sc), (equivalence.canonical_net(net) if net else None)


def cmd_compare(args) -> int:
    try:
        a = _load_for_compare(args.a)
        b = _load_for_compare(args.b)
    except OSError as exc:
        return _fail(f"{exc.filename}: {exc.strerror}")
    except Pn2scError as exc:
        return _fail(str(exc))
    if a == b:
        print("equivalent")
        return EXIT_OK
    print("different")
    return EXIT_DIFFERENT


class _Parser(argparse.ArgumentParser):
    # usage errors must not collide with the "stuck" exit code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pn2sc", description="Petri-Net to statechart reduction")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("transform", help="reduce a net document into a statechart")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--policy", choices=["det", "random"], default="det")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trace-dir", default=None, help="write one DOT file per rule application")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("generate", help="write a synthetic reducible net")
    p.add_argument("output")
    p.add_argument("--target", type=int, required=True, help="places + transitions")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--seq-len", type=int, nargs=2, default=(2, 4), metavar=("MIN", "MAX"))
    p.add_argument("--branches", type=int, nargs=2, default=(2, 3), metavar=("MIN", "MAX"))
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="time load and transform over a size ladder")
    p.add_argument("--sizes", default=",".join(map(str, generator.LADDER)))
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", default=None, help="CSV output path")
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("compare", help="check two statechart documents for equivalence")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
