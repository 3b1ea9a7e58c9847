"""Command-line interface: ``streamclust {cluster,sweep,modularity,evaluate}``.

Exit status is 0 on success, 1 on data errors (I/O, parse, missing labels,
undefined metrics) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .edge_stream import open_stream
from .engine import StreamingClusterer, SweepClusterer, read_assignment, write_assignment
from .evaluation import evaluate, read_cover
from .exceptions import StreamclustError
from .modularity import modularity
from .selection import CRITERIA, DIRECTIONS, SweepResult, average_density, entropy, select_best

logger = logging.getLogger("streamclust")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _vmax_list(text: str) -> list[int]:
    values = [_positive_int(tok) for tok in text.split(",") if tok.strip()]
    if not values:
        raise argparse.ArgumentTypeError("empty v_max list")
    return values


def _tie(text: str) -> int | None:
    """``pseudocode`` -> None, ``random:<seed>`` -> seed."""
    if text == "pseudocode":
        return None
    kind, _, seed = text.partition(":")
    if kind == "random" and seed:
        try:
            return int(seed)
        except ValueError:
            pass
    raise argparse.ArgumentTypeError("expected 'pseudocode' or 'random:<seed>'")


def _tie_name(seed: int | None) -> str:
    return "pseudocode" if seed is None else f"random:{seed}"


def write_manifest(path: Path, entries: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for key, value in entries.items():
            fh.write(f"{key}={value}\n")


def read_manifest(path: str | Path) -> dict[str, str]:
    entries = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            key, sep, value = line.rstrip("\n").partition("=")
            if sep:
                entries[key] = value
    return entries


def cmd_cluster(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    stream = open_stream(args.input, args.shuffle_seed)
    clusterer = StreamingClusterer(args.vmax, args.tie)
    clusterer.consume(stream)
    t1 = time.perf_counter()
    assignment = clusterer.assignment()
    n_nodes = len(assignment.labels)
    n_comms = len(set(assignment.labels.values()))

    out = sys.stdout
    if args.output:
        write_assignment(assignment, args.output)
        t2 = time.perf_counter()
        write_manifest(Path(f"{args.output}.manifest"), {
            "command": "cluster",
            "input": args.input,
            "order": stream.order,
            "shuffle_seed": "" if args.shuffle_seed is None else args.shuffle_seed,
            "v_max": args.vmax,
            "tie": _tie_name(args.tie),
            "edges": stream.count,
            "self_loops_skipped": stream.self_loops,
            "nodes": n_nodes,
            "communities": n_comms,
            "time_cluster_s": f"{t1 - t0:.6f}",
            "time_write_s": f"{t2 - t1:.6f}",
            "output": args.output,
        })
    else:
        for node in sorted(assignment.labels):
            out.write(f"{node} {assignment.labels[node]}\n")
        out = sys.stderr
    print(f"edges: {stream.count}", file=out)
    print(f"nodes: {n_nodes}", file=out)
    print(f"communities: {n_comms}", file=out)
    print(f"elapsed_s: {t1 - t0:.3f}", file=out)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    stream = open_stream(args.input, args.shuffle_seed)
    sweep = SweepClusterer(args.vmax_list, args.tie)
    sweep.consume(stream)
    t1 = time.perf_counter()
    results = [SweepResult(a, v) for a, v in zip(sweep.assignments(), args.vmax_list)]
    best = select_best(results, args.select, args.direction)

    prefix = Path(args.output_prefix)
    lines = [
        f"# criterion={args.select} direction={args.direction}",
        "index v_max communities entropy density output",
    ]
    outputs = []
    for a, res in enumerate(results):
        path = Path(f"{prefix}.{a}.vmax{res.v_max}.txt")
        write_assignment(res.assignment, path)
        outputs.append(str(path))
        h = entropy(res.assignment.volumes) if res.total_weight else 0.0
        dens = average_density(res.assignment) if res.assignment.labels else 0.0
        n_comms = len(set(res.assignment.labels.values()))
        lines.append(f"{a} {res.v_max} {n_comms} {h!r} {dens!r} {path}")
    lines.append(f"selected={best} v_max={results[best].v_max}")
    report = "\n".join(lines) + "\n"
    Path(f"{prefix}.report.txt").write_text(report, encoding="utf-8")
    write_manifest(Path(f"{prefix}.manifest"), {
        "command": "sweep",
        "input": args.input,
        "order": stream.order,
        "shuffle_seed": "" if args.shuffle_seed is None else args.shuffle_seed,
        "v_max_list": ",".join(map(str, args.vmax_list)),
        "tie": _tie_name(args.tie),
        "select": args.select,
        "direction": args.direction,
        "selected_index": best,
        "edges": stream.count,
        "self_loops_skipped": stream.self_loops,
        "nodes": len(sweep.degrees),
        "time_cluster_s": f"{t1 - t0:.6f}",
        "outputs": ",".join(outputs),
    })
    sys.stdout.write(report)
    return 0


def cmd_modularity(args: argparse.Namespace) -> int:
    edges = list(open_stream(args.input))
    partition = read_assignment(args.partition)
    q = modularity(edges, partition)
    w = 2 * len(edges)
    scaled = q * w * w  # integer by construction
    print(f"Q = {float(q):.12g}")
    print(f"Q_exact = {scaled.numerator}/{w * w} = {q.numerator}/{q.denominator}")
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    labels = read_assignment(args.pred)
    cover = read_cover(args.truth)
    report = evaluate(labels, cover, args.metric)
    if report.f1 is not None:
        print(f"f1 {report.f1:.6f}")
    if report.nmi is not None:
        print(f"nmi {report.nmi:.6f}")
    print(f"# nodes_scored={report.nodes_scored}")
    for note in report.notes:
        print(f"# {note}")
    return 0


def _add_stream_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="edge-list file")
    p.add_argument("--shuffle-seed", type=int, default=None,
                   help="stream edges in a seeded random order (buffers the file)")
    p.add_argument("--tie", type=_tie, default=None, metavar="{pseudocode|random:SEED}",
                   help="equal-volume rule (default: pseudocode, i joins j)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="streamclust", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cluster", help="cluster an edge stream with one v_max")
    _add_stream_options(p)
    p.add_argument("--vmax", type=_positive_int, required=True)
    p.add_argument("--output", help="assignment file (default: stdout); manifest written beside it")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("sweep", help="cluster with several v_max values in one pass")
    _add_stream_options(p)
    p.add_argument("--vmax-list", type=_vmax_list, required=True, help="comma-separated")
    p.add_argument("--select", choices=CRITERIA, default="entropy")
    p.add_argument("--direction", choices=DIRECTIONS, default="max")
    p.add_argument("--output-prefix", required=True,
                   help="writes PREFIX.<index>.vmax<v>.txt, PREFIX.report.txt, PREFIX.manifest")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("modularity", help="exact modularity of a partition")
    p.add_argument("--input", required=True, help="edge-list file")
    p.add_argument("--partition", required=True, help="'node_id community_id' file")
    p.set_defaults(func=cmd_modularity)

    p = sub.add_parser("evaluate", help="average F1 / NMI against ground truth")
    p.add_argument("--pred", required=True, help="'node_id community_id' file")
    p.add_argument("--truth", required=True, help="one community per line")
    p.add_argument("--metric", choices=("f1", "nmi", "both"), default="both")
    p.set_defaults(func=cmd_evaluate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (OSError, StreamclustError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
