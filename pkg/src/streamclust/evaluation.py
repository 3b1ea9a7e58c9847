"""Scoring a detected partition against ground-truth communities.

Ground truth comes as a *cover*: possibly overlapping node sets that need
not cover every node. Scores are computed on the nodes that belong to at
least one ground-truth community; detected communities are intersected with
that node set first.

* Average F1 is the mean of two best-match averages: each detected
  community against its best ground-truth match, and each ground-truth
  community against its best detected match.
* NMI is the plain partition NMI with arithmetic-mean normalisation. For
  this, overlapping ground truth is flattened by giving every node its
  first-listed community. It is not the overlapping-cover NMI variant, so
  values are only loosely comparable with scores produced by that one.
"""

from __future__ import annotations

import logging
import math
from collections import Counter, defaultdict
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .exceptions import ParseError, UndefinedInputError

logger = logging.getLogger(__name__)

F1_NOTE = "average F1: mean of detected->truth and truth->detected best-match F1"
NMI_NOTE = (
    "NMI: partition NMI, arithmetic-mean normalisation; overlapping truth "
    "flattened to first-listed community"
)
RESTRICTION_NOTE = "scored on nodes present in at least one ground-truth community"


def f1_pair(a: set, b: set) -> float:
    """F1 of two node sets, ``2|a & b| / (|a| + |b|)``."""
    if not a or not b:
        raise UndefinedInputError("F1 of an empty set")
    return 2 * len(a & b) / (len(a) + len(b))


def _best_match_f1(sources: Sequence[set], targets: Sequence[set]) -> list[float]:
    # only targets sharing a node with the source can have nonzero F1
    index: dict[int, list[int]] = defaultdict(list)
    for t, members in enumerate(targets):
        for node in members:
            index[node].append(t)
    best = []
    for src in sources:
        overlap: Counter[int] = Counter()
        for node in src:
            overlap.update(index.get(node, ()))
        n = len(src)
        best.append(
            max((2 * c / (n + len(targets[t])) for t, c in overlap.items()), default=0.0)
        )
    return best


def average_f1(detected: Sequence[set], truth: Sequence[set]) -> float:
    if not detected or not truth:
        raise UndefinedInputError("average F1 needs at least one community on each side")
    if any(not c for c in detected) or any(not c for c in truth):
        raise UndefinedInputError("communities must be non-empty")
    forward = _best_match_f1(detected, truth)
    backward = _best_match_f1(truth, detected)
    return 0.5 * (sum(forward) / len(forward) + sum(backward) / len(backward))


def _entropy(counts: np.ndarray, n: int) -> float:
    p = counts / n
    return -math.fsum(p * np.log(p))


def nmi(detected: Mapping[int, int], truth: Mapping[int, int]) -> float:
    """Normalised mutual information between two partitions (node -> label).

    Only nodes labelled in both mappings are scored. Returns 0 when both
    partitions are a single community.
    """
    common = detected.keys() & truth.keys()
    if not common:
        raise UndefinedInputError("partitions share no nodes")
    nodes = sorted(common)
    x = np.fromiter((detected[n] for n in nodes), dtype=np.int64, count=len(nodes))
    y = np.fromiter((truth[n] for n in nodes), dtype=np.int64, count=len(nodes))
    n = len(nodes)
    _, cx = np.unique(x, return_counts=True)
    _, cy = np.unique(y, return_counts=True)
    _, cxy = np.unique(np.stack([x, y]), axis=1, return_counts=True)
    hx, hy, hxy = _entropy(cx, n), _entropy(cy, n), _entropy(cxy, n)
    if hx + hy == 0.0:
        return 0.0
    mutual = hx + hy - hxy
    return min(1.0, max(0.0, mutual / ((hx + hy) / 2)))


def read_cover(path: str | Path) -> list[set[int]]:
    """Read a ground-truth file: one community per line, whitespace-separated ids.

    Empty lines are skipped with a warning.
    """
    cover = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            tokens = line.split()
            if not tokens:
                logger.warning("%s:%d: empty community line skipped", path, lineno)
                continue
            if tokens[0].startswith("#"):
                continue
            try:
                cover.append({int(tok) for tok in tokens})
            except ValueError:
                raise ParseError(lineno, line, "non-integer node id") from None
    return cover


def cover_nodes(cover: Iterable[set]) -> set:
    return set().union(*cover)


def restrict(labels: Mapping[int, int], universe: set) -> dict[int, int]:
    """Keep only labelled nodes that are in ``universe``."""
    return {node: c for node, c in labels.items() if node in universe}


def communities_of(labels: Mapping[int, int]) -> list[set[int]]:
    groups: dict[int, set[int]] = defaultdict(set)
    for node, c in labels.items():
        groups[c].add(node)
    return [groups[c] for c in sorted(groups)]


def cover_to_partition(cover: Sequence[set]) -> dict[int, int]:
    """Flatten a cover: each node takes the index of the first community listing it."""
    labels: dict[int, int] = {}
    for idx, members in enumerate(cover):
        for node in members:
            labels.setdefault(node, idx)
    return labels


@dataclass
class EvaluationReport:
    nodes_scored: int
    f1: float | None = None
    nmi: float | None = None
    notes: list[str] = field(default_factory=list)


def evaluate(
    labels: Mapping[int, int], cover: Sequence[set], metric: str = "both"
) -> EvaluationReport:
    """Score a detected labelling against a ground-truth cover.

    ``metric`` is ``"f1"``, ``"nmi"`` or ``"both"``.
    """
    if metric not in ("f1", "nmi", "both"):
        raise ValueError(f"unknown metric {metric!r}")
    universe = cover_nodes(cover)
    if not universe:
        raise UndefinedInputError("ground truth is empty")
    kept = restrict(labels, universe)
    if not kept:
        raise UndefinedInputError("no detected node appears in the ground truth")
    report = EvaluationReport(nodes_scored=len(kept), notes=[RESTRICTION_NOTE])
    if metric in ("f1", "both"):
        report.f1 = average_f1(communities_of(kept), list(cover))
        report.notes.append(F1_NOTE)
    if metric in ("nmi", "both"):
        report.nmi = nmi(kept, cover_to_partition(cover))
        report.notes.append(NMI_NOTE)
    return report
