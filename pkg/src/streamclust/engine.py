"""One-pass streaming clustering over an edge stream.

The clusterer keeps three integer maps (node degree, node community,
community volume) plus the next free community label and the volume
threshold. No edge is ever stored. For every arriving edge ``(i, j)``:

1. unseen endpoints get a fresh community label (``i`` first);
2. both degrees and both community volumes are incremented;
3. if both updated volumes are ``<= v_max``, the endpoint whose community
   has the smaller volume moves into the other endpoint's community,
   carrying its degree with it. On equal volumes ``i`` moves to ``j``'s
   community, unless a tie seed is given, in which case a fair coin decides.
"""

from __future__ import annotations

import random
from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .edge_stream import parse_pair_line

__all__ = [
    "ClusterState",
    "CommunityAssignment",
    "StreamingClusterer",
    "SweepClusterer",
    "process_edge",
    "run",
    "run_sweep",
    "write_assignment",
    "read_assignment",
]


@dataclass(slots=True)
class ClusterState:
    """The complete memory of the streaming clusterer.

    ``degrees`` maps node -> number of processed incident edges,
    ``communities`` maps node -> community label (labels start at 1),
    ``volumes`` maps label -> sum of member degrees.
    """

    v_max: int
    degrees: dict[int, int] = field(default_factory=dict)
    communities: dict[int, int] = field(default_factory=dict)
    volumes: dict[int, int] = field(default_factory=dict)
    next_label: int = 1

    def __post_init__(self):
        if self.v_max < 1:
            raise ValueError(f"v_max must be >= 1, got {self.v_max}")


@dataclass(frozen=True)
class CommunityAssignment:
    """Final node -> community labelling with the matching community volumes.

    ``volumes`` may contain labels whose volume dropped to 0 after all their
    members left.
    """

    labels: dict[int, int]
    volumes: dict[int, int]

    @property
    def total_weight(self) -> int:
        return sum(self.volumes.values())

    def communities(self) -> dict[int, set[int]]:
        """Non-empty communities as label -> node set."""
        groups: dict[int, set[int]] = defaultdict(set)
        for node, label in self.labels.items():
            groups[label].add(node)
        return dict(groups)

    def __len__(self) -> int:
        return len(self.labels)


def _update_communities(
    communities: dict[int, int],
    volumes: dict[int, int],
    next_label: int,
    v_max: int,
    i: int,
    j: int,
    deg_i: int,
    deg_j: int,
    tie_rng: random.Random | None,
) -> int:
    """Label/volume part of one edge step. ``deg_*`` are the updated degrees.

    Returns the new next-label counter.
    """
    ci = communities.get(i, 0)
    if not ci:
        ci = communities[i] = next_label
        volumes[ci] = 0
        next_label += 1
    cj = communities.get(j, 0)
    if not cj:
        cj = communities[j] = next_label
        volumes[cj] = 0
        next_label += 1

    # when ci == cj this is +2 on a single community
    volumes[ci] += 1
    volumes[cj] += 1
    vol_i = volumes[ci]
    vol_j = volumes[cj]
    if vol_i <= v_max and vol_j <= v_max:
        if vol_i < vol_j or (
            vol_i == vol_j and (tie_rng is None or tie_rng.random() < 0.5)
        ):
            volumes[cj] += deg_i
            volumes[ci] -= deg_i
            communities[i] = cj
        else:
            volumes[ci] += deg_j
            volumes[cj] -= deg_j
            communities[j] = ci
    return next_label


def process_edge(
    state: ClusterState, i: int, j: int, tie_rng: random.Random | None = None
) -> ClusterState:
    """Apply one edge to ``state`` in place and return it."""
    degrees = state.degrees
    deg_i = degrees[i] = degrees.get(i, 0) + 1
    deg_j = degrees[j] = degrees.get(j, 0) + 1
    state.next_label = _update_communities(
        state.communities, state.volumes, state.next_label, state.v_max,
        i, j, deg_i, deg_j, tie_rng,
    )
    return state


class StreamingClusterer:
    """Stateful wrapper around :class:`ClusterState` for incremental use.

    Example::

        clusterer = StreamingClusterer(v_max=5)
        for u, v in edges:
            clusterer.add_edge(u, v)
        assignment = clusterer.assignment()
    """

    def __init__(self, v_max: int, tie_seed: int | None = None):
        self.state = ClusterState(v_max)
        self.tie_seed = tie_seed
        self._tie_rng = None if tie_seed is None else random.Random(tie_seed)
        self.edges_processed = 0

    def add_edge(self, i: int, j: int) -> None:
        process_edge(self.state, i, j, self._tie_rng)
        self.edges_processed += 1

    def consume(self, stream: Iterable[tuple[int, int]]) -> StreamingClusterer:
        state, rng = self.state, self._tie_rng
        n = 0
        for i, j in stream:
            process_edge(state, i, j, rng)
            n += 1
        self.edges_processed += n
        return self

    def assignment(self) -> CommunityAssignment:
        return CommunityAssignment(
            labels=dict(self.state.communities), volumes=dict(self.state.volumes)
        )


def run(
    stream: Iterable[tuple[int, int]], v_max: int, tie_seed: int | None = None
) -> CommunityAssignment:
    """Cluster a whole stream in one pass with volume threshold ``v_max``."""
    return StreamingClusterer(v_max, tie_seed).consume(stream).assignment()


@dataclass(slots=True)
class _Track:
    """Per-threshold part of the state; degrees live in the owning sweep."""

    v_max: int
    tie_rng: random.Random | None
    communities: dict[int, int] = field(default_factory=dict)
    volumes: dict[int, int] = field(default_factory=dict)
    next_label: int = 1


class SweepClusterer:
    """Run several thresholds in a single pass.

    The degree map is shared by every threshold; only the community and
    volume maps (and the label counter) are kept per threshold. Each track
    gets its own tie RNG seeded with ``tie_seed`` so that track ``a`` is
    identical to a standalone run with ``v_max_list[a]``.
    """

    def __init__(self, v_max_list: Sequence[int], tie_seed: int | None = None):
        if not v_max_list:
            raise ValueError("v_max_list must not be empty")
        for v_max in v_max_list:
            if v_max < 1:
                raise ValueError(f"v_max must be >= 1, got {v_max}")
        self.degrees: dict[int, int] = {}
        self.tracks = [
            _Track(v_max, None if tie_seed is None else random.Random(tie_seed))
            for v_max in v_max_list
        ]
        self.edges_processed = 0

    def consume(self, stream: Iterable[tuple[int, int]]) -> SweepClusterer:
        degrees, tracks = self.degrees, self.tracks
        n = 0
        for i, j in stream:
            deg_i = degrees[i] = degrees.get(i, 0) + 1
            deg_j = degrees[j] = degrees.get(j, 0) + 1
            for tr in tracks:
                tr.next_label = _update_communities(
                    tr.communities, tr.volumes, tr.next_label, tr.v_max,
                    i, j, deg_i, deg_j, tr.tie_rng,
                )
            n += 1
        self.edges_processed += n
        return self

    def assignments(self) -> list[CommunityAssignment]:
        return [
            CommunityAssignment(labels=dict(tr.communities), volumes=dict(tr.volumes))
            for tr in self.tracks
        ]


def run_sweep(
    stream: Iterable[tuple[int, int]],
    v_max_list: Sequence[int],
    tie_seed: int | None = None,
) -> list[CommunityAssignment]:
    """One pass, one result per threshold, in the order of ``v_max_list``."""
    return SweepClusterer(v_max_list, tie_seed).consume(stream).assignments()


def write_assignment(assignment: CommunityAssignment, path: str | Path) -> None:
    """Write ``node_id community_id`` lines in ascending node id order."""
    with open(path, "w", encoding="utf-8") as fh:
        labels = assignment.labels
        fh.writelines(f"{node} {labels[node]}\n" for node in sorted(labels))


def read_assignment(path: str | Path) -> dict[int, int]:
    """Read a ``node_id community_id`` file into a dict."""
    labels: dict[int, int] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            pair = parse_pair_line(line, lineno)
            if pair is not None:
                labels[pair[0]] = pair[1]
    return labels
