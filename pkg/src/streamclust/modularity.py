"""Exact modularity bookkeeping over a stream prefix.

These functions keep the edge prefix in memory and exist to check the
volume rule used by the clusterer against the streaming modularity
objective; the clusterer itself never calls them.

Notation used throughout: ``w`` is the total weight of the full stream
(twice its edge count), the *objective* of a prefix under a fixed partition
is ``sum_C [2*Int(C) - Vol(C)**2 / w]`` where ``Int(C)`` counts prefix edges
with both endpoints in ``C`` and ``Vol(C)`` is the summed prefix degree of
``C``'s nodes. Dividing the objective over the full stream by ``w`` gives
the usual modularity.

All arithmetic is exact: objectives are held as the integer ``w * objective``
and other quantities as :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .edge_stream import Edge
from .exceptions import MissingLabelError, UndefinedAttachmentError, UndefinedInputError

Partition = Mapping[int, Hashable]
Prefix = Sequence[tuple[int, int]]

INFINITY = math.inf


def _label(partition: Partition, node: int) -> Hashable:
    try:
        return partition[node]
    except KeyError:
        raise MissingLabelError(node) from None


@dataclass(frozen=True)
class ObjectiveValue:
    """Streaming objective stored as the exact integer ``scaled = w * objective``."""

    scaled: int
    w: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.scaled, self.w)

    @property
    def modularity(self) -> Fraction:
        """Objective normalised by ``w``; equals modularity once the prefix is the whole stream."""
        return Fraction(self.scaled, self.w * self.w)


@dataclass(frozen=True)
class Attachment:
    """Attachment of a node to a community over a prefix.

    ``normalized`` is ``raw / volume`` and is ``None`` when the community has
    zero volume in the prefix.
    """

    raw: Fraction
    normalized: Fraction | None
    volume: int


def modularity(edges: Iterable[tuple[int, int]], partition: Partition) -> Fraction:
    """Newman modularity of ``partition`` on the multigraph given by ``edges``.

    Evaluated as ``(1/w) * [sum_ij w_ij delta(i,j) - sum_C Vol(C)**2 / w]``.
    """
    intra_ordered = 0
    degree: Counter[int] = Counter()
    m = 0
    for i, j in edges:
        m += 1
        degree[i] += 1
        degree[j] += 1
        if _label(partition, i) == _label(partition, j):
            # w_ij and w_ji both count
            intra_ordered += 2
    w = 2 * m
    if w == 0:
        raise UndefinedInputError("modularity of an empty graph")
    vol: Counter[Hashable] = Counter()
    for node, deg in degree.items():
        vol[partition[node]] += deg
    sum_sq = sum(v * v for v in vol.values())
    return Fraction(intra_ordered * w - sum_sq, w * w)


def streaming_objective(prefix: Prefix, partition: Partition, w: int) -> ObjectiveValue:
    """Objective of ``partition`` over ``prefix``, by direct summation over edges."""
    if w <= 0:
        raise UndefinedInputError("w must be positive")
    internal: Counter[Hashable] = Counter()
    volume: Counter[Hashable] = Counter()
    for i, j in prefix:
        ci = _label(partition, i)
        cj = _label(partition, j)
        volume[ci] += 1
        volume[cj] += 1
        if ci == cj:
            internal[ci] += 1
    scaled = sum(2 * w * internal[c] - vol * vol for c, vol in volume.items())
    return ObjectiveValue(scaled, w)


def community_volumes(prefix: Prefix, partition: Partition) -> Counter:
    """Prefix volume of every community touched by the prefix."""
    volume: Counter[Hashable] = Counter()
    for i, j in prefix:
        volume[_label(partition, i)] += 1
        volume[_label(partition, j)] += 1
    return volume


def prefix_degree(prefix: Prefix, node: int) -> int:
    """Number of prefix edge endpoints equal to ``node``."""
    return sum((a == node) + (b == node) for a, b in prefix)


def objective_step(
    current: ObjectiveValue,
    edge: tuple[int, int],
    partition: Partition,
    volumes: Mapping[Hashable, int],
) -> ObjectiveValue:
    """Objective after appending ``edge``, with the partition unchanged.

    ``volumes`` are the community volumes *before* the edge; communities
    absent from it have volume 0.
    """
    i, j = edge
    ci = _label(partition, i)
    cj = _label(partition, j)
    same = int(ci == cj)
    vol_i = volumes.get(ci, 0)
    vol_j = volumes.get(cj, 0)
    w = current.w
    return ObjectiveValue(current.scaled + 2 * (w * same - (vol_i + vol_j + 1 + same)), w)


def attachment(
    prefix: Prefix, node: int, community: Hashable, partition: Partition, w: int
) -> Attachment:
    """Attachment of ``node`` to ``community`` over the prefix.

    The raw value is the number of prefix edges joining ``node`` to a member
    of ``community``, minus what the degree-proportional null model predicts,
    summed edge by edge::

        sum over (a, b) of [ [a in C] ([b == node] - d/w) + [b in C] ([a == node] - d/w) ]

    with ``d`` the prefix degree of ``node``.
    """
    d = prefix_degree(prefix, node)
    expected = Fraction(d, w)
    raw = Fraction(0)
    volume = 0
    for a, b in prefix:
        a_in = _label(partition, a) == community
        b_in = _label(partition, b) == community
        if a_in:
            raw += (b == node) - expected
            volume += 1
        if b_in:
            raw += (a == node) - expected
            volume += 1
    normalized = raw / volume if volume else None
    return Attachment(raw, normalized, volume)


def delta_q_move(
    prefix: Prefix, node: int, partition: Partition, target: Hashable, w: int
) -> Fraction:
    """Change of the prefix objective when ``node`` moves to community ``target``.

    Uses the attachment form ``2 * [L(node, target) - L(node, own) - d**2 / w]``.
    """
    own = _label(partition, node)
    if target == own:
        raise ValueError(f"node {node} is already in community {target!r}")
    d = prefix_degree(prefix, node)
    to_target = attachment(prefix, node, target, partition, w).raw
    to_own = attachment(prefix, node, own, partition, w).raw
    return 2 * (to_target - to_own - Fraction(d * d, w))


def _internal_edges(prefix: Prefix, members: set) -> int:
    return sum(1 for a, b in prefix if a in members and b in members)


def delta_q_move_int_vol(
    prefix: Prefix, node: int, partition: Partition, target: Hashable, w: int
) -> Fraction:
    """Same quantity as :func:`delta_q_move`, from internal-edge and volume differences.

    Only the source and target communities change, so the difference is
    ``2 * [Int(src - {node}) + Int(dst + {node}) - Int(src) - Int(dst)]``
    minus ``[(Vs - d)**2 + (Vt + d)**2 - Vs**2 - Vt**2] / w``.
    """
    own = _label(partition, node)
    if target == own:
        raise ValueError(f"node {node} is already in community {target!r}")
    vols = community_volumes(prefix, partition)
    src = {n for n, c in partition.items() if c == own}
    dst = {n for n, c in partition.items() if c == target}
    d = prefix_degree(prefix, node)
    vs, vt = vols.get(own, 0), vols.get(target, 0)
    d_int = (
        _internal_edges(prefix, src - {node})
        + _internal_edges(prefix, dst | {node})
        - _internal_edges(prefix, src)
        - _internal_edges(prefix, dst)
    )
    d_sq = (vs - d) ** 2 + (vt + d) ** 2 - vs * vs - vt * vt
    return 2 * d_int - Fraction(d_sq, w)


def orient(prefix: Prefix, edge: tuple[int, int], partition: Partition) -> Edge:
    """Order the endpoints so the first one sits in the lower-volume community.

    On equal volumes the given order is kept.
    """
    i, j = edge
    vols = community_volumes(prefix, partition)
    if vols.get(_label(partition, i), 0) > vols.get(_label(partition, j), 0):
        i, j = j, i
    return Edge(i, j)


def delta_q_next(
    prefix: Prefix, edge: tuple[int, int], partition: Partition, w: int
) -> Fraction:
    """Objective gain, after ``edge`` arrives, of moving its low-volume endpoint across.

    With ``(i, j) = orient(edge)`` this is the objective over ``prefix + [edge]``
    when ``i`` has joined ``j``'s community minus the objective when nobody
    moved, computed as ``delta_q_move + 2 * [1 - (Vj - Vi + 2*d + 1) / w]``.
    """
    i, j = orient(prefix, edge, partition)
    ci = _label(partition, i)
    cj = _label(partition, j)
    if ci == cj:
        raise ValueError("both endpoints are in the same community; every action is identical")
    vols = community_volumes(prefix, partition)
    d = prefix_degree(prefix, i)
    gain_now = delta_q_move(prefix, i, partition, cj, w)
    return gain_now + 2 * (1 - Fraction(vols.get(cj, 0) - vols.get(ci, 0) + 2 * d + 1, w))


def _normalized_or_none(att: Attachment) -> Fraction | None:
    if att.normalized is not None:
        return att.normalized
    if att.raw != 0:
        raise UndefinedAttachmentError("nonzero attachment to a zero-volume community")
    return None


def volume_threshold(
    prefix: Prefix, edge: tuple[int, int], partition: Partition, w: int
) -> Fraction | float:
    """Volume bound below which joining is claimed never to lower the objective.

    For ``(i, j) = orient(edge)``::

        (1 - (d + 1)**2 / w) / (l(i, C(i)) - l(i, C(j)))

    where ``l`` is the normalized attachment, and ``math.inf`` when the two
    normalized attachments are equal or when either community has zero
    volume (its raw attachment is then necessarily 0).
    """
    i, j = orient(prefix, edge, partition)
    ci = _label(partition, i)
    cj = _label(partition, j)
    if ci == cj:
        raise ValueError("both endpoints are in the same community; every action is identical")
    l_own = _normalized_or_none(attachment(prefix, i, ci, partition, w))
    l_other = _normalized_or_none(attachment(prefix, i, cj, partition, w))
    if l_own is None or l_other is None or l_own == l_other:
        return INFINITY
    d = prefix_degree(prefix, i)
    return (1 - Fraction((d + 1) ** 2, w)) / (l_own - l_other)
