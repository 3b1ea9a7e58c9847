"""Graph-free quality scores for choosing among sweep results.

Both scores read only the community labels and volumes produced by the
clusterer, so they can be evaluated after a pass without the edges.
Modularity is not offered here because it needs the whole graph.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from .engine import CommunityAssignment
from .exceptions import UndefinedInputError

CRITERIA = ("entropy", "density")
DIRECTIONS = ("max", "min")


@dataclass(frozen=True)
class SweepResult:
    assignment: CommunityAssignment
    v_max: int

    @property
    def total_weight(self) -> int:
        return self.assignment.total_weight


def entropy(volumes: Mapping[int, int], w: int | None = None) -> float:
    """Shannon entropy (natural log) of the volume distribution.

    ``w`` defaults to the sum of volumes; zero volumes contribute nothing.
    """
    if w is None:
        w = sum(volumes.values())
    if w <= 0:
        raise UndefinedInputError("entropy needs a positive total weight")
    h = 0.0
    for vol in volumes.values():
        if vol > 0:
            p = vol / w
            h -= p * math.log(p)
    return h


def average_density(assignment: CommunityAssignment) -> float:
    """Mean over non-empty communities of ``volume / (size * (size - 1))``.

    Singleton communities contribute 0.
    """
    if not assignment.labels:
        raise UndefinedInputError("average density of an empty assignment")
    sizes = Counter(assignment.labels.values())
    volumes = assignment.volumes
    total = 0.0
    for label, size in sizes.items():
        if size > 1:
            total += volumes.get(label, 0) / (size * (size - 1))
    return total / len(sizes)


def score(result: SweepResult | CommunityAssignment, criterion: str) -> float:
    assignment = result.assignment if isinstance(result, SweepResult) else result
    if criterion == "entropy":
        return entropy(assignment.volumes)
    if criterion == "density":
        return average_density(assignment)
    raise ValueError(f"unknown criterion {criterion!r}; expected one of {CRITERIA}")


def select_best(
    results: Sequence[SweepResult], criterion: str = "entropy", direction: str = "max"
) -> int:
    """Index of the best result under ``criterion``.

    Ties go to the smallest ``v_max``, then to the earliest position.
    """
    if not results:
        raise UndefinedInputError("no results to select from")
    if direction not in DIRECTIONS:
        raise ValueError(f"unknown direction {direction!r}; expected one of {DIRECTIONS}")
    sign = 1.0 if direction == "max" else -1.0
    scores = [sign * score(r, criterion) for r in results]
    return min(range(len(results)), key=lambda a: (-scores[a], results[a].v_max, a))
