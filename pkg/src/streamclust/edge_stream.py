"""Edge-list ingestion.

Input files follow the SNAP convention: one edge per line, two non-negative
integer node ids separated by spaces or tabs, ``#`` starting a comment line.
Self-loops are dropped (and counted), duplicate edges are kept.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Iterable, Iterator
from pathlib import Path
from typing import NamedTuple

from .exceptions import ParseError

logger = logging.getLogger(__name__)


class Edge(NamedTuple):
    u: int
    v: int


#: Returned by :func:`parse_edge_line` for comments, blank lines and self-loops.
SKIP = None


def parse_pair_line(line: str, lineno: int = 0) -> tuple[int, int] | None:
    """Parse a line holding two non-negative integers.

    Blank and ``#`` lines give ``None``. Used for edge lists as well as
    ``node_id community_id`` assignment files.
    """
    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return None
    tokens = stripped.split()
    if len(tokens) != 2:
        raise ParseError(lineno, line, f"expected 2 tokens, got {len(tokens)}")
    try:
        a, b = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise ParseError(lineno, line, "non-integer token") from None
    if a < 0 or b < 0:
        raise ParseError(lineno, line, "negative integer")
    return a, b


def parse_edge_line(line: str, lineno: int = 0) -> Edge | None:
    """Parse one edge-list line.

    Returns an :class:`Edge`, or ``SKIP`` (``None``) for blank lines, ``#``
    comments and self-loops. Raises :class:`ParseError` otherwise.
    """
    pair = parse_pair_line(line, lineno)
    if pair is None or pair[0] == pair[1]:
        return SKIP
    return Edge(*pair)


class EdgeStream:
    """Single-use iterator over edges that counts what it has delivered.

    There is no way to rewind: iterating a second time continues from where
    the first iteration stopped (usually the end).
    """

    def __init__(self, source: Iterable[Edge | tuple[int, int]]):
        self._it = iter(source)
        self.count = 0

    def __iter__(self) -> Iterator[Edge]:
        return self

    def __next__(self) -> Edge:
        edge = next(self._it)
        self.count += 1
        return edge


class FileEdgeStream(EdgeStream):
    """:class:`EdgeStream` reading an edge-list file.

    ``self_loops`` counts dropped self-loop lines seen so far.
    """

    def __init__(self, path: str | Path, shuffle_seed: int | None = None):
        self.path = Path(path)
        self.shuffle_seed = shuffle_seed
        self.self_loops = 0
        # open eagerly so a missing file fails here, not on first next()
        self._fh = open(self.path, encoding="utf-8")
        if shuffle_seed is None:
            source: Iterable[Edge] = self._read()
        else:
            # shuffling needs the full edge list in memory
            edges = list(self._read())
            random.Random(shuffle_seed).shuffle(edges)
            source = edges
        super().__init__(source)

    def _read(self) -> Iterator[Edge]:
        with self._fh as fh:
            for lineno, line in enumerate(fh, start=1):
                edge = parse_edge_line(line, lineno)
                if edge is not None:
                    yield edge
                elif line.strip() and not line.lstrip().startswith("#"):
                    # parsed cleanly but skipped: only self-loops get here
                    self.self_loops += 1
        if self.self_loops:
            logger.warning("%s: dropped %d self-loop line(s)", self.path, self.self_loops)

    @property
    def order(self) -> str:
        return "as-is" if self.shuffle_seed is None else "shuffled"


def open_stream(path: str | Path, shuffle_seed: int | None = None) -> FileEdgeStream:
    """Open an edge-list file as a stream.

    With ``shuffle_seed`` set, edges are delivered in a seeded uniform random
    permutation of file order; the same seed always gives the same order.
    """
    return FileEdgeStream(path, shuffle_seed)
