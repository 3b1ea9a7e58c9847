"""Single-pass edge-streaming graph clustering.

Each node keeps a degree and a community label, each community a volume;
no edge is stored. See :mod:`streamclust.engine`.
"""

from .edge_stream import Edge, EdgeStream, open_stream, parse_edge_line
from .engine import (
    ClusterState,
    CommunityAssignment,
    StreamingClusterer,
    SweepClusterer,
    process_edge,
    run,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "ClusterState",
    "CommunityAssignment",
    "Edge",
    "EdgeStream",
    "StreamingClusterer",
    "SweepClusterer",
    "open_stream",
    "parse_edge_line",
    "process_edge",
    "run",
    "run_sweep",
]
