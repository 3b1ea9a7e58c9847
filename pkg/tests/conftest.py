import random

import pytest

TWO_TRIANGLES = [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (3, 4)]


def random_stream(rng: random.Random, n: int, m: int) -> list[tuple[int, int]]:
    """Random multigraph stream on nodes 0..n-1 without self-loops."""
    edges = []
    while len(edges) < m:
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            edges.append((a, b))
    return edges


def random_partition(rng: random.Random, n: int) -> dict[int, int]:
    k = rng.randint(1, n)
    return {node: rng.randrange(k) for node in range(n)}


@pytest.fixture
def two_triangles_file(tmp_path):
    path = tmp_path / "two_triangles.txt"
    path.write_text("# two triangles joined by a bridge\n"
                    + "".join(f"{u}\t{v}\n" for u, v in TWO_TRIANGLES))
    return path


# filled by tests/test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
