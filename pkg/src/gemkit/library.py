"""Standard small graphs used as fixtures, documentation examples, and
regression anchors."""

from __future__ import annotations

from .graph import ColoredGraph
from .moves import suspend


def k2(n: int) -> ColoredGraph:
    """The order-2 graph on n+1 colors; represents the n-sphere."""
    return ColoredGraph(tuple((1, 0) for _ in range(n + 1)))


def torus6() -> ColoredGraph:
    """The standard order-6 3-colored graph representing the torus: color c
    matches i with 3 + ((i + c) mod 3)."""
    rows = tuple(
        tuple(3 + ((i + c) % 3) if i < 3 else (i - 3 - c) % 3 for i in range(6))
        for c in range(3)
    )
    return ColoredGraph(rows)


def torus_interval() -> ColoredGraph:
    """Order-6 4-colored graph for the torus times an interval: the torus
    graph with its color-1 matching duplicated."""
    return suspend(torus6(), 1)


def torus_disk() -> ColoredGraph:
    """Order-6 5-colored graph for the torus times a disk: duplicate colors
    1 then 2 of the torus graph."""
    return suspend(torus_interval(), 2)


def q4() -> ColoredGraph:
    """The bipartite supercontracted order-4 5-colored graph (a 4-sphere):
    colors 0,1 carry the matching (01)(23), colors 2,3,4 carry (03)(12)."""
    a, b = (1, 0, 3, 2), (3, 2, 1, 0)
    return ColoredGraph((a, a, b, b, b))


def order4_nonbipartite(variant: int = 0) -> ColoredGraph:
    """The two non-bipartite supercontracted order-4 5-colored graphs, both
    representing the projective plane times a disk.

    Variant 0 spreads the three distinct matchings as 3+1+1, variant 1 as
    2+2+1; their reduced G-degrees are 3 and 4.
    """
    a, b, c = (1, 0, 3, 2), (3, 2, 1, 0), (2, 3, 0, 1)
    if variant == 0:
        return ColoredGraph((a, a, a, b, c))
    if variant == 1:
        return ColoredGraph((a, a, b, b, c))
    raise ValueError("variant must be 0 or 1")


def rp3() -> ColoredGraph:
    """The order-8 4-colored crystallization of real projective 3-space: the
    unique bipartite supercontracted closed order-8 graph with H1 = Z/2."""
    return ColoredGraph(
        (
            (1, 0, 3, 2, 5, 4, 7, 6),
            (7, 6, 5, 4, 3, 2, 1, 0),
            (5, 4, 7, 6, 1, 0, 3, 2),
            (3, 2, 1, 0, 7, 6, 5, 4),
        )
    )
