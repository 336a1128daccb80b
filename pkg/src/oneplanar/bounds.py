"""Closed-form edge bounds, the cactus predicate, and extremal constructions.

All bound arithmetic is exact: integer formulas stay integers and the
maximal-1-planar lower bound is a Fraction, never a float, because the
n=17 threshold comparison is an exact rational-vs-integer inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .drawing import OnePlaneDrawing, drawing_from_coordinates
from .graph import Graph, biconnected_components, is_connected
from .lex import lex_product
from .graph import cycle_graph, path_graph


def max_edges_1planar(n: int) -> int:
    """Largest edge count of any 1-planar graph on n >= 3 vertices.

    binom(n,2) while complete graphs are still 1-planar (n <= 6), the
    exceptional 4n-9 at n = 7 and n = 9, and 4n-8 everywhere else.
    """
    if n < 3:
        raise ValueError(f"bound defined for n >= 3, got {n}")
    if n <= 6:
        return n * (n - 1) // 2
    if n in (7, 9):
        return 4 * n - 9
    return 4 * n - 8


def maximal_1planar_lower_bound(n: int) -> Fraction:
    """Every maximal 1-planar graph on n >= 4 vertices has at least this many edges."""
    if n < 4:
        raise ValueError(f"bound defined for n >= 4, got {n}")
    return Fraction(20 * n, 9) - Fraction(10, 3)


def cactus_edge_bound(n: int) -> int:
    """Largest edge count of a cactus on n >= 1 vertices: floor(3(n-1)/2)."""
    if n < 1:
        raise ValueError(f"bound defined for n >= 1, got {n}")
    return 3 * (n - 1) // 2


def is_cactus(g: Graph) -> bool:
    """Connected, and every block is a single edge or a chordless cycle."""
    if g.n == 0 or not is_connected(g):
        return False
    for block in biconnected_components(g):
        vertices = {v for e in block for v in e}
        edge_count = len({tuple(sorted(e)) for e in block})
        if edge_count == 1:
            continue
        if edge_count != len(vertices):
            return False
    return True


def coro1_bound_ok(g: Graph, *, check_subgraphs: bool = False) -> bool:
    """Necessary edge-count condition for the doubled graph to be 1-planar.

    If G has n >= 2 vertices and G ∘ 2K1 is 1-planar, then m <= 2n-3
    (m <= 6 when n = 4). With ``check_subgraphs`` the same condition is
    also applied to every induced subgraph on >= 2 vertices.
    """
    import itertools

    if g.n < 2:
        raise ValueError("condition defined for n >= 2")

    def holds(n: int, m: int) -> bool:
        return m <= 6 if n == 4 else m <= 2 * n - 3

    if not holds(g.n, g.m):
        return False
    if check_subgraphs:
        for size in range(2, g.n):
            for combo in itertools.combinations(range(g.n), size):
                m = sum(1 for u, v in g.edges() if u in combo and v in combo)
                if not holds(size, m):
                    return False
    return True


def reducible_1planar_max_edges(n: int) -> Optional[int]:
    """Edge bound for reducible 1-planar graphs, None where none exist.

    Reducible graphs need n = k*l with k, l >= 2, so prime n and n < 4
    carry no bound. 24 is tight at n = 8; 4n-9 holds at n = 6 and n >= 9.
    """
    if n < 4 or all(n % l for l in range(2, n // 2 + 1)):
        return None
    if n == 4:
        return 6
    if n == 6:
        return 15
    if n == 8:
        return 24
    return 4 * n - 9


@dataclass(frozen=True)
class BoundTableRow:
    n: int
    max_1planar_edges: int
    maximal_1planar_lower_bound: Fraction
    cactus_max_edges: int
    reducible_1planar_max_edges: Optional[int]


def bound_table_row(n: int) -> BoundTableRow:
    if n < 4:
        raise ValueError("bound table starts at n = 4")
    return BoundTableRow(
        n,
        max_edges_1planar(n),
        maximal_1planar_lower_bound(n),
        cactus_edge_bound(n),
        reducible_1planar_max_edges(n),
    )


# -- extremal constructions --------------------------------------------------


def tight_family(k: int) -> tuple[Graph, OnePlaneDrawing]:
    """The path-of-triangles graph P_k ∘ C3 with its nested-triangle drawing.

    n = 3k vertices and 12k-9 = 4n-9 edges: consecutive triangle copies
    are joined completely; in the drawing the copies are drawn as
    concentric triangles, the three 'radial' joining edges of each gap
    stay uncrossed and the six skew ones cross in three pairs.
    """
    if k < 2:
        raise ValueError(f"tight_family needs k >= 2, got {k}")
    g = lex_product(path_graph(k), cycle_graph(3))
    coords: list[tuple[float, float]] = []
    for ring in range(k):
        radius = 3.0**ring
        phase = 0.37 * ring
        for t in range(3):
            a = phase + 2.0 * math.pi * t / 3.0
            coords.append((radius * math.cos(a), radius * math.sin(a)))
    d = drawing_from_coordinates(g, coords)
    if d.base != g or len(d.crossings) != 3 * (k - 1):
        raise AssertionError(
            f"nested-triangle construction produced {len(d.crossings)} crossings, "
            f"expected {3 * (k - 1)}"
        )
    return g, d


def k2222_drawing() -> OnePlaneDrawing:
    """The optimal drawing of K_{2,2,2,2}: cube skeleton plus one crossing
    pair per cube face. Optimal drawings are unique on the sphere, so this
    is the canonical 8-vertex optimal 1-planar fixture."""
    from .quadgen import augment_to_optimal, pseudo_double_wheel

    return augment_to_optimal(pseudo_double_wheel(3))
