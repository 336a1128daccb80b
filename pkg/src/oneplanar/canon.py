"""Canonical labeling, isomorphism tests and automorphism groups.

The canonizer runs iterative color refinement, then backtracks over the
vertices of the first non-singleton cell, individualizing each in turn
and keeping the lexicographically least relabeled adjacency encoding.
Instances in this project stay small, so the plain search (no partial
pruning, no invariant shortcuts) is deliberate: correctness is easy to
audit and a brute-force permutation oracle covers it in the tests.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence

from .graph import Graph


class CanonicalForm(NamedTuple):
    """Relabeling-invariant fingerprint: equal forms iff isomorphic."""

    n: int
    colors: tuple[int, ...]  # normalized color of canonical vertex i
    edges: tuple[tuple[int, int], ...]


def _normalize_colors(n: int, coloring: Optional[Sequence[int]]) -> tuple[int, ...]:
    if coloring is None:
        return (0,) * n
    if len(coloring) != n:
        raise ValueError(f"coloring has {len(coloring)} entries for {n} vertices")
    values = sorted(set(coloring))
    rank = {c: i for i, c in enumerate(values)}
    return tuple(rank[c] for c in coloring)


def _refine(bits: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement: split cells by neighbor counts into every cell."""
    cells = [list(c) for c in cells]
    changed = True
    while changed:
        changed = False
        for splitter in list(cells):
            smask = 0
            for v in splitter:
                smask |= 1 << v
            new_cells: list[list[int]] = []
            for cell in cells:
                if len(cell) == 1:
                    new_cells.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault((bits[v] & smask).bit_count(), []).append(v)
                if len(groups) == 1:
                    new_cells.append(cell)
                else:
                    changed = True
                    for key in sorted(groups):
                        new_cells.append(groups[key])
            cells = new_cells
            if changed:
                break
    return cells


def _initial_cells(n: int, colors: tuple[int, ...]) -> list[list[int]]:
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(colors[v], []).append(v)
    return [groups[c] for c in sorted(groups)]


def _leaf_code(g: Graph, order: list[int]) -> tuple[int, ...]:
    """Adjacency encoding under the labeling order[i] -> i, as bitmask rows."""
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    rows = []
    for v in order:
        row = 0
        rest = g.bits[v]
        while rest:
            w = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            row |= 1 << pos[w]
        rows.append(row)
    return tuple(rows)


def _canon_search(g: Graph, colors: tuple[int, ...], collect_auts: bool):
    best: dict = {"code": None, "order": None}
    auts: list[tuple[int, ...]] = []

    def rec(cells: list[list[int]]) -> None:
        cells = _refine(g.bits, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            code = _leaf_code(g, order)
            if best["code"] is None or code < best["code"]:
                best["code"] = code
                best["order"] = order
                if collect_auts:
                    auts.clear()
                    auts.append(tuple(order))
            elif collect_auts and code == best["code"]:
                auts.append(tuple(order))
            return
        cell = cells[target]
        for v in cell:
            child = (
                cells[:target]
                + [[v], [w for w in cell if w != v]]
                + cells[target + 1 :]
            )
            rec(child)

    rec(_initial_cells(g.n, colors))
    return best["code"], best["order"], auts


def canonical_labeling(
    g: Graph, coloring: Optional[Sequence[int]] = None
) -> list[int]:
    """Permutation sigma with sigma[v] = canonical label of v."""
    colors = _normalize_colors(g.n, coloring)
    _, order, _ = _canon_search(g, colors, collect_auts=False)
    sigma = [0] * g.n
    for i, v in enumerate(order):
        sigma[v] = i
    return sigma


def canonical_form(
    g: Graph, coloring: Optional[Sequence[int]] = None
) -> CanonicalForm:
    """Canonical fingerprint, invariant under (color-preserving) relabeling."""
    colors = _normalize_colors(g.n, coloring)
    _, order, _ = _canon_search(g, colors, collect_auts=False)
    sigma = [0] * g.n
    for i, v in enumerate(order):
        sigma[v] = i
    edges = tuple(
        sorted(tuple(sorted((sigma[u], sigma[v]))) for u, v in g.edges())
    )
    return CanonicalForm(g.n, tuple(colors[v] for v in order), edges)


def is_isomorphic(
    g: Graph,
    h: Graph,
    coloring_g: Optional[Sequence[int]] = None,
    coloring_h: Optional[Sequence[int]] = None,
) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    return canonical_form(g, coloring_g) == canonical_form(h, coloring_h)


def automorphisms(
    g: Graph, coloring: Optional[Sequence[int]] = None
) -> list[tuple[int, ...]]:
    """All (color-preserving) automorphisms, as tuples perm[v] = image of v."""
    colors = _normalize_colors(g.n, coloring)
    _, _, orders = _canon_search(g, colors, collect_auts=True)
    base = orders[0]
    # order maps position -> vertex; automorphism = order_i after order_0^-1
    inv_base = [0] * g.n
    for i, v in enumerate(base):
        inv_base[v] = i
    perms = set()
    for order in orders:
        perm = tuple(order[inv_base[v]] for v in range(g.n))
        perms.add(perm)
    return sorted(perms)


def isomorphism_map(g: Graph, h: Graph) -> Optional[list[int]]:
    """A vertex map g -> h realizing an isomorphism, or None."""
    if g.n != h.n or g.m != h.m:
        return None
    if canonical_form(g) != canonical_form(h):
        return None
    sg = canonical_labeling(g)
    sh = canonical_labeling(h)
    inv_sh = [0] * h.n
    for v in range(h.n):
        inv_sh[sh[v]] = v
    return [inv_sh[sg[v]] for v in range(g.n)]


def bruteforce_is_isomorphic(g: Graph, h: Graph) -> bool:
    """Oracle: try all bijections. Only sensible for n <= 8."""
    if g.n != h.n or g.m != h.m:
        return False
    for perm in itertools.permutations(range(g.n)):
        if all(h.bits[perm[u]] >> perm[v] & 1 for u, v in g.edges()):
            return True
    return False


@lru_cache(maxsize=100000)
def _cached_form(n: int, edges: tuple) -> CanonicalForm:
    return canonical_form(Graph(n, edges))


def cached_canonical_form(g: Graph) -> CanonicalForm:
    """Memoized uncolored canonical form keyed by the literal edge list."""
    return _cached_form(g.n, g.edges())
