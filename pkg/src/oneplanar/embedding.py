"""Combinatorial spherical embeddings: rotation systems and face walks.

An embedding is a cyclic order of neighbors around each vertex. Faces are
traced with the successor rule: after arriving along (u, v), leave along
(v, w) where w follows u in the rotation at v. A rotation system is
genus 0 per connected component exactly when V - E + F = 1 + #components.
"""

from __future__ import annotations

from typing import Iterator, Optional, Sequence

import networkx as nx

from .graph import Graph, connected_components


class EmbeddingError(ValueError):
    pass


class PlaneEmbedding:
    """Rotation system plus derived face walks, immutable."""

    __slots__ = ("rotations", "_faces", "_hash")

    def __init__(self, rotations: Sequence[Sequence[int]]):
        self.rotations = tuple(tuple(r) for r in rotations)
        self._faces = None
        self._hash = None

    @property
    def n(self) -> int:
        return len(self.rotations)

    @property
    def m(self) -> int:
        return sum(len(r) for r in self.rotations) // 2

    def graph(self) -> Graph:
        edges = [(u, v) for u in range(self.n) for v in self.rotations[u] if u < v]
        return Graph(self.n, edges)

    def check_consistent(self) -> None:
        """Rotations must list each neighbor exactly once, symmetrically."""
        for v, rot in enumerate(self.rotations):
            if len(set(rot)) != len(rot):
                raise EmbeddingError(f"rotation at {v} repeats a neighbor: {rot}")
            for w in rot:
                if not 0 <= w < self.n:
                    raise EmbeddingError(f"rotation at {v} names unknown vertex {w}")
                if v == w:
                    raise EmbeddingError(f"self-loop at {v}")
                if v not in self.rotations[w]:
                    raise EmbeddingError(f"dart {v}->{w} has no partner {w}->{v}")

    def faces(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """All face walks, each a cyclic tuple of darts (u, v).

        Every dart occurs in exactly one face walk. Walks are rotated so
        the lexicographically least dart comes first, and the list is
        sorted, so the result is independent of traversal order.
        """
        if self._faces is not None:
            return self._faces
        index = {
            (v, w): i
            for v in range(self.n)
            for i, w in enumerate(self.rotations[v])
        }
        unseen = set(index)
        walks = []
        while unseen:
            dart = min(unseen)
            walk = []
            cur = dart
            while True:
                walk.append(cur)
                unseen.discard(cur)
                u, v = cur
                i = index[(v, u)]
                rot = self.rotations[v]
                cur = (v, rot[(i + 1) % len(rot)])
                if cur == dart:
                    break
            k = walk.index(min(walk))
            walks.append(tuple(walk[k:] + walk[:k]))
        self._faces = tuple(sorted(walks))
        return self._faces

    def face_count(self) -> int:
        return len(self.faces())

    def genus_zero(self) -> bool:
        comps = len(connected_components(self.graph()))
        return self.n - self.m + self.face_count() == 1 + comps

    def euler_characteristic(self) -> int:
        return self.n - self.m + self.face_count()

    def mirrored(self) -> "PlaneEmbedding":
        return PlaneEmbedding([tuple(reversed(r)) for r in self.rotations])

    def __eq__(self, other) -> bool:
        return isinstance(other, PlaneEmbedding) and self.rotations == other.rotations

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rotations)
        return self._hash

    def __repr__(self) -> str:
        return f"PlaneEmbedding(n={self.n}, m={self.m})"


def face_vertices(face: tuple[tuple[int, int], ...]) -> tuple[int, ...]:
    """Corner sequence of a face walk (first vertex of each dart)."""
    return tuple(u for u, _ in face)


def planar_rotations(g: Graph) -> Optional[PlaneEmbedding]:
    """A genus-0 rotation system for g, or None if g is not planar.

    Backed by a library left-right planarity test; only the boolean
    answer and the returned rotation system are relied upon.
    """
    if g.n == 0:
        return PlaneEmbedding([])
    ng = nx.Graph()
    ng.add_nodes_from(range(g.n))
    ng.add_edges_from(g.edges())
    ok, emb = nx.check_planarity(ng, counterexample=False)
    if not ok:
        return None
    rotations = []
    for v in range(g.n):
        if g.degree(v) == 0:
            rotations.append(())
        else:
            rotations.append(tuple(emb.neighbors_cw_order(v)))
    pe = PlaneEmbedding(rotations)
    return pe


def is_planar(g: Graph) -> bool:
    if g.n == 0:
        return True
    if g.m > max(0, 3 * g.n - 6):
        return False
    ng = nx.Graph()
    ng.add_nodes_from(range(g.n))
    ng.add_edges_from(g.edges())
    return nx.check_planarity(ng, counterexample=False)[0]


def _cyclic_orders(first: int, rest: list[int]) -> Iterator[tuple[int, ...]]:
    import itertools

    for perm in itertools.permutations(rest):
        yield (first,) + perm


def all_embeddings(
    g: Graph,
    rotation_filter=None,
) -> Iterator[PlaneEmbedding]:
    """Every genus-0 rotation system of a connected graph.

    Rotations are assigned vertex by vertex; cyclic orders are normalized
    by fixing the smallest neighbor first (and, at the first vertex of
    degree >= 3, also quotienting nothing further: reflections are kept,
    callers deduplicate). ``rotation_filter(v, rot)`` may reject a cyclic
    order early, e.g. to force alternation at crossing dummies.

    The count of candidate systems is prod (deg(v)-1)!, so this is only
    for small instances; 3-connected planarizations should use
    :func:`planar_rotations` and Whitney uniqueness instead.
    """
    n = g.n
    choices: list[list[tuple[int, ...]]] = []
    for v in range(n):
        nbrs = list(g.adj[v])
        if len(nbrs) <= 2:
            opts = [tuple(nbrs)]
        else:
            opts = list(_cyclic_orders(nbrs[0], nbrs[1:]))
        if rotation_filter is not None:
            opts = [r for r in opts if rotation_filter(v, r)]
        choices.append(opts)

    target_faces = g.m - n + 1 + len(connected_components(g))
    rotations: list[tuple[int, ...]] = [()] * n

    def closed_faces_upper_ok(upto: int) -> bool:
        """Partial Euler prune: count faces already forced closed.

        Only darts между vertices < upto have fixed successors; any face
        walk that stays inside that region is final. The final embedding
        cannot have more faces than target_faces.
        """
        index = {}
        for v in range(upto):
            for i, w in enumerate(rotations[v]):
                index[(v, w)] = i
        seen = set()
        closed = 0
        for start in index:
            if start in seen:
                continue
            cur = start
            ok = True
            path = []
            while True:
                path.append(cur)
                u, v = cur
                if v >= upto:
                    ok = False
                    break
                i = index[(v, u)]
                rot = rotations[v]
                cur = (v, rot[(i + 1) % len(rot)])
                if cur == start:
                    break
                if cur in seen:
                    ok = False
                    break
            seen.update(path)
            if ok:
                closed += 1
                if closed > target_faces:
                    return False
        return True

    def rec(v: int) -> Iterator[PlaneEmbedding]:
        if v == n:
            emb = PlaneEmbedding(list(rotations))
            if emb.face_count() == target_faces:
                yield emb
            return
        for rot in choices[v]:
            rotations[v] = rot
            if v >= 2 and not closed_faces_upper_ok(v + 1):
                continue
            yield from rec(v + 1)

    yield from rec(0)


def _component_code(
    emb: PlaneEmbedding, colors: Sequence[int], comp: Sequence[int]
) -> tuple:
    """Least rooted-map encoding over all start darts and both orientations."""
    comp_set = set(comp)
    best = None
    for variant in (emb, emb.mirrored()):
        index = {
            (v, w): i
            for v in comp
            for i, w in enumerate(variant.rotations[v])
        }
        darts = [(u, v) for u in comp for v in variant.rotations[u]]
        if not darts:
            return (colors[comp[0]],)
        for start in darts:
            label = {start[0]: 0}
            order = [start[0]]
            encoding: list = []
            queue = [start]
            pos = 0
            while pos < len(queue):
                u, v = queue[pos]
                pos += 1
                # walk the rotation at u starting from the discovery dart
                rot = variant.rotations[u]
                i = index[(u, v)]
                seq = [rot[(i + k) % len(rot)] for k in range(len(rot))]
                row = []
                for w in seq:
                    if w not in label:
                        label[w] = len(order)
                        order.append(w)
                        queue.append((w, u))
                    row.append(label[w])
                encoding.append((colors[u], tuple(row)))
            code = tuple(encoding)
            if best is None or code < best:
                best = code
            assert len(order) == len(comp_set)
    return best


def embedding_code(
    emb: PlaneEmbedding, colors: Optional[Sequence[int]] = None
) -> tuple:
    """Canonical code of an embedded colored graph, up to reflection.

    For every starting dart and both orientations, vertices are labeled in
    first-visit order of a rotation-driven traversal; the least resulting
    encoding is the code. Two embeddings get equal codes iff some
    color-preserving graph isomorphism maps one rotation system onto the
    other directly or fully reversed. Components are encoded separately
    and combined as a sorted multiset; the rotation model does not track
    which face a component nests in, so this is the natural equivalence.
    """
    n = emb.n
    if colors is None:
        colors = [0] * n
    values = sorted(set(colors))
    rank = {c: i for i, c in enumerate(values)}
    colors = [rank[c] for c in colors]
    comps = connected_components(emb.graph())
    parts = sorted(_component_code(emb, colors, comp) for comp in comps)
    return (n, tuple(parts))
