"""Isomorph-free generation of 3-connected spherical quadrangulations and
their augmentation into optimal (4n-8 edge) drawings.

Two independent routes exist on purpose. ``enumerate_quadrangulations``
grows embedded quadrangulations from pseudo-double-wheel seeds by two
local expansions (vertex splitting and ring insertion inside a face) with
canonical rejection. ``oracle_quadrangulations`` ignores embeddings
entirely: it filters bipartite degree-constrained adjacency matrices. The
generator is trusted only as far as it agrees with the oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .canon import CanonicalForm, canonical_form
from .drawing import OnePlaneDrawing
from .embedding import PlaneEmbedding, embedding_code, face_vertices, planar_rotations
from .graph import Graph, is_bipartite, is_connected, is_three_connected, min_degree


class QuadrangulationError(ValueError):
    pass


@dataclass(frozen=True)
class Quadrangulation:
    """A validated spherical embedding whose faces are all 4-cycles."""

    embedding: PlaneEmbedding

    @property
    def n(self) -> int:
        return self.embedding.n

    @property
    def m(self) -> int:
        return self.embedding.m

    def graph(self) -> Graph:
        return self.embedding.graph()

    def faces(self):
        return self.embedding.faces()

    def canonical_graph_form(self) -> CanonicalForm:
        return canonical_form(self.graph())

    def code(self) -> tuple:
        return embedding_code(self.embedding)

    def is_three_connected(self) -> bool:
        return is_three_connected(self.graph())


def _check_quadrangulation(emb: PlaneEmbedding, *, require_min_degree=3) -> Optional[str]:
    """None if emb is a simple spherical quadrangulation, else the defect."""
    try:
        emb.check_consistent()
    except Exception as exc:
        return str(exc)
    g = emb.graph()
    if g.n < 4:
        return f"too few vertices ({g.n})"
    if not is_connected(g):
        return "not connected"
    if min_degree(g) < require_min_degree:
        return f"minimum degree {min_degree(g)} < {require_min_degree}"
    if not is_bipartite(g):
        return "not bipartite"
    if g.m != 2 * g.n - 4:
        return f"m={g.m}, expected 2n-4={2 * g.n - 4}"
    if not emb.genus_zero():
        return f"Euler characteristic {emb.euler_characteristic()}"
    for walk in emb.faces():
        if len(walk) != 4:
            return f"face of length {len(walk)}"
        if len(set(face_vertices(walk))) != 4:
            return f"degenerate face {face_vertices(walk)}"
    return None


def quadrangulation_from_embedding(emb: PlaneEmbedding) -> Quadrangulation:
    defect = _check_quadrangulation(emb)
    if defect is not None:
        raise QuadrangulationError(defect)
    return Quadrangulation(emb)


def pseudo_double_wheel(k: int) -> Quadrangulation:
    """2k-cycle with alternate vertices joined to a north and a south pole.

    The k = 3 member is the cube. Vertices: cycle 0..2k-1, north 2k
    (adjacent to the even cycle vertices), south 2k+1 (odd ones).
    """
    if k < 3:
        raise QuadrangulationError(f"pseudo double wheel needs k >= 3, got {k}")
    n = 2 * k
    north, south = n, n + 1
    rotations: list[tuple[int, ...]] = []
    for i in range(n):
        nxt, prv = (i + 1) % n, (i - 1) % n
        if i % 2 == 0:
            rotations.append((nxt, north, prv))
        else:
            rotations.append((south, nxt, prv))
    rotations.append(tuple(range(0, n, 2)))  # north
    rotations.append(tuple(range(n - 1, 0, -2)))  # south
    return quadrangulation_from_embedding(PlaneEmbedding(rotations))


# -- expansions ---------------------------------------------------------------


def _split_vertex(
    emb: PlaneEmbedding, v: int, i: int, j: int
) -> Optional[PlaneEmbedding]:
    """Split v along rotation positions i < j; both parts keep degree >= 3.

    The new vertex inherits the arc w_j..w_i (wrapping); v keeps w_i..w_j.
    A new 4-face (v, w_i, new, w_j) appears between them.
    """
    rot = emb.rotations[v]
    d = len(rot)
    if not (2 <= j - i <= d - 2):
        return None
    w_i, w_j = rot[i], rot[j]
    v2 = emb.n
    rot_v1 = tuple(rot[i : j + 1])
    rot_v2 = tuple(rot[j:] + rot[: i + 1])
    rotations = [list(r) for r in emb.rotations] + [list(rot_v2)]
    rotations[v] = list(rot_v1)
    keep = set(rot_v1)
    for w in rot_v2:
        if w in (w_i, w_j):
            continue
        r = rotations[w]
        r[r.index(v)] = v2
    # shared arc ends see both halves, in face-consistent order
    r = rotations[w_i]
    r[r.index(v) : r.index(v) + 1] = [v, v2]
    r = rotations[w_j]
    r[r.index(v) : r.index(v) + 1] = [v2, v]
    out = PlaneEmbedding(rotations)
    if _check_quadrangulation(out) is not None:
        return None
    return out


def _insert_ring(emb: PlaneEmbedding, walk) -> Optional[PlaneEmbedding]:
    """Insert a 4-ring inside a face, one spoke per corner."""
    vs = face_vertices(walk)
    n = emb.n
    ring = [n, n + 1, n + 2, n + 3]
    rotations = [list(r) for r in emb.rotations]
    for t in range(4):
        v_t, v_prev = vs[t], vs[(t - 1) % 4]
        r = rotations[v_t]
        r.insert(r.index(v_prev) + 1, ring[t])
    for t in range(4):
        rotations.append([vs[t], ring[(t - 1) % 4], ring[(t + 1) % 4]])
    out = PlaneEmbedding(rotations)
    if _check_quadrangulation(out) is not None:
        return None
    return out


def _expansions(q: Quadrangulation) -> Iterator[PlaneEmbedding]:
    emb = q.embedding
    for v in range(emb.n):
        d = len(emb.rotations[v])
        for i in range(d):
            for j in range(i + 2, min(i + d - 1, d)):
                out = _split_vertex(emb, v, i, j)
                if out is not None:
                    yield out
    for walk in emb.faces():
        out = _insert_ring(emb, walk)
        if out is not None:
            yield out


@lru_cache(maxsize=None)
def _frontier(n: int) -> tuple[Quadrangulation, ...]:
    """All simple min-degree-3 spherical quadrangulations on n vertices,
    one per embedding-isomorphism class, grown by the expansion moves."""
    if n < 8:
        return ()
    by_code: dict[tuple, Quadrangulation] = {}
    if n % 2 == 0:
        seed = pseudo_double_wheel((n - 2) // 2)
        by_code[seed.code()] = seed
    for parent_size, move_cost in ((n - 1, 1), (n - 4, 4)):
        if parent_size < 8:
            continue
        for parent in _frontier(parent_size):
            for emb in _expansions(parent):
                if emb.n != n:
                    continue
                q = Quadrangulation(emb)
                by_code.setdefault(q.code(), q)
    return tuple(by_code[c] for c in sorted(by_code))


def enumerate_quadrangulations(n: int) -> list[Quadrangulation]:
    """All simple 3-connected spherical quadrangulations on n vertices,
    exactly one per isomorphism class, sorted by canonical form.

    Completeness of the expansion moves is not taken on faith: the test
    suite requires agreement with :func:`oracle_quadrangulations` for
    every n <= 10 and with the extended filter enumeration beyond that.
    """
    if n < 8:
        return []
    out = {}
    for q in _frontier(n):
        if q.is_three_connected():
            out.setdefault(q.canonical_graph_form(), q)
    return [out[f] for f in sorted(out)]


# -- independent oracle -------------------------------------------------------


ORACLE_MAX_N = 10


def oracle_quadrangulations(n: int) -> list[Quadrangulation]:
    """Filter-based ground truth for n <= 10, embedding-free by design.

    Enumerates bipartite adjacency matrices with the forced degree
    profile, then keeps connected, planar, 3-connected graphs. Such a
    graph is automatically a quadrangulation: it is bipartite, so every
    face has length >= 4, and m = 2n-4 forces the average face length
    down to exactly 4.
    """
    if n > ORACLE_MAX_N:
        raise QuadrangulationError(
            f"oracle supports n <= {ORACLE_MAX_N}, got {n}; "
            "use the generator beyond the oracle range"
        )
    return _filter_enumeration(n)


def _filter_enumeration(n: int) -> list[Quadrangulation]:
    if n < 8:
        return []
    m = 2 * n - 4
    out: dict[CanonicalForm, Quadrangulation] = {}
    for a in range(3, n // 2 + 1):
        b = n - a
        if 3 * a > m or 3 * b > m:
            continue
        for g in _bipartite_candidates(a, b, m):
            if not is_connected(g) or not is_three_connected(g):
                continue
            emb = planar_rotations(g)
            if emb is None:
                continue
            form = canonical_form(g)
            if form in out:
                continue
            q = quadrangulation_from_embedding(emb)
            out[form] = q
    return [out[f] for f in sorted(out)]


def _bipartite_candidates(a: int, b: int, m: int) -> Iterator[Graph]:
    """Bipartite graphs on parts (a, b) with m edges, min degree 3 both sides.

    Rows are subsets of the b columns; within equal row degrees, rows are
    required non-increasing as bitmasks, which kills most row-permutation
    duplicates (the rest fall to canonical dedup). Column sums are pruned
    against the degree window [3, a] as rows are placed.
    """
    for degs in _degree_profiles(a, b, m):
        subsets = {
            d: [sum(1 << c for c in combo) for combo in itertools.combinations(range(b), d)]
            for d in set(degs)
        }
        rows: list[int] = []

        def place(idx: int, col_sums: tuple[int, ...]) -> Iterator[Graph]:
            if idx == a:
                if all(3 <= s <= a for s in col_sums):
                    edges = []
                    for r, mask in enumerate(rows):
                        for c in range(b):
                            if mask >> c & 1:
                                edges.append((r, a + c))
                    yield Graph(a + b, edges)
                return
            remaining = a - idx - 1
            for mask in subsets[degs[idx]]:
                if rows and degs[idx] == degs[idx - 1] and mask > rows[-1]:
                    continue
                new_sums = list(col_sums)
                ok = True
                for c in range(b):
                    if mask >> c & 1:
                        new_sums[c] += 1
                        if new_sums[c] > a:
                            ok = False
                            break
                if not ok:
                    continue
                # every column still needs to reach degree 3
                if any(s + remaining < 3 for s in new_sums):
                    continue
                rows.append(mask)
                yield from place(idx + 1, tuple(new_sums))
                rows.pop()

        yield from place(0, (0,) * b)


def _degree_profiles(a: int, b: int, m: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing degree tuples for the a-side, entries in [3, b]."""

    def rec(left: int, total: int, cap: int) -> Iterator[tuple[int, ...]]:
        if left == 0:
            if total == 0:
                yield ()
            return
        for d in range(min(cap, b, total - 3 * (left - 1)), 2, -1):
            for rest in rec(left - 1, total - d, d):
                yield (d,) + rest

    yield from rec(a, m, b)


def extended_filter_quadrangulations(n: int) -> list[Quadrangulation]:
    """The oracle's machinery without its n <= 10 contract, for cross-checks."""
    return _filter_enumeration(n)


# -- augmentation -------------------------------------------------------------


class AugmentError(ValueError):
    """A diagonal collided with an existing edge or another diagonal."""


def augment_to_optimal(q: Quadrangulation) -> OnePlaneDrawing:
    """Add one crossing diagonal pair inside every face.

    The result has 4n-8 edges and n-2 crossings. Diagonal collisions
    (with skeleton edges or between faces) abort with a report naming the
    culprits; they cannot occur for 3-connected inputs, but that is
    verified here rather than assumed.
    """
    emb = q.embedding
    g = q.graph()
    n = g.n
    walks = emb.faces()
    face_of: dict[tuple[int, int], int] = {}
    for f, walk in enumerate(walks):
        for dart in walk:
            face_of[dart] = f

    new_edges: dict[tuple[int, int], int] = {}
    crossings = []
    for f, walk in enumerate(walks):
        v0, v1, v2, v3 = face_vertices(walk)
        for diag in ((v0, v2), (v1, v3)):
            e = (min(diag), max(diag))
            if g.has_edge(*e):
                raise AugmentError(
                    f"diagonal {e} of face {f} duplicates a skeleton edge"
                )
            if e in new_edges:
                raise AugmentError(
                    f"diagonal {e} appears in faces {new_edges[e]} and {f}"
                )
            new_edges[e] = f
        crossings.append(((min(v0, v2), max(v0, v2)), (min(v1, v3), max(v1, v3))))

    rotations: list[tuple[int, ...]] = []
    for v in range(n):
        rot = emb.rotations[v]
        d = len(rot)
        new_rot = []
        for t in range(d):
            w = rot[t]
            w_next = rot[(t + 1) % d]
            new_rot.append(w)
            new_rot.append(n + face_of[(v, w_next)])
        rotations.append(tuple(new_rot))
    for f, walk in enumerate(walks):
        rotations.append(face_vertices(walk))

    base = Graph(n, list(g.edges()) + list(new_edges))
    return OnePlaneDrawing(base, tuple(crossings), PlaneEmbedding(rotations))
