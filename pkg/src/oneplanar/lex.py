"""Lexicographic products and complete factorization (reducibility) search.

A factorization witness partitions the vertices into equal-size classes
that are modules (no outside vertex distinguishes two members), induce
pairwise isomorphic copies of the right factor, and meet completely or
not at all according to the left factor's edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .canon import (
    automorphisms,
    canonical_form,
    canonical_labeling,
)
from .formats import emit_graph6
from .graph import Graph, induced_subgraph


def lex_product(g: Graph, h: Graph) -> Graph:
    """Substitute a copy of h for each vertex of g; vertex (a,b) -> a*h.n + b."""
    nh = h.n
    edges = []
    for a in range(g.n):
        base = a * nh
        edges.extend((base + u, base + v) for u, v in h.edges())
    for a, b in g.edges():
        for u in range(nh):
            for v in range(nh):
                edges.append((a * nh + u, b * nh + v))
    return Graph(g.n * nh, edges)


def lex_edge_count(n_g: int, m_g: int, n_h: int, m_h: int) -> int:
    """Edge count of a lexicographic product with the given factor sizes."""
    if min(n_g, m_g, n_h, m_h) < 0:
        raise ValueError("sizes must be nonnegative")
    return n_g * m_h + n_h * n_h * m_g


@dataclass(frozen=True)
class LexFactorization:
    """Witness that a graph is the product of left and right factors."""

    left: Graph
    right: Graph
    classes: tuple[tuple[int, ...], ...]  # ordered by minimum element
    class_isos: tuple[tuple[int, ...], ...]  # class_isos[i][j]: class vertex -> right vertex

    def verify(self, g: Graph) -> bool:
        """Recheck every structural requirement against g."""
        k, l = self.left.n, self.right.n
        if k < 2 or l < 2 or k * l != g.n:
            return False
        flat = sorted(v for cls in self.classes for v in cls)
        if flat != list(range(g.n)) or any(len(c) != l for c in self.classes):
            return False
        # classes meet completely or not at all, per the left factor
        for i in range(k):
            for j in range(i + 1, k):
                want = self.left.has_edge(i, j)
                for u in self.classes[i]:
                    for v in self.classes[j]:
                        if g.has_edge(u, v) != want:
                            return False
        # each class, relabeled by its iso, induces exactly the right factor
        for cls, iso in zip(self.classes, self.class_isos):
            if sorted(iso) != list(range(l)):
                return False
            pos = {v: iso[t] for t, v in enumerate(cls)}
            edges = set()
            for a_i, u in enumerate(cls):
                for v in cls[a_i + 1 :]:
                    if g.has_edge(u, v):
                        edges.add(tuple(sorted((pos[u], pos[v]))))
            if edges != set(self.right.edges()):
                return False
        return is_isomorphic_product(self, g)

    def as_text(self) -> str:
        """Serialized witness: left and right graph6, then the class partition."""
        part = ";".join(",".join(str(v) for v in cls) for cls in self.classes)
        return f"left={emit_graph6(self.left)} right={emit_graph6(self.right)} classes={part}"


def is_isomorphic_product(fact: LexFactorization, g: Graph) -> bool:
    return canonical_form(lex_product(fact.left, fact.right)) == canonical_form(g)


def _distinguisher_blocks(g: Graph, members: list[int], outsider: int) -> bool:
    """True when outsider is adjacent to some but not all of members."""
    row = g.bits[outsider]
    hits = sum(row >> v & 1 for v in members)
    return 0 < hits < len(members)


def _grow_classes(
    g: Graph, l: int, classes: list[list[int]], assigned: int
) -> Iterator[tuple[tuple[int, ...], ...]]:
    """DFS over partitions into size-l module classes.

    The class containing its minimum element is grown in increasing vertex
    order and classes are emitted in order of their minimum element, so each
    set partition is produced exactly once.
    """
    n = g.n
    if assigned == (1 << n) - 1:
        yield tuple(tuple(c) for c in classes)
        return
    seed = next(v for v in range(n) if not assigned >> v & 1)

    def extend(cls: list[int], mask: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if len(cls) == l:
            # full module check: no vertex outside may distinguish the class
            for w in range(n):
                if w in cls:
                    continue
                if _distinguisher_blocks(g, cls, w):
                    return
            classes.append(cls)
            yield from _grow_classes(g, l, classes, mask)
            classes.pop()
            return
        for w in range(cls[-1] + 1, n):
            if mask >> w & 1:
                continue
            new_cls = cls + [w]
            # any smaller outside vertex that distinguishes the partial class
            # can never join it (members only grow upward), so prune now
            ok = True
            for x in range(new_cls[-1]):
                if x in new_cls:
                    continue
                if _distinguisher_blocks(g, new_cls, x):
                    ok = False
                    break
            if ok:
                yield from extend(new_cls, mask | 1 << w)

    yield from extend([seed], assigned | 1 << seed)


def _partition_to_factorization(
    g: Graph, classes: tuple[tuple[int, ...], ...]
) -> Optional[LexFactorization]:
    """Build and validate a witness from a module partition, if one exists."""
    k = len(classes)
    l = len(classes[0])
    # quotient adjacency: sample one representative per class
    left_edges = []
    for i in range(k):
        for j in range(i + 1, k):
            if g.has_edge(classes[i][0], classes[j][0]):
                left_edges.append((i, j))
    left = Graph(k, left_edges)
    induced = [induced_subgraph(g, cls) for cls in classes]
    right = induced[0]
    right_form = canonical_form(right)
    isos = []
    sigma_right = canonical_labeling(right)
    inv_sigma_right = [0] * l
    for v in range(l):
        inv_sigma_right[sigma_right[v]] = v
    for sub in induced:
        if canonical_form(sub) != right_form:
            return None
        sigma = canonical_labeling(sub)
        isos.append(tuple(inv_sigma_right[sigma[t]] for t in range(l)))
    fact = LexFactorization(left, right, classes, tuple(isos))
    if not fact.verify(g):
        return None
    return fact


def _canonical_partition(
    classes: tuple[tuple[int, ...], ...], auts: list[tuple[int, ...]]
) -> tuple:
    """Orbit representative of a partition under the automorphism group."""
    best = None
    for perm in auts:
        image = tuple(
            sorted(tuple(sorted(perm[v] for v in cls)) for cls in classes)
        )
        if best is None or image < best:
            best = image
    return best


def lex_factorizations(g: Graph) -> list[LexFactorization]:
    """All factorizations into two non-trivial factors.

    Witnesses are deduplicated by (canonical left, canonical right,
    canonical partition), where partitions equivalent under an
    automorphism of g count once. Every returned witness has been
    re-validated against g. An empty list means irreducible.
    """
    n = g.n
    results: list[LexFactorization] = []
    seen: set[tuple] = set()
    auts: Optional[list[tuple[int, ...]]] = None
    for l in _nontrivial_class_sizes(n):
        for classes in _grow_classes(g, l, [], 0):
            fact = _partition_to_factorization(g, classes)
            if fact is None:
                continue
            if auts is None:
                auts = automorphisms(g)
            key = (
                canonical_form(fact.left),
                canonical_form(fact.right),
                _canonical_partition(classes, auts),
            )
            if key in seen:
                continue
            seen.add(key)
            results.append(fact)
    return results


def _nontrivial_class_sizes(n: int) -> list[int]:
    return [l for l in range(2, n // 2 + 1) if n % l == 0]


def is_reducible(g: Graph) -> bool:
    """Short-circuiting reducibility test: stop at the first valid witness."""
    for l in _nontrivial_class_sizes(g.n):
        for classes in _grow_classes(g, l, [], 0):
            if _partition_to_factorization(g, classes) is not None:
                return True
    return False


def lex_factorizations_bruteforce(g: Graph) -> list[LexFactorization]:
    """Unpruned oracle: enumerate every equal-size set partition.

    Exponential; used to cross-check the pruned search on small graphs.
    """
    n = g.n
    results = []
    seen = set()
    auts = None
    for l in _nontrivial_class_sizes(n):
        for classes in _all_equal_partitions(n, l):
            fact = _partition_to_factorization(g, classes)
            if fact is None:
                continue
            if auts is None:
                auts = automorphisms(g)
            key = (
                canonical_form(fact.left),
                canonical_form(fact.right),
                _canonical_partition(classes, auts),
            )
            if key in seen:
                continue
            seen.add(key)
            results.append(fact)
    return results


def _all_equal_partitions(
    n: int, l: int
) -> Iterator[tuple[tuple[int, ...], ...]]:
    import itertools

    def rec(remaining: list[int]) -> Iterator[list[tuple[int, ...]]]:
        if not remaining:
            yield []
            return
        head = remaining[0]
        for rest in itertools.combinations(remaining[1:], l - 1):
            cls = (head,) + rest
            left = [v for v in remaining if v not in cls]
            for tail in rec(left):
                yield [cls] + tail

    for part in rec(list(range(n))):
        yield tuple(part)
