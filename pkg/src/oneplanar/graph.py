"""Immutable simple undirected graphs on dense vertex labels 0..n-1.

Every other module trades in these graphs. Vertices are always integers
0..n-1; external vertex names must be resolved before construction.
Adjacency is stored both as sorted tuples (for iteration) and as bitmasks
(for the hot loops in refinement, module tests and subgraph checks).
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised on malformed graph construction or out-of-range vertices."""


class Graph:
    """A simple undirected graph, immutable after construction.

    Use :func:`graph_from_edges` or one of the named constructors below
    instead of calling the constructor with raw adjacency data.
    """

    __slots__ = ("n", "adj", "bits", "_edges", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop ({u},{v}) is not allowed")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj = tuple(tuple(sorted(s)) for s in nbrs)
        self.bits = tuple(sum(1 << w for w in s) for s in nbrs)
        self._edges = tuple(
            (u, v) for u in range(n) for v in self.adj[u] if u < v
        )
        self._hash = hash((n, self._edges))

    # -- basic accessors -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._edges)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= v < self.n and bool(self.bits[u] >> v & 1) if 0 <= u < self.n else False

    def vertices(self) -> range:
        return range(self.n)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._edges == other._edges
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- derived graphs (always fresh copies) ----------------------------

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image of the graph under the vertex map v -> perm[v]."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabel requires a permutation of 0..n-1")
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self._edges])

    def complement(self) -> "Graph":
        return Graph(
            self.n,
            [
                (u, v)
                for u in range(self.n)
                for v in range(u + 1, self.n)
                if not self.bits[u] >> v & 1
            ],
        )


# -- constructors --------------------------------------------------------


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph with exactly the given edges (duplicates collapse)."""
    return Graph(n, edges)


def empty_graph(n: int) -> Graph:
    return Graph(n, [])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    """Complete multipartite graph with consecutive vertex blocks.

    Vertices are grouped into blocks of the given sizes in order; two
    vertices are adjacent iff they lie in different blocks.
    """
    if len(sizes) == 0:
        raise GraphError("complete_multipartite needs at least one part")
    if any(s < 1 for s in sizes):
        raise GraphError(f"all part sizes must be >= 1, got {list(sizes)}")
    n = sum(sizes)
    block = []
    for b, s in enumerate(sizes):
        block.extend([b] * s)
    return Graph(
        n,
        [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if block[u] != block[v]
        ],
    )


def disjoint_union(g: Graph, h: Graph) -> Graph:
    edges = list(g.edges()) + [(u + g.n, v + g.n) for u, v in h.edges()]
    return Graph(g.n + h.n, edges)


# -- standard queries ----------------------------------------------------


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = 1
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        rest = g.bits[v] & ~seen
        while rest:
            w = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            seen |= 1 << w
            count += 1
            stack.append(w)
    return count == g.n


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph on the given vertices, relabeled 0..|S|-1 in sorted order."""
    vs = sorted(set(vertices))
    if vs and (vs[0] < 0 or vs[-1] >= g.n):
        raise GraphError(f"vertex set {vs} not contained in 0..{g.n - 1}")
    index = {v: i for i, v in enumerate(vs)}
    edges = [
        (index[u], index[v])
        for u, v in g.edges()
        if u in index and v in index
    ]
    return Graph(len(vs), edges)


def degree_sequence(g: Graph) -> list[int]:
    return sorted(len(a) for a in g.adj)


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.adj[v]:
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def min_degree(g: Graph) -> int:
    return min((len(a) for a in g.adj), default=0)


def is_three_connected(g: Graph) -> bool:
    """Exhaustive 2-cut test: no vertex pair disconnects the graph.

    Quadratic in n times a traversal; all callers are desk scale.
    """
    if g.n < 4:
        return False
    if not is_connected(g):
        return False
    if min_degree(g) < 3:
        return False
    for a in range(g.n):
        for b in range(a + 1, g.n):
            removed = (1 << a) | (1 << b)
            start = next(v for v in range(g.n) if not removed >> v & 1)
            seen = removed | (1 << start)
            stack = [start]
            count = 1
            while stack:
                v = stack.pop()
                rest = g.bits[v] & ~seen
                while rest:
                    w = (rest & -rest).bit_length() - 1
                    rest &= rest - 1
                    seen |= 1 << w
                    count += 1
                    stack.append(w)
            if count < g.n - 2:
                return False
    return True


def is_subgraph_of(h: Graph, g: Graph) -> bool:
    """Whether h is isomorphic to a subgraph of g. Brute force, small n only."""
    if h.n > g.n or h.m > g.m:
        return False
    for combo in itertools.combinations(range(g.n), h.n):
        for perm in itertools.permutations(combo):
            if all(g.bits[perm[u]] >> perm[v] & 1 for u, v in h.edges()):
                return True
    return False


def contains_induced(g: Graph, h: Graph) -> bool:
    """Whether some induced subgraph of g is isomorphic to h (small n)."""
    from .canon import canonical_form

    target = canonical_form(h)
    for combo in itertools.combinations(range(g.n), h.n):
        if canonical_form(induced_subgraph(g, combo)) == target:
            return True
    return False


# -- blocks and cacti ----------------------------------------------------


def biconnected_components(g: Graph) -> list[list[tuple[int, int]]]:
    """Blocks as edge lists, via the classic DFS lowpoint algorithm."""
    visited = [False] * g.n
    depth = [0] * g.n
    low = [0] * g.n
    parent = [-1] * g.n
    stack: list[tuple[int, int]] = []
    blocks: list[list[tuple[int, int]]] = []

    def dfs(root: int) -> None:
        # iterative DFS to avoid recursion limits on long paths
        work = [(root, iter(g.adj[root]))]
        visited[root] = True
        depth[root] = low[root] = 0
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if not visited[w]:
                    stack.append((v, w))
                    visited[w] = True
                    depth[w] = low[w] = depth[v] + 1
                    parent[w] = v
                    work.append((w, iter(g.adj[w])))
                    advanced = True
                    break
                elif w != parent[v] and depth[w] < depth[v]:
                    stack.append((v, w))
                    low[v] = min(low[v], depth[w])
            if not advanced:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] >= depth[u]:
                        block = []
                        while stack and stack[-1] != (u, v):
                            block.append(stack.pop())
                        if stack:
                            block.append(stack.pop())
                        if block:
                            blocks.append(block)

    for s in range(g.n):
        if not visited[s]:
            dfs(s)
    return blocks
