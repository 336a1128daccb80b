"""Desk-scale 1-planarity decision and exhaustive drawing enumeration.

The search assigns every edge a status: uncrossed, or crossed with a
specific partner edge sharing no endpoint. Candidate states are pruned
by planarity of the partial planarization; surviving complete states are
decided exactly by planarity of a gadgetized host graph in which each
crossing is replaced by a 4-wheel whose pendants attach the four
endpoints in alternating order. The host is planar if and only if the
crossing set is realizable by a good drawing: one direction routes each
crossed edge through its wheel (the two routes meet once near the hub),
the other expands a crossing point into a small wheel.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import networkx as nx

from .bounds import max_edges_1planar
from .canon import automorphisms, canonical_form, CanonicalForm
from .drawing import OnePlaneDrawing, validate_drawing
from .embedding import PlaneEmbedding, all_embeddings, planar_rotations
from .graph import Graph, induced_subgraph, is_connected, is_three_connected

Edge = tuple[int, int]


class CeilingError(ValueError):
    """Raised when an enumeration request exceeds the documented ceiling."""


@dataclass
class SearchBudget:
    max_nodes: Optional[int] = None
    max_seconds: Optional[float] = None


@dataclass
class SearchStats:
    nodes: int = 0
    planarity_checks: int = 0
    seconds: float = 0.0


@dataclass
class OnePlanarVerdict:
    status: str  # "yes" | "no" | "unknown"
    drawing: Optional[OnePlaneDrawing] = None
    reason: str = ""
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def is_one_planar(self) -> Optional[bool]:
        if self.status == "yes":
            return True
        if self.status == "no":
            return False
        return None


class _Budget:
    __slots__ = ("max_nodes", "deadline", "stats")

    def __init__(self, budget: Optional[SearchBudget], stats: SearchStats):
        self.max_nodes = budget.max_nodes if budget else None
        self.deadline = (
            time.monotonic() + budget.max_seconds
            if budget and budget.max_seconds
            else None
        )
        self.stats = stats

    def tick(self) -> bool:
        """Count a node; False when the budget is gone."""
        self.stats.nodes += 1
        if self.max_nodes is not None and self.stats.nodes > self.max_nodes:
            return False
        if self.deadline is not None and self.stats.nodes % 256 == 0:
            if time.monotonic() > self.deadline:
                return False
        return True


class _BudgetExhausted(Exception):
    pass


# -- host graphs -----------------------------------------------------------


def _plain_planarization_nx(
    n: int, uncrossed: Sequence[Edge], pairs: Sequence[tuple[Edge, Edge]]
) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(uncrossed)
    for i, (e1, e2) in enumerate(pairs):
        z = n + i
        g.add_edges_from((z, v) for v in (*e1, *e2))
    return g


def _gadget_host_nx(
    n: int, uncrossed: Sequence[Edge], pairs: Sequence[tuple[Edge, Edge]]
) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(uncrossed)
    for i, ((a, b), (c, d)) in enumerate(pairs):
        base = n + 5 * i
        r = [base, base + 1, base + 2, base + 3]
        z = base + 4
        g.add_edges_from((r[t], r[(t + 1) % 4]) for t in range(4))
        g.add_edges_from((z, r[t]) for t in range(4))
        # pendants in alternating endpoint order a, c, b, d
        g.add_edge(r[0], a)
        g.add_edge(r[1], c)
        g.add_edge(r[2], b)
        g.add_edge(r[3], d)
    return g


def _nx_planar(g: nx.Graph) -> bool:
    if g.number_of_nodes() >= 3 and g.number_of_edges() > 3 * g.number_of_nodes() - 6:
        return False
    return nx.check_planarity(g, counterexample=False)[0]


def _drawing_from_host(
    base: Graph, pairs: Sequence[tuple[Edge, Edge]], host: nx.Graph
) -> OnePlaneDrawing:
    """Contract each wheel gadget back to a crossing dummy."""
    n = base.n
    ok, emb = nx.check_planarity(host, counterexample=False)
    assert ok
    pendant_owner: dict[int, tuple[int, int]] = {}  # ring vertex -> (dummy, endpoint)
    for i, ((a, b), (c, d)) in enumerate(pairs):
        gbase = n + 5 * i
        for t, x in enumerate((a, c, b, d)):
            pendant_owner[gbase + t] = (n + i, x)
    rotations: list[tuple[int, ...]] = []
    for v in range(n):
        rot = []
        for w in emb.neighbors_cw_order(v):
            if w < n:
                rot.append(w)
            else:
                rot.append(pendant_owner[w][0])
        rotations.append(tuple(rot))
    for i in range(len(pairs)):
        z = n + 5 * i + 4
        hub = list(emb.neighbors_cw_order(z))  # four ring vertices in cyclic order
        rotations.append(tuple(pendant_owner[r][1] for r in hub))
    d = OnePlaneDrawing(base, tuple(pairs), PlaneEmbedding(rotations))
    return d


# -- the matching search ----------------------------------------------------


class _CrossingSearch:
    """DFS over crossing matchings in a fixed edge order.

    The lowest-index undecided edge is decided at each node: paired with a
    later independent undecided edge, or marked uncrossed. Each matching is
    therefore generated exactly once.
    """

    def __init__(
        self,
        g: Graph,
        budget: Optional[SearchBudget],
        stats: SearchStats,
        use_symmetry: bool = True,
        uncrossed_check_stride: int = 2,
    ):
        self.g = g
        self.n = g.n
        order = _edge_order(g)
        self.edges: list[Edge] = order
        self.m = len(order)
        self.k_min = max(0, g.m - max(0, 3 * g.n - 6), 1)
        self.budget = _Budget(budget, stats)
        self.stats = stats
        self.uncrossed_check_stride = uncrossed_check_stride
        # independence: partners sharing no endpoint, later in the order
        self.indep: list[list[int]] = []
        for i, (u, v) in enumerate(order):
            self.indep.append(
                [
                    j
                    for j in range(i + 1, self.m)
                    if u not in order[j] and v not in order[j]
                ]
            )
        self.root_partner_reps: Optional[set[int]] = None
        if use_symmetry and self.m > 0 and g.n <= 14:
            self.root_partner_reps = self._root_orbit_reps()

    def _root_orbit_reps(self) -> Optional[set[int]]:
        """Orbit representatives for the first edge's partner choice.

        Any automorphism fixing the first edge setwise maps solutions to
        solutions, so one partner per orbit suffices.
        """
        try:
            auts = automorphisms(self.g)
        except Exception:
            return None
        if len(auts) <= 1:
            return None
        e0 = set(self.edges[0])
        stab = [p for p in auts if {p[v] for v in e0} == e0]
        if len(stab) <= 1:
            return None
        edge_index = {frozenset(e): i for i, e in enumerate(self.edges)}
        reps: set[int] = set()
        seen: set[int] = set()
        for j in self.indep[0]:
            if j in seen:
                continue
            reps.add(j)
            orbit = {j}
            frontier = [j]
            while frontier:
                cur = frontier.pop()
                u, v = self.edges[cur]
                for p in stab:
                    img = edge_index.get(frozenset((p[u], p[v])))
                    if img is not None and img not in orbit:
                        orbit.add(img)
                        frontier.append(img)
            seen |= orbit
        return reps

    def run(self, *, stop_at_first: bool) -> Iterator[tuple[list[Edge], list[tuple[Edge, Edge]]]]:
        """Yield complete states (uncrossed edges, crossing pairs) whose
        gadget host is planar. May raise _BudgetExhausted."""
        status = [0] * self.m  # 0 undecided, 1 uncrossed, 2 crossed
        uncrossed: list[Edge] = []
        pairs: list[tuple[Edge, Edge]] = []
        yield from self._rec(0, status, uncrossed, pairs, 0, stop_at_first)

    def _rec(self, pos, status, uncrossed, pairs, uncount_since_check, stop_at_first):
        if not self.budget.tick():
            raise _BudgetExhausted
        while pos < self.m and status[pos] != 0:
            pos += 1
        undecided = sum(1 for s in status if s == 0)
        if len(pairs) + undecided // 2 < self.k_min:
            return
        if pos == self.m:
            if len(pairs) < self.k_min:
                return
            self.stats.planarity_checks += 1
            host = _gadget_host_nx(self.n, uncrossed, pairs)
            if _nx_planar(host):
                yield (list(uncrossed), list(pairs))
            return

        e = self.edges[pos]
        partners = [j for j in self.indep[pos] if status[j] == 0]
        if pos == 0 and self.root_partner_reps is not None:
            partners = [j for j in partners if j in self.root_partner_reps]
        need_more = len(pairs) < self.k_min

        def try_pair() -> Iterator:
            for j in partners:
                status[pos] = 2
                status[j] = 2
                pairs.append((e, self.edges[j]))
                self.stats.planarity_checks += 1
                plain = _plain_planarization_nx(self.n, uncrossed, pairs)
                if _nx_planar(plain):
                    yield from self._rec(
                        pos + 1, status, uncrossed, pairs, uncount_since_check, stop_at_first
                    )
                pairs.pop()
                status[pos] = 0
                status[j] = 0

        def try_uncrossed() -> Iterator:
            status[pos] = 1
            uncrossed.append(e)
            since = uncount_since_check + 1
            ok = True
            if since >= self.uncrossed_check_stride:
                self.stats.planarity_checks += 1
                plain = _plain_planarization_nx(self.n, uncrossed, pairs)
                ok = _nx_planar(plain)
                since = 0
            if ok:
                yield from self._rec(pos + 1, status, uncrossed, pairs, since, stop_at_first)
            uncrossed.pop()
            status[pos] = 0

        branches = (try_pair, try_uncrossed) if need_more else (try_uncrossed, try_pair)
        for branch in branches:
            for leaf in branch():
                yield leaf
                if stop_at_first:
                    return


def _edge_order(g: Graph) -> list[Edge]:
    """BFS edge order from a max-degree vertex: dense neighborhoods first."""
    if g.n == 0:
        return []
    start = max(range(g.n), key=lambda v: g.degree(v))
    pos = {start: 0}
    queue = [start]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for w in sorted(g.adj[v], key=lambda x: -g.degree(x)):
            if w not in pos:
                pos[w] = len(queue)
                queue.append(w)
    for v in range(g.n):  # isolated or other components
        if v not in pos:
            pos[v] = len(queue)
            queue.append(v)
    def key(e: Edge):
        a, b = sorted((pos[e[0]], pos[e[1]]))
        return (b, a)
    return sorted(g.edges(), key=key)


# -- verdict cache and hereditary shortcut ----------------------------------


_verdict_cache: dict[CanonicalForm, str] = {}
_known_non_1planar: dict[int, set[CanonicalForm]] = {}


def _remember(form: CanonicalForm, status: str) -> None:
    _verdict_cache[form] = status
    if status == "no":
        _known_non_1planar.setdefault(form.n, set()).add(form)


def _hereditary_shortcut(g: Graph) -> Optional[str]:
    """Not 1-planar if an induced subgraph already got a 'no' verdict.

    Subgraphs of 1-planar graphs are 1-planar, so this is sound; only
    sizes n-1 and n-2 are scanned to keep the scan cheap.
    """
    import itertools

    for size, forms in _known_non_1planar.items():
        if size >= g.n or size < g.n - 2 or not forms:
            continue
        for combo in itertools.combinations(range(g.n), size):
            if canonical_form(induced_subgraph(g, combo)) in forms:
                return f"contains a known non-1-planar induced subgraph on {size} vertices"
    return None


def clear_caches() -> None:
    _verdict_cache.clear()
    _known_non_1planar.clear()


# -- public operations -------------------------------------------------------


def is_one_planar(
    g: Graph,
    budget: Optional[SearchBudget] = None,
    *,
    use_cache: bool = True,
    use_symmetry: bool = True,
) -> OnePlanarVerdict:
    """Decide 1-planarity by pre-filters, then exhaustive crossing search.

    The verdict is exact unless the budget runs out ('unknown'). A 'yes'
    comes with a drawing that has passed the structural validator.
    """
    t0 = time.monotonic()
    stats = SearchStats()

    def done(status, drawing=None, reason="") -> OnePlanarVerdict:
        stats.seconds = time.monotonic() - t0
        return OnePlanarVerdict(status, drawing, reason, stats)

    if g.n >= 3:
        limit = max_edges_1planar(g.n)
        if g.m > limit:
            return done("no", reason=f"m={g.m} exceeds {_limit_text(g.n)}={limit}")

    emb = planar_rotations(g) if g.m <= max(0, 3 * g.n - 6) else None
    if emb is not None:
        d = OnePlaneDrawing(g, (), emb)
        rep = validate_drawing(d)
        assert rep.ok, rep.summary()
        return done("yes", d, "planar")

    form = canonical_form(g) if use_cache else None
    if use_cache:
        hit = _verdict_cache.get(form)
        if hit is not None:
            return done(hit, reason="cached verdict")
        why = _hereditary_shortcut(g)
        if why is not None:
            _remember(form, "no")
            return done("no", reason=why)

    search = _CrossingSearch(g, budget, stats, use_symmetry=use_symmetry)
    try:
        for uncrossed, pairs in search.run(stop_at_first=True):
            host = _gadget_host_nx(g.n, uncrossed, pairs)
            d = _drawing_from_host(g, pairs, host)
            rep = validate_drawing(d)
            assert rep.ok, rep.summary()
            if use_cache:
                _remember(form, "yes")
            return done("yes", d, f"{len(pairs)} crossings")
    except _BudgetExhausted:
        return done("unknown", reason="budget exhausted")
    if use_cache:
        _remember(form, "no")
    return done("no", reason="crossing search exhausted")


def _limit_text(n: int) -> str:
    if n <= 6:
        return "n(n-1)/2"
    if n in (7, 9):
        return f"4n-9"
    return "4n-8"


ENUM_MAX_N = 9
ENUM_MAX_M = 24


def enumerate_drawings(
    g: Graph,
    budget: Optional[SearchBudget] = None,
    *,
    force: bool = False,
    use_symmetry: bool = True,
) -> list[OnePlaneDrawing]:
    """All good 1-planar drawings of g on the sphere, one per isomorphism class.

    Crossing sets are exhausted, each surviving planarization has its
    spherical embeddings enumerated (unique ones via 3-connectivity), and
    drawings are deduplicated by canonical code. Practical ceiling:
    n <= 9 and m <= 24 unless ``force`` is given.
    """
    if not force and (g.n > ENUM_MAX_N or g.m > ENUM_MAX_M):
        raise CeilingError(
            f"enumerate_drawings supports n <= {ENUM_MAX_N} and m <= {ENUM_MAX_M} "
            f"(got n={g.n}, m={g.m}); pass force=True to override"
        )
    if g.n and not is_connected(g):
        raise CeilingError("enumerate_drawings requires a connected graph")
    stats = SearchStats()
    found: dict[tuple, OnePlaneDrawing] = {}

    def consider(d: OnePlaneDrawing) -> None:
        rep = validate_drawing(d)
        assert rep.ok, rep.summary()
        found.setdefault(d.canonical_code(), d)

    # the crossing-free drawings: all spherical embeddings of g itself
    if planar_rotations(g) is not None:
        for emb in _embeddings_of(g, ()):
            consider(OnePlaneDrawing(g, (), emb))

    search = _CrossingSearch(g, budget, stats, use_symmetry=use_symmetry)
    search.k_min = max(search.k_min, 1)  # crossing-free case handled above
    for uncrossed, pairs in search.run(stop_at_first=False):
        planarization = _planarization_graph(g, pairs)
        for emb in _embeddings_of(planarization, tuple(pairs), n_real=g.n):
            consider(OnePlaneDrawing(g, tuple(pairs), emb))
    return [found[k] for k in sorted(found)]


def _planarization_graph(g: Graph, pairs: Sequence[tuple[Edge, Edge]]) -> Graph:
    crossed = {e for p in pairs for e in p}
    edges = [e for e in g.edges() if e not in crossed]
    for i, (e1, e2) in enumerate(pairs):
        z = g.n + i
        edges.extend((z, v) for v in (*e1, *e2))
    return Graph(g.n + len(pairs), edges)


def _embeddings_of(
    planarization: Graph,
    pairs: tuple[tuple[Edge, Edge], ...],
    n_real: Optional[int] = None,
) -> Iterator[PlaneEmbedding]:
    """Spherical embeddings of a planarization, alternation enforced at dummies."""
    n_real = planarization.n - len(pairs) if n_real is None else n_real
    half_sets = {}
    for i, (e1, e2) in enumerate(pairs):
        half_sets[n_real + i] = (frozenset(e1), frozenset(e2))

    def alternation(v: int, rot: tuple[int, ...]) -> bool:
        halves = half_sets.get(v)
        if halves is None:
            return True
        return (
            frozenset((rot[0], rot[2])) in halves
            and frozenset((rot[1], rot[3])) in halves
        )

    if is_three_connected(planarization):
        emb = planar_rotations(planarization)
        if emb is None:
            return
        if all(alternation(v, emb.rotations[v]) for v in half_sets):
            yield emb
        return
    for emb in all_embeddings(planarization, rotation_filter=alternation):
        yield emb
