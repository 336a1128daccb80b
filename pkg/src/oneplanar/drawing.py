"""1-plane drawings on the sphere, structural validators, and .1pd I/O.

A drawing is stored as its planarization: the base graph's vertices plus
one degree-4 dummy vertex per crossing, with a full rotation system.
Dummy i has index base.n + i and replaces the crossing of the i-th edge
pair. All validators return reports instead of raising, so a harness can
show every violation with a witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .canon import canonical_form
from .embedding import PlaneEmbedding, embedding_code, face_vertices
from .formats import FormatError
from .graph import Graph, is_bipartite, is_three_connected


Edge = tuple[int, int]


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _norm_crossing(e1: Edge, e2: Edge) -> tuple[Edge, Edge]:
    a, b = _norm_edge(*e1), _norm_edge(*e2)
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class OnePlaneDrawing:
    """A drawing of ``base`` where each edge is crossed at most once."""

    base: Graph
    crossings: tuple[tuple[Edge, Edge], ...]
    embedding: PlaneEmbedding  # over base.n real vertices + one dummy per crossing

    def __post_init__(self):
        object.__setattr__(
            self,
            "crossings",
            tuple(_norm_crossing(e1, e2) for e1, e2 in self.crossings),
        )

    @property
    def n(self) -> int:
        return self.base.n

    def dummy(self, i: int) -> int:
        return self.base.n + i

    def is_dummy(self, v: int) -> bool:
        return v >= self.base.n

    def crossed_edges(self) -> set[Edge]:
        return {e for pair in self.crossings for e in pair}

    def colors(self) -> list[int]:
        """0 for real vertices, 1 for dummies; used by drawing isomorphism."""
        return [0] * self.base.n + [1] * len(self.crossings)

    def canonical_code(self) -> tuple:
        return embedding_code(self.embedding, self.colors())

    def mirrored(self) -> "OnePlaneDrawing":
        return OnePlaneDrawing(self.base, self.crossings, self.embedding.mirrored())


@dataclass
class DrawingReport:
    """Verdict flags plus offending witnesses for each validated property."""

    checks: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, str] = field(default_factory=dict)

    def record(self, name: str, ok: bool, witness: str = "") -> None:
        self.checks[name] = ok
        if not ok and witness:
            self.witnesses[name] = witness

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def summary(self) -> str:
        lines = []
        for name in self.checks:
            mark = "pass" if self.checks[name] else "FAIL"
            line = f"{mark}  {name}"
            if name in self.witnesses:
                line += f"  [{self.witnesses[name]}]"
            lines.append(line)
        return "\n".join(lines)


def expected_planarization_edges(d: OnePlaneDrawing) -> Optional[set[Edge]]:
    """Edge set the planarization must carry, or None if crossings are malformed."""
    crossed = {}
    for i, (e1, e2) in enumerate(d.crossings):
        for e in (e1, e2):
            if e in crossed:
                return None
            crossed[e] = d.dummy(i)
    edges: set[Edge] = set()
    for e in d.base.edges():
        if e in crossed:
            z = crossed[e]
            edges.add(_norm_edge(e[0], z))
            edges.add(_norm_edge(e[1], z))
        else:
            edges.add(e)
    return edges


def validate_drawing(d: OnePlaneDrawing) -> DrawingReport:
    """Check every structural invariant of a 1-plane drawing."""
    rep = DrawingReport()
    n = d.base.n

    # each edge of the base graph is crossed at most once
    seen: dict[Edge, int] = {}
    doubled = None
    for i, pair in enumerate(d.crossings):
        for e in pair:
            if e in seen:
                doubled = e
            seen[e] = i
    rep.record(
        "edge_crossed_at_most_once",
        doubled is None,
        f"edge {doubled} crossed twice" if doubled else "",
    )

    # crossing pairs exist in the base graph and share no endpoint (good drawing)
    bad_pair = None
    for e1, e2 in d.crossings:
        if not (d.base.has_edge(*e1) and d.base.has_edge(*e2)):
            bad_pair = (e1, e2, "not base edges")
            break
        if set(e1) & set(e2):
            bad_pair = (e1, e2, "incident edges cross")
            break
    rep.record(
        "crossing_pairs_independent",
        bad_pair is None,
        f"pair {bad_pair[0]}x{bad_pair[1]}: {bad_pair[2]}" if bad_pair else "",
    )

    # embedding structurally consistent
    try:
        d.embedding.check_consistent()
        consistent = True
        detail = ""
    except Exception as exc:  # EmbeddingError
        consistent = False
        detail = str(exc)
    rep.record("rotation_system_consistent", consistent, detail)
    if not consistent:
        return rep

    # planarization carries exactly the expected edges
    want = expected_planarization_edges(d)
    have = set(d.embedding.graph().edges())
    ok = want is not None and have == want and d.embedding.n == n + len(d.crossings)
    diff = ""
    if want is not None and have != want:
        diff = f"missing {sorted(want - have)} extra {sorted(have - want)}"
    rep.record("planarization_matches_base", ok, diff)

    # dummies have degree 4 and alternate between the two crossing edges
    bad_dummy = None
    for i, (e1, e2) in enumerate(d.crossings):
        z = d.dummy(i)
        if z >= d.embedding.n:
            bad_dummy = (z, "missing")
            break
        rot = d.embedding.rotations[z]
        if len(rot) != 4:
            bad_dummy = (z, f"degree {len(rot)}")
            break
        if set(rot) != set(e1) | set(e2):
            bad_dummy = (z, f"rotation {rot} not the four endpoints")
            break
        if not (
            {rot[0], rot[2]} == set(e1)
            and {rot[1], rot[3]} == set(e2)
            or {rot[0], rot[2]} == set(e2)
            and {rot[1], rot[3]} == set(e1)
        ):
            bad_dummy = (z, f"rotation {rot} does not alternate the halves")
            break
    rep.record(
        "dummy_rotations_alternate",
        bad_dummy is None,
        f"dummy {bad_dummy[0]}: {bad_dummy[1]}" if bad_dummy else "",
    )

    # spherical: per-component Euler relation on the planarization
    rep.record(
        "euler_genus_zero",
        d.embedding.genus_zero(),
        f"V-E+F = {d.embedding.euler_characteristic()}",
    )
    return rep


def skeleton_graph(d: OnePlaneDrawing) -> Graph:
    crossed = d.crossed_edges()
    return Graph(d.base.n, [e for e in d.base.edges() if e not in crossed])


def planar_skeleton(d: OnePlaneDrawing) -> PlaneEmbedding:
    """Embedding of the skeleton: crossing edges deleted, rotations inherited.

    Darts entering a dummy carry a crossed half-edge, so dropping every
    dummy neighbor from a real vertex's rotation deletes exactly the
    crossing edges while preserving the cyclic order of the rest.
    """
    n = d.base.n
    rotations = []
    for v in range(n):
        rotations.append(tuple(w for w in d.embedding.rotations[v] if w < n))
    return PlaneEmbedding(rotations)


@dataclass(frozen=True)
class Face:
    corners: tuple[int, ...]
    crossed: bool


def faces(d: OnePlaneDrawing) -> list[Face]:
    """Faces of the drawing as corner walks; crossed iff a corner is a dummy."""
    out = []
    for walk in d.embedding.faces():
        corners = face_vertices(walk)
        out.append(Face(corners, any(d.is_dummy(v) for v in corners)))
    return out


def check_optimal_structure(d: OnePlaneDrawing) -> DrawingReport:
    """The six structural facts every optimal (4n-8 edge) drawing satisfies.

    (a) the base graph has exactly 4n-8 edges;
    (b) the skeleton is a simple 3-connected quadrangulation of the sphere;
    (c) skeleton faces and crossing pairs correspond one to one, the pair
        being the two diagonals of its face;
    (d) around every vertex, crossing and non-crossing edges alternate;
    (e) the skeleton is bipartite (equivalently: every non-crossing cycle
        of the drawing is even);
    (f) each crossing pair's four endpoints induce a K4 whose boundary
        4-cycle is non-crossing (the kite).
    """
    rep = validate_drawing(d)
    n = d.base.n
    rep.record(
        "edge_count_4n_minus_8",
        d.base.m == 4 * n - 8,
        f"m={d.base.m}, 4n-8={4 * n - 8}",
    )

    skel = planar_skeleton(d)
    skel_g = skeleton_graph(d)
    quad_faces = skel.faces()
    all_quads = all(len(w) == 4 for w in quad_faces)
    three_conn = is_three_connected(skel_g)
    genus0 = skel.genus_zero()
    rep.record(
        "skeleton_3connected_quadrangulation",
        all_quads and three_conn and genus0,
        f"faces {sorted(set(len(w) for w in quad_faces))}, 3conn={three_conn}, genus0={genus0}",
    )

    # one crossing pair inside each skeleton face, and nothing else
    face_cycles = set()
    for walk in quad_faces:
        vs = face_vertices(walk)
        if len(vs) == 4:
            face_cycles.add(_face_key(vs))
    pair_keys = set()
    ok_pairs = True
    witness = ""
    for e1, e2 in d.crossings:
        # the boundary 4-cycle alternates the pair's endpoints
        key = _face_key((e1[0], e2[0], e1[1], e2[1]))
        if key in face_cycles:
            pair_keys.add(key)
        else:
            ok_pairs = False
            witness = f"crossing {e1}x{e2} not the diagonals of a skeleton face"
            break
    if ok_pairs and len(pair_keys) != len(face_cycles):
        ok_pairs = False
        witness = f"{len(pair_keys)} paired faces vs {len(face_cycles)} skeleton faces"
    if ok_pairs and len(d.crossings) != len(quad_faces):
        ok_pairs = False
        witness = f"{len(d.crossings)} crossings vs {len(quad_faces)} faces"
    rep.record("one_crossing_pair_per_face", ok_pairs, witness)

    # alternation: around each real vertex, darts alternate dummy / real
    alt_ok = True
    alt_wit = ""
    for v in range(n):
        rot = d.embedding.rotations[v]
        if len(rot) % 2:
            alt_ok = False
            alt_wit = f"vertex {v} has odd planarization degree {len(rot)}"
            break
        for i, w in enumerate(rot):
            nxt = rot[(i + 1) % len(rot)]
            if d.is_dummy(w) == d.is_dummy(nxt):
                alt_ok = False
                alt_wit = f"vertex {v}: neighbors {w},{nxt} both {'crossing' if d.is_dummy(w) else 'plain'}"
                break
        if not alt_ok:
            break
    rep.record("rotation_alternation", alt_ok, alt_wit)

    rep.record(
        "skeleton_bipartite",
        is_bipartite(skel_g),
        "odd non-crossing cycle exists",
    )

    # kite: boundary edges exist in the base and are themselves non-crossing
    crossed = d.crossed_edges()
    kite_ok = True
    kite_wit = ""
    for e1, e2 in d.crossings:
        v0, v2 = e1
        v1, v3 = e2
        boundary = [
            _norm_edge(v0, v1),
            _norm_edge(v1, v2),
            _norm_edge(v2, v3),
            _norm_edge(v3, v0),
        ]
        for b in boundary:
            if not d.base.has_edge(*b):
                kite_ok = False
                kite_wit = f"crossing {e1}x{e2}: boundary edge {b} missing"
                break
            if b in crossed:
                kite_ok = False
                kite_wit = f"crossing {e1}x{e2}: boundary edge {b} is crossing"
                break
        if not kite_ok:
            break
    rep.record("kite_completion", kite_ok, kite_wit)
    return rep


def _face_key(cycle: Sequence[int]) -> tuple[int, ...]:
    """Canonical key of a cyclic sequence up to rotation and reversal."""
    best = None
    seq = list(cycle)
    k = len(seq)
    for rev in (seq, seq[::-1]):
        for s in range(k):
            cand = tuple(rev[s:] + rev[:s])
            if best is None or cand < best:
                best = cand
    return best


def drawing_isomorphic(d1: OnePlaneDrawing, d2: OnePlaneDrawing) -> bool:
    """Equivalence under sphere homeomorphisms, orientation-reversing ones included."""
    return d1.canonical_code() == d2.canonical_code()


def crossing_count(d: OnePlaneDrawing) -> int:
    return len(d.crossings)


# -- .1pd text format ------------------------------------------------------


def emit_1pd(d: OnePlaneDrawing) -> str:
    lines = [f"n {d.base.n} c {len(d.crossings)}"]
    for e1, e2 in d.crossings:
        lines.append(f"x {e1[0]} {e1[1]} {e2[0]} {e2[1]}")
    for v in range(d.embedding.n):
        rot = " ".join(str(w) for w in d.embedding.rotations[v])
        lines.append(f"r {v} {rot}".rstrip())
    return "\n".join(lines) + "\n"


def parse_1pd(text: str) -> OnePlaneDrawing:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise FormatError("empty .1pd input")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "n" or head[2] != "c":
        raise FormatError(f".1pd header must be 'n <count> c <count>', got {lines[0]!r}")
    try:
        n, c = int(head[1]), int(head[3])
    except ValueError as exc:
        raise FormatError(f"non-integer .1pd header {lines[0]!r}") from exc
    crossings = []
    rotations: dict[int, tuple[int, ...]] = {}
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "x":
            if len(parts) != 5:
                raise FormatError(f"crossing line must be 'x u1 v1 u2 v2', got {ln!r}")
            a, b, p, q = (int(x) for x in parts[1:])
            crossings.append(((a, b), (p, q)))
        elif parts[0] == "r":
            v = int(parts[1])
            rotations[v] = tuple(int(x) for x in parts[2:])
        else:
            raise FormatError(f"unknown .1pd line {ln!r}")
    if len(crossings) != c:
        raise FormatError(f"header promises {c} crossings, found {len(crossings)}")
    total = n + c
    if sorted(rotations) != list(range(total)):
        raise FormatError(
            f"rotation lines must cover vertices 0..{total - 1}, got {sorted(rotations)}"
        )
    emb = PlaneEmbedding([rotations[v] for v in range(total)])
    emb.check_consistent()
    # reconstruct the base graph: real-real darts plus the crossed pairs
    base_edges = set()
    for v in range(n):
        for w in emb.rotations[v]:
            if w < n:
                base_edges.add(_norm_edge(v, w))
    for e1, e2 in crossings:
        base_edges.add(_norm_edge(*e1))
        base_edges.add(_norm_edge(*e2))
    base = Graph(n, sorted(base_edges))
    return OnePlaneDrawing(base, tuple(crossings), emb)


# -- building drawings from planarization embeddings ------------------------


def drawing_from_planarization(
    base: Graph,
    crossings: Sequence[tuple[Edge, Edge]],
    emb: PlaneEmbedding,
) -> OnePlaneDrawing:
    d = OnePlaneDrawing(base, tuple(crossings), emb)
    return d


def drawing_without_crossings(g: Graph, emb: PlaneEmbedding) -> OnePlaneDrawing:
    """Wrap a plane embedding of g as a crossing-free drawing."""
    return OnePlaneDrawing(g, (), emb)


def drawing_from_coordinates(
    g: Graph, coords: Sequence[tuple[float, float]]
) -> OnePlaneDrawing:
    """Read a straight-line drawing off vertex coordinates.

    Segment intersections become crossings; each edge may be crossed at
    most once and crossing edges may not share an endpoint, otherwise a
    ValueError reports the offending pair. Rotations are sorted by angle.
    Degenerate inputs (collinear overlaps, vertices on foreign segments)
    are the caller's problem; fixture constructions pick safe coordinates.
    """
    import math

    if len(coords) != g.n:
        raise ValueError(f"need {g.n} coordinate pairs, got {len(coords)}")
    edges = g.edges()

    def cross_point(e: Edge, f: Edge):
        (x1, y1), (x2, y2) = coords[e[0]], coords[e[1]]
        (x3, y3), (x4, y4) = coords[f[0]], coords[f[1]]
        d = (x2 - x1) * (y4 - y3) - (y2 - y1) * (x4 - x3)
        if d == 0:
            return None
        t = ((x3 - x1) * (y4 - y3) - (y3 - y1) * (x4 - x3)) / d
        s = ((x3 - x1) * (y2 - y1) - (y3 - y1) * (x2 - x1)) / d
        eps = 1e-12
        if eps < t < 1 - eps and eps < s < 1 - eps:
            return (x1 + t * (x2 - x1), y1 + t * (y2 - y1))
        return None

    crossings: list[tuple[Edge, Edge]] = []
    points: list[tuple[float, float]] = []
    crossed_by: dict[Edge, int] = {}
    for i, e in enumerate(edges):
        for f in edges[i + 1 :]:
            if set(e) & set(f):
                continue
            p = cross_point(e, f)
            if p is None:
                continue
            for x in (e, f):
                if x in crossed_by:
                    raise ValueError(f"edge {x} is crossed more than once")
            crossed_by[e] = len(crossings)
            crossed_by[f] = len(crossings)
            crossings.append((e, f))
            points.append(p)

    def angle(frm: tuple[float, float], to: tuple[float, float]) -> float:
        return math.atan2(to[1] - frm[1], to[0] - frm[0])

    rotations: list[tuple[int, ...]] = []
    for v in range(g.n):
        darts = []
        for w in g.adj[v]:
            e = _norm_edge(v, w)
            target = g.n + crossed_by[e] if e in crossed_by else w
            # direction is toward the other endpoint either way
            darts.append((angle(coords[v], coords[w]), target))
        darts.sort()
        rotations.append(tuple(t for _, t in darts))
    for i, (e, f) in enumerate(crossings):
        p = points[i]
        darts = [(angle(p, coords[w]), w) for w in (*e, *f)]
        darts.sort()
        rotations.append(tuple(t for _, t in darts))
    return OnePlaneDrawing(g, tuple(crossings), PlaneEmbedding(rotations))
