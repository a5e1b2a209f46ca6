"""Angle graphs, switch calculus, derived types and the face/web dichotomy.

``G(L)`` keeps the edges of G_P with an endpoint label in L; its corners
are indexed by the L-interval containing them.  The angle graph joins a
dual vertex inside each face of ``G(L)`` to the fat vertex at each corner,
and a type orients every angle edge.  Sinks and sources among dual vertices
of disk faces are exactly the faces representing the type.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .errors import EmptyLabelSet, HypothesisViolated, TheoremViolation, TrivialType
from .face_rep import face_represents
from .graph import Corner, Face, GraphPair, LabelledFatGraph
from .maps import Dart, alpha, successor_map, trace_walks
from .type_algebra import QType, all_types
from . import webs


# ---------------------------------------------------------------------------
# label sets and restricted graphs


def label_set(labels, q: int) -> Tuple[int, ...]:
    L = tuple(sorted(set(int(x) for x in labels)))
    if not L:
        raise EmptyLabelSet("the label set must be nonempty")
    if L[0] < 1 or L[-1] > q:
        raise ValueError(f"labels must lie in 1..{q}")
    return L


def l_intervals(L: Sequence[int]) -> List[Tuple[int, int]]:
    return [(L[k], L[(k + 1) % len(L)]) for k in range(len(L))]


@dataclass
class RestrictedGraph:
    """``G(L)``: same vertices as G_P, edges with an endpoint label in L."""

    graph: LabelledFatGraph
    labels: Tuple[int, ...]
    edges: Tuple[int, ...]
    faces: Tuple[Face, ...]

    @property
    def size(self) -> int:
        return len(self.labels)

    def disk_faces(self) -> List[Face]:
        return [f for f in self.faces if f.is_disk]

    def faces_inside(self, outer: Face) -> List[Face]:
        """Faces whose underlying G_P faces all lie in ``outer`` (from a coarser graph)."""
        region = set(outer.atoms)
        return [f for f in self.faces if set(f.atoms) <= region]


def restricted_graph(g: LabelledFatGraph, labels) -> RestrictedGraph:
    L = label_set(labels, g.companion)
    keep = set(L)
    edges = tuple(e for e in g.edges if keep & set(g.end_labels(e)))
    return RestrictedGraph(g, L, edges, g.restrict(edges, None, L))


# ---------------------------------------------------------------------------
# directed maps and the index-sum identity


@dataclass
class DirectedMap:
    """A directed graph embedded by a rotation system.

    ``head[e]`` is the end (0 or 1) the edge points to.  ``face_chi`` gives
    each traced face's Euler characteristic; missing faces count as disks.
    """

    ccw: Dict[Hashable, Tuple[Dart, ...]]
    head: Dict[int, int]
    surface_chi: Optional[int] = None
    face_chi: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        self.walks = trace_walks(self.ccw)
        if self.surface_chi is None:
            self.surface_chi = self.rotation_chi()

    def rotation_chi(self) -> int:
        """Euler characteristic of the surface the rotation system spans."""
        edges = {d[0] for ds in self.ccw.values() for d in ds}
        return len(self.ccw) - len(edges) + len(self.walks)

    def chi(self, k: int) -> int:
        return self.face_chi.get(k, 1)

    def vertex_switches(self, v) -> int:
        darts = self.ccw[v]
        inward = [self.head[d[0]] == d[1] for d in darts]
        n = len(inward)
        return sum(inward[k] != inward[(k + 1) % n] for k in range(n)) if n > 1 else 0

    def face_switches(self, k: int) -> int:
        walk = self.walks[k]
        forward = [self.head[d[0]] != d[1] for d in walk]
        n = len(forward)
        return sum(forward[j] != forward[(j + 1) % n] for j in range(n)) if n > 1 else 0

    def vertex_index(self, v) -> float:
        return 1 - self.vertex_switches(v) / 2

    def face_index(self, k: int) -> float:
        return self.chi(k) - self.face_switches(k) / 2

    def index_sum(self) -> float:
        return (sum(self.vertex_index(v) for v in self.ccw)
                + sum(self.face_index(k) for k in range(len(self.walks))))


def verify_glass(omega) -> bool:
    """Sum of vertex and face indices equals the surface Euler characteristic."""
    m = omega.map if isinstance(omega, DirectedAngleGraph) else omega
    return m.index_sum() == m.surface_chi


# ---------------------------------------------------------------------------
# the angle graph of a type


@dataclass(frozen=True)
class AngleEdge:
    id: int
    fat: int
    face: int
    corner: Corner
    inward: bool  # points into the fat vertex


@dataclass
class DirectedAngleGraph:
    rgraph: RestrictedGraph
    tau: QType
    edges: Tuple[AngleEdge, ...]
    map: DirectedMap
    dual_of: Dict[int, Tuple]  # G(L) face index -> vertex key
    gap_face: Dict[Dart, int]  # G(L) dart -> Gamma face whose walk passes its gap

    @property
    def fat_vertices(self) -> Tuple[int, ...]:
        return self.rgraph.graph.ids

    def switches(self) -> Tuple[Dict[Hashable, int], Dict[int, int]]:
        m = self.map
        return ({v: m.vertex_switches(v) for v in m.ccw},
                {k: m.face_switches(k) for k in range(len(m.walks))})

    def fat_switches(self, v: int) -> int:
        return self.map.vertex_switches(("fat", v))

    def dual_switches(self, face_index: int) -> int:
        return self.map.vertex_switches(self.dual_of[face_index])

    def edge_face(self, e: int) -> Optional[int]:
        """The Gamma face around G(L) edge ``e`` when both its gaps agree."""
        a, b = self.gap_face[(e, 0)], self.gap_face[(e, 1)]
        return a if a == b else None


def angle_orientation(tau: QType, interval: int, sign: int) -> bool:
    """Inward at the fat vertex iff the type on the corner's interval times its sign is +."""
    return tau.at(interval) * sign > 0


def build_gamma(rg: RestrictedGraph, tau: QType) -> DirectedAngleGraph:
    if len(tau) != rg.size:
        raise ValueError(f"type has {len(tau)} entries but G(L) has {rg.size} intervals")
    g = rg.graph
    keep = set(rg.edges)
    sub_ccw = {v: tuple(d for d in g.ccw[v] if d[0] in keep) for v in g.ids}
    pos = {d: k for v in g.ids for k, d in enumerate(sub_ccw[v])}
    edges: List[AngleEdge] = []
    at_fat: Dict[int, List[Tuple[int, int]]] = {v: [] for v in g.ids}
    ccw: Dict[Hashable, Tuple[Dart, ...]] = {}
    dual_of = {}
    for f in rg.faces:
        key = ("dual", f.index)
        dual_of[f.index] = key
        darts = []
        for c in f.corners:
            a = len(edges)
            edges.append(AngleEdge(a, c.vertex, f.index, c, angle_orientation(tau, c.interval, c.sign)))
            at_fat[c.vertex].append((pos[c.arrive], a))
            darts.append((a, 1))
        # the face lies to the right of its boundary walk, so corners run clockwise round the dual vertex
        ccw[key] = tuple(reversed(darts))
    for v in g.ids:
        ccw[("fat", v)] = tuple((a, 0) for _, a in sorted(at_fat[v]))
    head = {e.id: (0 if e.inward else 1) for e in edges}
    m = DirectedMap(ccw, head, surface_chi=g.chi)
    # map each Gamma face through the fat-vertex gaps it crosses
    gap_face: Dict[Dart, int] = {}
    succ = successor_map(ccw)
    by_edge = {e.id: e for e in edges}
    for k, walk in enumerate(m.walks):
        for d in walk:
            x = alpha(d)
            if x[1] == 0:
                y = succ[x]
                # gap at the fat vertex between the corners of angle edges x and y
                c1, c2 = by_edge[x[0]].corner, by_edge[y[0]].corner
                if c1.leave == c2.arrive:
                    gap_face[c1.leave] = k
                elif c2.leave == c1.arrive:
                    gap_face[c2.leave] = k
    # faces of G(L) that are not disks contribute their missing topology to
    # one Gamma face each; cellular G(L) needs no correction
    delta = g.chi - m.rotation_chi()
    if delta:
        walk_of = {d: k for k, w in enumerate(m.walks) for d in w}
        target = None
        for f in rg.faces:
            if not f.is_disk and f.corners:
                target = walk_of[ccw[dual_of[f.index]][0]]
                break
        if target is None:
            raise TheoremViolation(
                f"angle graph spans Euler characteristic {m.rotation_chi()} on a surface of {g.chi} "
                "although every face of G(L) is a disk")
        m.face_chi[target] = 1 + delta
    return DirectedAngleGraph(rg, tau, tuple(edges), m, dual_of, gap_face)


def switch_counts(omega: DirectedAngleGraph) -> Tuple[Dict[Hashable, int], Dict[int, int]]:
    """Switches at every vertex (fat and dual) and around every face."""
    return omega.switches()


def index_one_faces(omega: DirectedAngleGraph) -> List[int]:
    m = omega.map
    return [k for k in range(len(m.walks)) if m.face_index(k) == 1]


def sinks_sources(omega: DirectedAngleGraph) -> List[int]:
    """Indices of disk faces whose dual vertex is a sink or source.

    Faces with a single corner are left out: one angle edge is trivially a
    sink or source but cannot represent a type.
    """
    out = []
    for f in omega.rgraph.faces:
        if f.is_disk and len(f.corners) >= 2 and omega.dual_switches(f.index) == 0:
            out.append(f.index)
    return out


# ---------------------------------------------------------------------------
# switch labels and derivatives


def _signs_of(companion_signs) -> Dict[int, int]:
    if isinstance(companion_signs, LabelledFatGraph):
        return {v.id: v.sign for v in companion_signs.vertices}
    if isinstance(companion_signs, dict):
        return dict(companion_signs)
    return {k + 1: s for k, s in enumerate(companion_signs)}


def switch_labels(tau: QType, labels: Optional[Sequence[int]] = None) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Clockwise and anticlockwise switch labels ``(C, A)``.

    Label ``l_k`` is a switch label when the type changes sign across it;
    it is clockwise when the interval before it is ``+`` and the one after
    it is ``-``.
    """
    if tau.is_trivial:
        raise TrivialType("a trivial type has no switch labels")
    L = tuple(labels) if labels is not None else (tau.labels or tuple(range(1, len(tau) + 1)))
    n = len(L)
    C, A = [], []
    for k in range(n):
        before, after = tau.signs[k - 1], tau.signs[k]
        if before > 0 > after:
            C.append(L[k])
        elif before < 0 < after:
            A.append(L[k])
    return tuple(C), tuple(A)


def _between(L: Sequence[int], lo: int, hi: int, x: int) -> bool:
    """Whether ``x`` lies strictly inside the cyclic interval from ``lo`` to ``hi``."""
    if lo < hi:
        return lo < x < hi
    return x > lo or x < hi


def derivative(tau: QType, companion_signs, labels: Optional[Sequence[int]] = None) -> QType:
    """The C(tau)-type whose value on each C-interval is the sign of the A-label inside it."""
    signs = _signs_of(companion_signs)
    C, A = switch_labels(tau, labels)
    out = []
    for k in range(len(C)):
        lo, hi = C[k], C[(k + 1) % len(C)]
        inside = [a for a in A if (len(C) == 1 and a != lo) or (len(C) > 1 and _between(C, lo, hi, a))]
        if len(inside) != 1:
            raise TheoremViolation(f"C-interval ({lo},{hi}) holds {len(inside)} anticlockwise labels")
        out.append(signs[inside[0]])
    return QType(tuple(out), C)


def condition_c(tau: QType, companion_signs, labels=None) -> bool:
    signs = _signs_of(companion_signs)
    C, _ = switch_labels(tau, labels)
    return len({signs[c] for c in C}) <= 1


def condition_a(tau: QType, companion_signs, labels=None) -> bool:
    signs = _signs_of(companion_signs)
    _, A = switch_labels(tau, labels)
    return len({signs[a] for a in A}) <= 1


@dataclass(frozen=True)
class DerivedStep:
    labels: Tuple[int, ...]
    tau: QType


def derived_sequence(tau: QType, companion_signs, labels: Optional[Sequence[int]] = None) -> List[DerivedStep]:
    """Types ``tau_0, ..., tau_n`` with ``tau_n`` satisfying both sign conditions.

    ``tau_i`` is ``d tau_{i-1}``, negated when that derivative satisfies the
    A-condition but not the C-condition, so the next derivative is again
    non-trivial.  A ``tau`` already satisfying both gives a single step.
    """
    if tau.is_trivial:
        raise TrivialType("the trivial type has no derived sequence")
    L = tuple(labels) if labels is not None else tuple(range(1, len(tau) + 1))
    cur = QType(tau.signs, L)
    steps: List[DerivedStep] = []
    while True:
        ca = condition_a(cur, companion_signs, L)
        cc = condition_c(cur, companion_signs, L)
        if ca and cc:
            steps.append(DerivedStep(L, cur))
            return steps
        if ca:
            cur = -cur
        steps.append(DerivedStep(L, cur))
        nxt = derivative(cur, companion_signs, L)
        if len(nxt.labels) >= len(L):
            raise TheoremViolation("derived label sets must shrink")
        if nxt.is_trivial:
            raise TheoremViolation(f"derivative of {cur} on {L} is trivial although the A-condition fails")
        L, cur = nxt.labels, nxt


# ---------------------------------------------------------------------------
# the dichotomy


@dataclass
class FaceWitness:
    tau: QType
    face: Face
    chain: Tuple[Tuple[Tuple[int, ...], str, int], ...] = ()
    route: str = "descent"

    kind = "FACE"

    def summary(self) -> dict:
        return {"kind": "FACE", "type": str(self.tau), "face": self.face.index,
                "route": self.route, "depth": len(self.chain)}


@dataclass
class WebWitness:
    tau: QType
    web: "webs.Web"
    route: str
    labels: Tuple[int, ...] = ()

    kind = "WEB"

    def summary(self) -> dict:
        return {"kind": "WEB", "type": str(self.tau), "route": self.route,
                "vertices": list(self.web.vertices), "edges": list(self.web.edges),
                "deficiency": self.web.deficiency}


def _check_hypothesis(pair: GraphPair):
    if not pair.hypothesis_holds():
        raise HypothesisViolated(
            f"need delta > 1 - chi(P)/p, got delta={pair.delta}, chi(P)={pair.chi_p}, p={pair.p}")


def trivial_type_face(pair: GraphPair):
    """A face of G_P with all vertices of one sign, or a web of same-sign G_Q edges."""
    _check_hypothesis(pair)
    gp, gq = pair.gp, pair.gq
    tau = QType((1,) * pair.q)
    same = [e for e in gp.edges if gp.sign(gp.ends(e)[0]) == gp.sign(gp.ends(e)[1])]
    for f in gp.restrict(same):
        if f.is_disk:
            if len(f.atoms) != 1:
                raise TheoremViolation("a disk face of the same-sign subgraph contains other faces")
            face = gp.faces[f.atoms[0]]
            if not face_represents(face, tau):
                raise TheoremViolation(f"face {face.index} has one vertex sign but misses the trivial type")
            return FaceWitness(tau, face, (), "same-sign")
    k = pair.web_bound
    lam = [e for e in gq.edges if gq.sign(gq.ends(e)[0]) == gq.sign(gq.ends(e)[1])]
    for comp in webs.edge_components(gq, lam, gq.ids):
        w = webs.make_web(gq, comp[0], comp[1], k)
        if w is not None:
            return WebWitness(tau, w, "same-sign")
    raise TheoremViolation("neither a one-sign face of G_P nor a same-sign web in G_Q")


def _represent_in(rg: RestrictedGraph, tau: QType, faces: Sequence[Face]) -> Optional[Face]:
    for f in faces:
        if f.is_disk and face_represents(f, tau):
            return f
    return None


def switch_edges(rg: RestrictedGraph, tau: QType) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Clockwise and anticlockwise switch edges of ``G(L)``."""
    C, A = switch_labels(tau, rg.labels)
    cs, as_ = set(C), set(A)
    cw, acw = [], []
    for e in rg.edges:
        a, b = rg.graph.end_labels(e)
        if a in cs and b in cs:
            cw.append(e)
        elif a in as_ and b in as_:
            acw.append(e)
    return tuple(cw), tuple(acw)


def switch_web(pair: GraphPair, rg: RestrictedGraph, tau: QType) -> Optional[WebWitness]:
    """A web among G_Q edges matching the clockwise (else anticlockwise) switch edges."""
    k = pair.web_bound
    cw, acw = switch_edges(rg, tau)
    C, A = switch_labels(tau, rg.labels)
    for route, es, vs in (("clockwise-switch", cw, C), ("anticlockwise-switch", acw, A)):
        for verts, comp in webs.edge_components(pair.gq, es, vs):
            w = webs.make_web(pair.gq, verts, comp, k)
            if w is not None:
                return WebWitness(tau, w, route, rg.labels)
    return None


def resolve_type(pair: GraphPair, tau: QType):
    """Find a face of G_P representing ``tau`` or a (p - chi(P))-web in G_Q.

    Follows the derived sequence down to a type satisfying both sign
    conditions, looks for a representative there, and either climbs back
    through nested faces or reads a web off the switch edges.
    """
    _check_hypothesis(pair)
    if len(tau) != pair.q:
        raise ValueError(f"expected a type on {pair.q} intervals")
    if tau.is_trivial:
        return trivial_type_face(pair)
    gp = pair.gp
    steps = derived_sequence(tau, pair.gq)
    graphs = [restricted_graph(gp, s.labels) for s in steps]
    last = graphs[-1]
    found = _represent_in(last, steps[-1].tau, last.faces)
    if found is None:
        w = switch_web(pair, last, steps[-1].tau)
        if w is None:
            raise TheoremViolation(f"type {tau}: no representative and no switch-edge web")
        w.tau = tau
        return w
    chain = [(steps[-1].labels, str(steps[-1].tau), found.index)]
    cur = found
    for i in range(len(steps) - 2, -1, -1):
        rg = graphs[i]
        inner = _represent_in(rg, steps[i].tau, rg.faces_inside(cur))
        if inner is None:
            raise TheoremViolation(
                f"type {tau}: a face representing the derived type on {steps[i + 1].labels} "
                f"holds no face representing {steps[i].tau}")
        chain.append((steps[i].labels, str(steps[i].tau), inner.index))
        cur = inner
    face = gp.faces[cur.atoms[0]] if len(cur.atoms) == 1 else None
    if face is None or not face_represents(face, tau):
        raise TheoremViolation(f"type {tau}: descent ended on a face that does not represent it")
    return FaceWitness(tau, face, tuple(reversed(chain)), "descent" if len(steps) > 1 else "direct")


def verify_witness(pair: GraphPair, w) -> bool:
    if isinstance(w, FaceWitness):
        return w.face.index < len(pair.gp.faces) and face_represents(pair.gp.faces[w.face.index], w.tau)
    if isinstance(w, WebWitness):
        return webs.is_k_web(pair.gq, w.web.vertices, w.web.edges, pair.web_bound)
    return False


def resolve_all(pair: GraphPair) -> Dict[str, object]:
    return {str(t): resolve_type(pair, t) for t in all_types(pair.q)}
