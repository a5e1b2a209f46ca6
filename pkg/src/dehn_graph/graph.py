"""Labelled intersection graph pairs as rotation systems.

A pair consists of two fat graphs, ``gp`` on the surface P and ``gq`` on
the surface Q, sharing their edge set.  Each edge end ``(edge, end)`` is a
single intersection point of the two boundary curves, so it appears as a
slot once in each graph: in ``gp`` at vertex ``i`` with label ``j`` and in
``gq`` at vertex ``j`` with label ``i``.

Rotations are stored in label-reading order (anticlockwise at a positive
vertex, clockwise at a negative one) starting from a slot labelled 1, so a
valid rotation reads ``1, 2, ..., n`` repeated ``delta`` times.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import errors
from .maps import Dart, alpha, components, merge_regions, successor_map, trace_walks

SIGN_OF = {"+": 1, "-": -1, 1: 1, -1: -1}
SIGN_CHAR = {1: "+", -1: "-"}


@dataclass(frozen=True)
class Slot:
    edge: int
    end: int
    label: int

    @property
    def dart(self) -> Dart:
        return (self.edge, self.end)


@dataclass(frozen=True)
class FatVertex:
    id: int
    sign: int
    rotation: Tuple[Slot, ...]


@dataclass(frozen=True)
class Corner:
    vertex: int
    sign: int
    interval: int
    arrive: Dart
    leave: Dart


@dataclass(frozen=True)
class Face:
    """A face of a graph, or of a subgraph viewed inside its parent map.

    ``atoms`` are the indices of parent faces merged into this one (a face
    of the full graph is its own single atom).  ``isolated`` lists kept
    vertices lying in the face that carry no kept edges.
    """

    index: int
    walks: Tuple[Tuple[Dart, ...], ...]
    corners: Tuple[Corner, ...]
    chi: int
    atoms: Tuple[int, ...]
    isolated: Tuple[int, ...] = ()

    @property
    def is_disk(self) -> bool:
        return self.chi == 1 and len(self.walks) == 1 and not self.isolated

    @property
    def length(self) -> int:
        return sum(len(w) for w in self.walks)

    @property
    def edges(self) -> Tuple[int, ...]:
        return tuple(d[0] for w in self.walks for d in w)

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(sorted({c.vertex for c in self.corners} | set(self.isolated)))

    @property
    def darts(self) -> Tuple[Dart, ...]:
        return tuple(d for w in self.walks for d in w)


def interval_index(label: int, labels: Optional[Sequence[int]]) -> int:
    """1-based index of the interval containing ``label``.

    With ``labels=None`` the intervals are the consecutive label intervals
    ``(i, i+1)`` and the index is ``label`` itself.  Otherwise ``labels`` is
    a sorted label set L and interval ``k`` is ``(l_k, l_{k+1})``.
    """
    if labels is None:
        return label
    idx = len(labels)
    for k, l in enumerate(labels, start=1):
        if l <= label:
            idx = k
        else:
            break
    return idx


def corner_interval(vertex: FatVertex, slot: int, companion: int) -> Tuple[int, int]:
    """The interval of the corner that follows ``slot`` in reading order."""
    i = vertex.rotation[slot].label
    return (i, i % companion + 1)


class LabelledFatGraph:
    """One side of a pair: vertices with signed, labelled rotations."""

    def __init__(self, side: str, vertices: Sequence[FatVertex], companion: int,
                 delta: int, chi: int, containment: Sequence[Tuple[Dart, Dart]] = ()):
        self.side = side
        self.vertices = tuple(sorted(vertices, key=lambda v: v.id))
        self.companion = companion
        self.delta = delta
        self.chi = chi
        self.containment = tuple(containment)
        self.vertex: Dict[int, FatVertex] = {v.id: v for v in self.vertices}
        self.dart_vertex: Dict[Dart, int] = {}
        self.dart_pos: Dict[Dart, int] = {}
        self.dart_label: Dict[Dart, int] = {}
        self.ccw: Dict[int, Tuple[Dart, ...]] = {}
        for v in self.vertices:
            for k, s in enumerate(v.rotation):
                self.dart_vertex[s.dart] = v.id
                self.dart_pos[s.dart] = k
                self.dart_label[s.dart] = s.label
            darts = tuple(s.dart for s in v.rotation)
            self.ccw[v.id] = darts if v.sign > 0 else tuple(reversed(darts))
        self.edges: Tuple[int, ...] = tuple(sorted({d[0] for d in self.dart_vertex}))

    def __repr__(self):
        return (f"LabelledFatGraph(side={self.side!r}, V={len(self.vertices)}, "
                f"E={len(self.edges)}, chi={self.chi})")

    @property
    def ids(self) -> Tuple[int, ...]:
        return tuple(v.id for v in self.vertices)

    def sign(self, v: int) -> int:
        return self.vertex[v].sign

    def ends(self, e: int) -> Tuple[int, int]:
        return (self.dart_vertex[(e, 0)], self.dart_vertex[(e, 1)])

    def end_labels(self, e: int) -> Tuple[int, int]:
        return (self.dart_label[(e, 0)], self.dart_label[(e, 1)])

    def degree(self, v: int) -> int:
        return len(self.vertex[v].rotation)

    @cached_property
    def succ(self) -> Dict[Dart, Dart]:
        return successor_map(self.ccw)

    @cached_property
    def components(self) -> List[List[int]]:
        return components(self.ids, (self.ends(e) for e in self.edges))

    @cached_property
    def walks(self) -> List[Tuple[Dart, ...]]:
        return trace_walks(self.ccw)

    @cached_property
    def faces(self) -> Tuple[Face, ...]:
        walks = self.walks
        walk_of = {d: k for k, w in enumerate(walks) for d in w}
        # containment merges walks of nested components into one face
        merged = list(range(len(walks)))

        def find(k):
            while merged[k] != k:
                k = merged[k]
            return k

        for inner, outer in self.containment:
            a, b = find(walk_of[inner]), find(walk_of[outer])
            if a != b:
                merged[max(a, b)] = min(a, b)
        groups: Dict[int, List[int]] = {}
        for k in range(len(walks)):
            groups.setdefault(find(k), []).append(k)
        faces = []
        for idx, root in enumerate(sorted(groups)):
            ws = tuple(walks[k] for k in groups[root])
            chi = 2 - len(ws) if len(ws) > 1 else 1
            faces.append(Face(idx, ws, self._corners(ws, None, self.succ), chi, (idx,)))
        # an edgeless vertex sits alone in the disk complementary to it
        for v in self.ids:
            if not self.ccw[v]:
                idx = len(faces)
                faces.append(Face(idx, (), (), 1, (idx,), (v,)))
        return tuple(faces)

    @cached_property
    def dart_face(self) -> Dict[Dart, int]:
        return {d: f.index for f in self.faces for d in f.darts}

    def _corners(self, walks, labels, succ) -> Tuple[Corner, ...]:
        out = []
        for w in walks:
            n = len(w)
            for k in range(n):
                x = alpha(w[k])
                y = succ[x]
                v = self.dart_vertex[x]
                s = self.vertex[v].sign
                first = x if s > 0 else y
                out.append(Corner(v, s, interval_index(self.dart_label[first], labels), x, y))
        return tuple(out)

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + sum(f.chi for f in self.faces)

    def restrict(self, edges: Iterable[int], vertices: Optional[Iterable[int]] = None,
                 labels: Optional[Sequence[int]] = None) -> Tuple[Face, ...]:
        """Faces of the subgraph on ``edges`` (and ``vertices``) inside this map.

        Corners are indexed by the intervals of ``labels`` when given.  Each
        subface records the faces of this graph it is made of and its Euler
        characteristic, so non-disk faces are recognised on any surface.
        """
        keep_e = frozenset(edges)
        keep_v = frozenset(self.ids if vertices is None else vertices)
        ccw = {}
        for v in self.ids:
            if v in keep_v:
                ccw[v] = tuple(d for d in self.ccw[v] if d[0] in keep_e)
        for e in keep_e:
            a, b = self.ends(e)
            if a not in keep_v or b not in keep_v:
                raise ValueError(f"edge {e} has an end outside the kept vertex set")
        succ = successor_map(ccw)
        walks = trace_walks(ccw)
        df = self.dart_face
        root, chi = merge_regions(
            [f.chi for f in self.faces],
            ((df[(e, 0)], df[(e, 1)]) for e in self.edges if e not in keep_e),
            ([df[d] for d in self.ccw[v]] for v in self.ids if v not in keep_v),
        )
        region_walks: Dict[int, List[Tuple[Dart, ...]]] = {}
        for w in walks:
            region_walks.setdefault(root[df[w[0]]], []).append(w)
        region_iso: Dict[int, List[int]] = {}
        for v in sorted(keep_v):
            if not ccw[v]:
                region_iso.setdefault(root[df[self.ccw[v][0]]], []).append(v)
        order = list(region_walks)
        order += [r for r in sorted(region_iso) if r not in region_walks]
        order += [r for r in sorted(chi) if r not in region_walks and r not in region_iso]
        atoms: Dict[int, List[int]] = {}
        for a, r in enumerate(root):
            atoms.setdefault(r, []).append(a)
        out = []
        for idx, r in enumerate(order):
            ws = tuple(region_walks.get(r, ()))
            out.append(Face(idx, ws, self._corners(ws, labels, succ), chi[r],
                            tuple(atoms[r]), tuple(region_iso.get(r, ()))))
        return tuple(out)


@dataclass(frozen=True, eq=False)
class GraphPair:
    gp: LabelledFatGraph
    gq: LabelledFatGraph
    delta: int
    p: int
    q: int
    separating_p: bool = False
    separating_q: bool = False
    name: str = field(default="", compare=False)

    @property
    def chi_p(self) -> int:
        return self.gp.chi

    @property
    def chi_q(self) -> int:
        return self.gq.chi

    @property
    def edges(self) -> Tuple[int, ...]:
        return self.gp.edges

    def hypothesis_holds(self) -> bool:
        """Whether delta > 1 - chi(P)/p, the standing hypothesis of the dichotomy."""
        return self.delta * self.p > self.p - self.chi_p

    @property
    def web_bound(self) -> int:
        return self.p - self.chi_p

    def to_dict(self) -> dict:
        return pair_to_dict(self)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        return hashlib.sha256(self.dumps().encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# serialization


def _graph_to_dict(g: LabelledFatGraph) -> dict:
    return {
        "vertices": [
            {"id": v.id, "sign": SIGN_CHAR[v.sign],
             "rotation": [{"edge": s.edge, "end": s.end, "label": s.label} for s in v.rotation]}
            for v in g.vertices
        ]
    }


def pair_to_dict(pair: GraphPair) -> dict:
    out = {
        "delta": pair.delta,
        "p": pair.p,
        "q": pair.q,
        "gp": _graph_to_dict(pair.gp),
        "gq": _graph_to_dict(pair.gq),
        "flags": {
            "separating_p": pair.separating_p,
            "separating_q": pair.separating_q,
            "chi_p": pair.chi_p,
            "chi_q": pair.chi_q,
        },
    }
    cont = {}
    for key, g in (("gp", pair.gp), ("gq", pair.gq)):
        if g.containment:
            cont[key] = [{"inner": list(a), "outer": list(b)} for a, b in g.containment]
    if cont:
        out["containment"] = cont
    return out


def dumps_pair(pair: GraphPair) -> str:
    return pair.dumps()


def load_pair(path) -> GraphPair:
    with open(path) as fh:
        return build_pair(json.load(fh))


def save_pair(pair: GraphPair, path) -> None:
    with open(path, "w") as fh:
        fh.write(pair.dumps() + "\n")


# ---------------------------------------------------------------------------
# validation


def _parse_graph(raw: dict, key: str, count: int, companion: int, delta: int,
                 problems: list) -> Optional[List[FatVertex]]:
    side = key[1].upper()
    try:
        rverts = raw[key]["vertices"]
    except (KeyError, TypeError):
        problems.append(errors.MalformedInstance(f"missing {key}.vertices"))
        return None
    verts = []
    for rv in rverts:
        try:
            vid = int(rv["id"])
            sign = SIGN_OF[rv["sign"]]
            rot = tuple(Slot(int(s["edge"]), int(s["end"]), int(s["label"])) for s in rv["rotation"])
        except (KeyError, TypeError, ValueError):
            problems.append(errors.MalformedInstance(f"bad vertex record in {key}", where=str(rv)[:60]))
            return None
        verts.append(FatVertex(vid, sign, rot))
    ids = sorted(v.id for v in verts)
    if ids != list(range(1, count + 1)):
        problems.append(errors.MalformedInstance(
            f"{key} vertex ids must be 1..{count}, got {ids}"))
        return None
    for v in verts:
        where = f"{side} vertex {v.id}"
        if len(v.rotation) != companion * delta:
            problems.append(errors.LabelCycleViolation(
                f"rotation has {len(v.rotation)} slots, expected {companion * delta}", where))
            continue
        for k, s in enumerate(v.rotation):
            want = k % companion + 1
            if s.label != want:
                problems.append(errors.LabelCycleViolation(
                    f"slot {k} carries label {s.label}, reading order requires {want}", where))
                break
    return verts


def validate(raw: dict) -> List[errors.InstanceError]:
    """Every violation found in a raw instance description (empty if valid)."""
    problems: List[errors.InstanceError] = []
    try:
        delta, p, q = int(raw["delta"]), int(raw["p"]), int(raw["q"])
    except (KeyError, TypeError, ValueError):
        return [errors.MalformedInstance("instance needs integer delta, p, q")]
    if delta < 1 or p < 1 or q < 1:
        return [errors.MalformedInstance("delta, p and q must be positive")]
    flags = raw.get("flags", {}) or {}
    chi_p = int(flags.get("chi_p", 2))
    chi_q = int(flags.get("chi_q", 2))
    for name, chi in (("chi_p", chi_p), ("chi_q", chi_q)):
        if chi > 2 or chi % 2:
            problems.append(errors.MalformedInstance(f"{name}={chi} is not the Euler "
                                                     "characteristic of a closed orientable surface"))
    pv = _parse_graph(raw, "gp", p, q, delta, problems)
    qv = _parse_graph(raw, "gq", q, p, delta, problems)
    if pv is None or qv is None or problems:
        return problems

    pslot = {}
    qslot = {}
    for table, verts, side in ((pslot, pv, "P"), (qslot, qv, "Q")):
        for v in verts:
            for s in v.rotation:
                if s.end not in (0, 1):
                    problems.append(errors.MalformedInstance("edge end must be 0 or 1",
                                                             f"edge {s.edge}"))
                    continue
                if s.dart in table:
                    problems.append(errors.CorrespondenceViolation(
                        f"end {s.end} of edge {s.edge} appears twice in G_{side}", f"edge {s.edge}"))
                table[s.dart] = (v, s)
    if problems:
        return problems
    edges = sorted({d[0] for d in pslot} | {d[0] for d in qslot})
    for e in edges:
        for end in (0, 1):
            d = (e, end)
            if d not in pslot or d not in qslot:
                problems.append(errors.CorrespondenceViolation(
                    f"end {end} of edge {e} missing from one of the graphs", f"edge {e}"))
    if problems:
        return problems
    for e in edges:
        for end in (0, 1):
            (pvx, ps), (qvx, qs) = pslot[(e, end)], qslot[(e, end)]
            if ps.label != qvx.id or qs.label != pvx.id:
                problems.append(errors.CorrespondenceViolation(
                    f"end {end}: G_P label {ps.label} at vertex {pvx.id} vs "
                    f"G_Q label {qs.label} at vertex {qvx.id}", f"edge {e}"))
    if problems:
        return problems
    for e in edges:
        same_p = pslot[(e, 0)][0].sign == pslot[(e, 1)][0].sign
        same_q = qslot[(e, 0)][0].sign == qslot[(e, 1)][0].sign
        if same_p == same_q:
            problems.append(errors.ParityViolation(
                "edge joins same-sign vertices in both graphs" if same_p
                else "edge joins opposite-sign vertices in both graphs", f"edge {e}"))
    for flag, verts, side in (("separating_p", pv, "P"), ("separating_q", qv, "Q")):
        if flags.get(flag):
            ordered = sorted(verts, key=lambda v: v.id)
            n = len(ordered)
            if n % 2 or any(ordered[k].sign == ordered[(k + 1) % n].sign for k in range(n)):
                problems.append(errors.SignAlternationViolation(
                    "separating surface needs alternating vertex signs (and an even count)", f"G_{side}"))

    cont = raw.get("containment") or {}
    for key, verts, companion, chi in (("gp", pv, q, chi_p), ("gq", qv, p, chi_q)):
        side = key[1].upper()
        contain = []
        for entry in cont.get(key, []) or []:
            try:
                contain.append((tuple(int(x) for x in entry["inner"]),
                                tuple(int(x) for x in entry["outer"])))
            except (KeyError, TypeError, ValueError):
                problems.append(errors.MalformedInstance(f"bad containment entry in {key}"))
        g = LabelledFatGraph(side, verts, companion, delta, chi, ())
        problems.extend(_check_embedding(g, contain))
    return problems


def _check_embedding(g: LabelledFatGraph, contain) -> List[errors.InstanceError]:
    side = g.side
    problems = []
    comps = g.components
    walks = g.walks
    walk_of = {d: k for k, w in enumerate(walks) for d in w}
    comp_of = {v: k for k, c in enumerate(comps) for v in c}
    if len(comps) > 1 or contain:
        if g.chi != 2:
            return [errors.NonCellular(
                f"G_{side} has {len(comps)} components; nesting is only modelled on the sphere")]
        if len(contain) != len(comps) - 1:
            return [errors.NonCellular(
                f"G_{side} has {len(comps)} components but {len(contain)} containment entries")]
        for comp in comps:
            cv = set(comp)
            ce = [e for e in g.edges if g.ends(e)[0] in cv]
            cf = {walk_of[d] for v in comp for d in g.ccw[v]}
            if len(cv) - len(ce) + len(cf) != 2:
                return [errors.NonCellular(
                    f"component containing vertex {comp[0]} is not planar", f"G_{side}")]
        uf = list(range(len(comps)))

        def find(k):
            while uf[k] != k:
                k = uf[k]
            return k

        for inner, outer in contain:
            if inner not in walk_of or outer not in walk_of:
                return [errors.NonCellular(f"containment refers to unknown dart {inner} or {outer}",
                                           f"G_{side}")]
            a, b = find(comp_of[g.dart_vertex[inner]]), find(comp_of[g.dart_vertex[outer]])
            if a == b:
                return [errors.NonCellular("containment entry joins a component to itself",
                                           f"G_{side}")]
            uf[max(a, b)] = min(a, b)
        g = LabelledFatGraph(side, g.vertices, g.companion, g.delta, g.chi, contain)
    for f in g.faces:
        if len(f.walks) == 1 and len(f.walks[0]) == 1:
            problems.append(errors.TrivialLoop("edge bounds a face of length one",
                                               f"G_{side} edge {f.walks[0][0][0]}"))
    derived = g.euler_characteristic()
    if derived != g.chi:
        problems.append(errors.EulerMismatch(
            f"V - E + F = {derived} but the declared Euler characteristic is {g.chi}", f"G_{side}"))
    return problems


def build_pair(raw: dict, name: str = "") -> GraphPair:
    """Validate a raw description and return the pair; raise the first violation."""
    problems = validate(raw)
    if problems:
        raise problems[0]
    delta, p, q = int(raw["delta"]), int(raw["p"]), int(raw["q"])
    flags = raw.get("flags", {}) or {}
    cont = raw.get("containment") or {}

    def graph(key, count, companion, chi):
        verts = [FatVertex(int(v["id"]), SIGN_OF[v["sign"]],
                           tuple(Slot(int(s["edge"]), int(s["end"]), int(s["label"]))
                                 for s in v["rotation"]))
                 for v in raw[key]["vertices"]]
        contain = [(tuple(int(x) for x in c["inner"]), tuple(int(x) for x in c["outer"]))
                   for c in cont.get(key, []) or []]
        return LabelledFatGraph(key[1].upper(), verts, companion, delta, chi, contain)

    gp = graph("gp", p, q, int(flags.get("chi_p", 2)))
    gq = graph("gq", q, p, int(flags.get("chi_q", 2)))
    return GraphPair(gp, gq, delta, p, q, bool(flags.get("separating_p", False)),
                     bool(flags.get("separating_q", False)), name)


def trace_faces(g: LabelledFatGraph) -> Tuple[Face, ...]:
    return g.faces


@dataclass(frozen=True)
class ParityReport:
    violations: Tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_parity_rule(pair: GraphPair) -> ParityReport:
    bad = []
    for e in pair.edges:
        a, b = pair.gp.ends(e)
        c, d = pair.gq.ends(e)
        same_p = pair.gp.sign(a) == pair.gp.sign(b)
        same_q = pair.gq.sign(c) == pair.gq.sign(d)
        if same_p == same_q:
            bad.append(e)
    return ParityReport(tuple(bad))


def edge_joins_same_sign(g: LabelledFatGraph, e: int) -> bool:
    a, b = g.ends(e)
    return g.sign(a) == g.sign(b)


def other(pair: GraphPair, g: LabelledFatGraph) -> LabelledFatGraph:
    return pair.gq if g is pair.gp else pair.gp


def swap(pair: GraphPair) -> GraphPair:
    """The same pair with the roles of P and Q exchanged."""
    return GraphPair(pair.gq, pair.gp, pair.delta, pair.q, pair.p,
                     pair.separating_q, pair.separating_p, pair.name)
