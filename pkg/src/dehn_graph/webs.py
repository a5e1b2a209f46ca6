"""Scharlemann cycles, webs, i-cycles and bigons.

A web is a same-sign subgraph of G_Q missing few edge endpoints at its
vertices.  On a sphere it is great when one face of its own embedding
holds every other vertex; the disk on the far side is searched for an
innermost i-cycle, which bounds a Scharlemann cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import (HypothesisViolated, NoneFound, NotConnected, NotGreatWeb, NotSphere,
                     TheoremViolation)
from .graph import Face, GraphPair, LabelledFatGraph
from .maps import components


# ---------------------------------------------------------------------------
# Scharlemann cycles


@dataclass(frozen=True)
class ScharlemannCycle:
    face: int
    interval: Tuple[int, int]
    length: int
    sign: int
    edges: Tuple[int, ...]
    vertices: Tuple[int, ...]

    def summary(self) -> dict:
        return {"face": self.face, "interval": list(self.interval), "length": self.length,
                "sign": self.sign, "edges": list(self.edges)}


def scharlemann_of(g: LabelledFatGraph, f: Face) -> Optional[ScharlemannCycle]:
    if not f.is_disk or not f.corners:
        return None
    lams = {c.interval for c in f.corners}
    signs = {c.sign for c in f.corners}
    if len(lams) != 1 or len(signs) != 1:
        return None
    lam = lams.pop()
    return ScharlemannCycle(f.index, (lam, lam % g.companion + 1), f.length, signs.pop(),
                            f.edges, f.vertices)


def find_scharlemann_cycles(g: LabelledFatGraph,
                            companion: Optional[LabelledFatGraph] = None) -> List[ScharlemannCycle]:
    """Every face of ``g`` that is a Scharlemann cycle.

    With the companion graph given, its vertices at the two ends of the
    interval are checked to have opposite signs.
    """
    out = []
    for f in g.faces:
        sc = scharlemann_of(g, f)
        if sc is None:
            continue
        if companion is not None:
            a, b = sc.interval
            if companion.sign(a) == companion.sign(b):
                raise TheoremViolation(
                    f"Scharlemann cycle on face {f.index}: companion vertices {a} and {b} share a sign")
        out.append(sc)
    return out


def cycles_by_interval(cycles: Iterable[ScharlemannCycle], length: Optional[int] = None
                       ) -> Dict[Tuple[int, int], List[ScharlemannCycle]]:
    out: Dict[Tuple[int, int], List[ScharlemannCycle]] = {}
    for c in cycles:
        if length is None or c.length == length:
            out.setdefault(c.interval, []).append(c)
    return dict(sorted(out.items()))


def distinct_interval_pairs(cycles: Iterable[ScharlemannCycle], length: int = 2
                            ) -> List[Tuple[ScharlemannCycle, ScharlemannCycle]]:
    """Pairs of Scharlemann cycles of the given length on different intervals."""
    groups = cycles_by_interval(cycles, length)
    keys = list(groups)
    return [(groups[a][0], groups[b][0]) for a, b in combinations(keys, 2)]


# ---------------------------------------------------------------------------
# webs


@dataclass(frozen=True)
class Web:
    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]
    deficiency: int
    sign: int
    great_region: Optional[int] = None

    def summary(self) -> dict:
        return {"vertices": list(self.vertices), "edges": list(self.edges),
                "deficiency": self.deficiency, "sign": self.sign,
                "great_region": self.great_region}


def deficiency(g: LabelledFatGraph, vertices: Iterable[int], edges: Iterable[int]) -> int:
    """Edge endpoints at the given vertices that do not belong to the given edges."""
    vs = set(vertices)
    total = sum(g.degree(v) for v in vs)
    used = sum(1 for e in set(edges) for v in g.ends(e) if v in vs)
    return total - used


def is_k_web(g: LabelledFatGraph, vertices: Iterable[int], edges: Iterable[int], k: int,
             connected: bool = False) -> bool:
    vs, es = set(vertices), set(edges)
    if not vs or k < 0:
        return False
    if any(v not in g.vertex for v in vs) or any(e not in g.edges for e in es):
        return False
    if len({g.sign(v) for v in vs}) != 1:
        return False
    if any(v not in vs for e in es for v in g.ends(e)):
        return False
    if connected and len(components(vs, (g.ends(e) for e in es))) != 1:
        return False
    return deficiency(g, vs, es) <= k


def make_web(g: LabelledFatGraph, vertices: Iterable[int], edges: Iterable[int], k: int) -> Optional[Web]:
    vs, es = tuple(sorted(set(vertices))), tuple(sorted(set(edges)))
    if not is_k_web(g, vs, es, k):
        return None
    return Web(vs, es, deficiency(g, vs, es), g.sign(vs[0]))


def edge_components(g: LabelledFatGraph, edges: Iterable[int], vertices: Optional[Iterable[int]] = None
                    ) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Connected pieces of a subgraph, ordered by lowest vertex.

    Without ``vertices`` the subgraph's vertices are the edge ends.
    """
    es = sorted(set(edges))
    vs = set(vertices) if vertices is not None else set()
    for e in es:
        vs.update(g.ends(e))
    out = []
    for comp in components(sorted(vs), (g.ends(e) for e in es)):
        cs = set(comp)
        out.append((tuple(sorted(cs)), tuple(e for e in es if g.ends(e)[0] in cs)))
    out.sort(key=lambda t: t[0][0])
    return out


def _connected_subsets(g: LabelledFatGraph, sign: int, size: int):
    pool = [v for v in g.ids if g.sign(v) == sign]
    for vs in combinations(pool, size):
        es = induced_edges(g, vs)
        if len(components(vs, (g.ends(e) for e in es))) == 1:
            yield vs, es


def induced_edges(g: LabelledFatGraph, vertices: Iterable[int]) -> Tuple[int, ...]:
    vs = set(vertices)
    return tuple(e for e in g.edges if g.ends(e)[0] in vs and g.ends(e)[1] in vs)


def find_k_web(g: LabelledFatGraph, k: int, great: bool = False) -> Optional[Web]:
    """A connected k-web, fewest vertices first, then lexicographic.

    For great webs the induced edges are tried first and then subsets with
    as many edges dropped as the deficiency budget allows, since removing
    edges can merge the faces holding outside vertices.
    """
    for size in range(1, len(g.ids) + 1):
        for sign in (1, -1):
            for vs, es in _connected_subsets(g, sign, size):
                d0 = deficiency(g, vs, es)
                if d0 > k:
                    continue
                if not great:
                    return Web(vs, es, d0, sign)
                spare = (k - d0) // 2
                for drop in range(0, min(spare, len(es)) + 1):
                    for gone in combinations(es, drop):
                        keep = tuple(e for e in es if e not in gone)
                        if len(components(vs, (g.ends(e) for e in keep))) != 1:
                            continue
                        rep = great_web_report(g, vs, keep)
                        if rep.great:
                            return Web(vs, keep, deficiency(g, vs, keep), sign, rep.region)
    return None


# ---------------------------------------------------------------------------
# great webs


@dataclass(frozen=True)
class GreatWebReport:
    great: bool
    region: Optional[int]  # face of the web's embedding holding all outside vertices
    located: Dict[int, int]  # outside vertex -> face of the web's embedding
    faces: Tuple[Face, ...]

    def disk_atoms(self) -> Tuple[int, ...]:
        """Faces of G_Q making up the disk on the far side of ``region``."""
        if self.region is None:
            return ()
        u = set(self.faces[self.region].atoms)
        return tuple(sorted(a for f in self.faces for a in f.atoms if a not in u))


def great_web_report(g: LabelledFatGraph, vertices: Iterable[int], edges: Iterable[int]) -> GreatWebReport:
    if g.chi != 2:
        raise NotSphere(f"great webs need a sphere, got Euler characteristic {g.chi}")
    vs, es = sorted(set(vertices)), sorted(set(edges))
    if not vs or len(components(vs, (g.ends(e) for e in es))) != 1:
        raise NotConnected("the web must be connected")
    faces = g.restrict(es, vs)
    region_of = {a: f.index for f in faces for a in f.atoms}
    df = g.dart_face
    located = {v: region_of[df[g.ccw[v][0]]] for v in g.ids if v not in set(vs)}
    regions = set(located.values())
    if len(regions) > 1:
        return GreatWebReport(False, None, located, faces)
    region = regions.pop() if regions else 0
    return GreatWebReport(True, region, located, faces)


def is_great_web(pair_or_graph, web) -> GreatWebReport:
    g = pair_or_graph.gq if isinstance(pair_or_graph, GraphPair) else pair_or_graph
    if isinstance(web, Web):
        return great_web_report(g, web.vertices, web.edges)
    vs, es = web
    return great_web_report(g, vs, es)


# ---------------------------------------------------------------------------
# i-cycles


@dataclass(frozen=True)
class ICycle:
    label: int
    edges: Tuple[int, ...]
    vertices: Tuple[int, ...]  # vertices[k] is the tail of edges[k]


def _i_arcs(g: LabelledFatGraph, edges: Iterable[int], label: int) -> Dict[int, List[Tuple[int, int]]]:
    out: Dict[int, List[Tuple[int, int]]] = {}
    for e in sorted(set(edges)):
        a, b = g.end_labels(e)
        u, w = g.ends(e)
        if a == label and b == label:
            raise TheoremViolation(f"edge {e} carries label {label} at both ends")
        if a == label:
            out.setdefault(u, []).append((e, w))
        elif b == label:
            out.setdefault(w, []).append((e, u))
    return out


def find_i_cycle(g: LabelledFatGraph, edges: Iterable[int], label: int) -> Optional[ICycle]:
    """A directed cycle of edges, each oriented away from its end labelled ``label``.

    Walks from each start vertex always leaving along an edge whose tail
    label is ``label``, and stops at the first repeated vertex.
    """
    arcs = _i_arcs(g, edges, label)
    for start in sorted(arcs):
        path_v: List[int] = []
        path_e: List[int] = []
        seen: Dict[int, int] = {}
        v = start
        while v in arcs and v not in seen:
            seen[v] = len(path_v)
            e, w = arcs[v][0]
            path_v.append(v)
            path_e.append(e)
            v = w
        if v in seen:
            k = seen[v]
            return ICycle(label, tuple(path_e[k:]), tuple(path_v[k:]))
    return None


def simple_i_cycles(g: LabelledFatGraph, edges: Iterable[int], label: int) -> List[ICycle]:
    """All simple directed i-cycles, each listed once from its lowest vertex."""
    arcs = _i_arcs(g, edges, label)
    out = []

    def extend(root, v, vs, es):
        for e, w in arcs.get(v, ()):
            if w == root:
                out.append(ICycle(label, tuple(es + [e]), tuple(vs)))
            elif w > root and w not in vs:
                extend(root, w, vs + [w], es + [e])

    for root in sorted(arcs):
        extend(root, root, [root], [])
    return out


# ---------------------------------------------------------------------------
# the innermost cycle


@dataclass(frozen=True)
class InnermostCycle:
    cycle: ICycle
    inside: Tuple[int, ...]  # faces of G_Q bounded by the cycle away from the outer region
    scharlemann: ScharlemannCycle
    cycle_is_face: bool


def _check_pair(pair: GraphPair):
    if not pair.hypothesis_holds():
        raise HypothesisViolated(
            f"need delta > 1 - chi(P)/p, got delta={pair.delta}, chi(P)={pair.chi_p}, p={pair.p}")


def innermost_i_cycle(pair: GraphPair, web: Web) -> InnermostCycle:
    """The i-cycle (over all labels) bounding the fewest faces inside the web's disk.

    Cycles run over every G_Q edge joining web vertices except those lying
    inside the outer region, so the inside of each cycle is well defined.
    """
    _check_pair(pair)
    g = pair.gq
    rep = is_great_web(g, web)
    if not rep.great:
        raise NotGreatWeb("the outside vertices lie in more than one face of the web")
    outer = set(rep.faces[rep.region].atoms)
    vs = set(web.vertices)
    df = g.dart_face
    usable = [e for e in induced_edges(g, vs)
              if not (df[(e, 0)] in outer and df[(e, 1)] in outer)]
    best = None
    for label in range(1, pair.p + 1):
        for cyc in simple_i_cycles(g, usable, label):
            regions = g.restrict(cyc.edges, cyc.vertices)
            inner = [f for f in regions if not outer & set(f.atoms)]
            if len(inner) != 1:
                raise TheoremViolation(f"i-cycle {cyc.edges} does not separate off a disk")
            key = (len(inner[0].atoms), label, cyc.edges)
            if best is None or key < best[0]:
                best = (key, cyc, tuple(sorted(inner[0].atoms)))
    if best is None:
        raise NoneFound("no i-cycle in the web's disk")
    _, cyc, inside = best
    charts = {sc.face: sc for sc in find_scharlemann_cycles(g, pair.gp)}
    if len(inside) == 1 and inside[0] in charts:
        return InnermostCycle(cyc, inside, charts[inside[0]], True)
    for a in inside:
        if a in charts:
            return InnermostCycle(cyc, inside, charts[a], False)
    raise NoneFound(f"innermost {cyc.label}-cycle {cyc.edges} bounds no Scharlemann cycle")


def innermost_scharlemann_from_web(pair: GraphPair, web: Web) -> ScharlemannCycle:
    return innermost_i_cycle(pair, web).scharlemann


# ---------------------------------------------------------------------------
# bigons


@dataclass(frozen=True)
class Bigon:
    face: int
    label: int
    edges: Tuple[int, int]


def find_bigons(g: LabelledFatGraph, label: int, web: Optional[Web] = None) -> List[Bigon]:
    """Disk faces of length two whose edges, read round the face, both have tail ``label``.

    With a web, faces of the web's own embedding are searched instead.
    """
    faces = g.faces if web is None else g.restrict(web.edges, web.vertices)
    out = []
    for f in faces:
        if not f.is_disk or f.length != 2:
            continue
        d1, d2 = f.darts
        fwd = (g.dart_label[d1], g.dart_label[d2])
        back = (g.dart_label[(d1[0], 1 - d1[1])], g.dart_label[(d2[0], 1 - d2[1])])
        if fwd == (label, label) or back == (label, label):
            out.append(Bigon(f.index, label, (d1[0], d2[0])))
    return out


@dataclass(frozen=True)
class ExtendedScharlemann:
    core: ScharlemannCycle
    flanks: Tuple[int, ...]  # bigon face across each edge of the core

    def summary(self) -> dict:
        return {"core": self.core.summary(), "flanks": list(self.flanks)}


def find_extended_scharlemann(g: LabelledFatGraph) -> List[ExtendedScharlemann]:
    """Scharlemann cycles each of whose edges is shared with a bigon face on the far side."""
    df = g.dart_face
    out = []
    for sc in find_scharlemann_cycles(g):
        flanks = []
        for e in sc.edges:
            a, b = df[(e, 0)], df[(e, 1)]
            across = b if a == sc.face else a
            f = g.faces[across]
            if across == sc.face or not f.is_disk or f.length != 2:
                break
            flanks.append(across)
        else:
            out.append(ExtendedScharlemann(sc, tuple(flanks)))
    return out
