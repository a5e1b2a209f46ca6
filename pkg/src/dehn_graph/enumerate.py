"""Exhaustive and randomized generation of valid graph pairs.

An instance is fixed by the vertex signs of both graphs, by which
occurrence of label ``j`` around P-vertex ``i`` is the same intersection
point as which occurrence of label ``i`` around Q-vertex ``j`` (the
occurrence matching), and by a perfect matching of the intersection
points into edges.  The matching search runs in the compiled kernel when
it is available.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .graph import GraphPair, build_pair

try:
    from . import _kernel as kernel
    KERNEL = "compiled"
except ImportError:  # pragma: no cover - exercised only without a compiler
    from . import _kernel_py as kernel
    KERNEL = "python"

from . import _kernel_py

MATCHINGS = ("torus", "free")


@dataclass(frozen=True)
class EnumSpec:
    """What to enumerate.

    ``matching="torus"`` uses the occurrence matching realised by two
    families of parallel curves on a torus (the geometric case);
    ``"free"`` also tries every per-pair cyclic offset, which the pair
    axioms alone allow.
    """

    p: Tuple[int, ...] = (2,)
    q: Tuple[int, ...] = (2,)
    delta: Tuple[int, ...] = (1,)
    chi_p: int = 2
    chi_q: int = 2
    separating_p: bool = False
    separating_q: bool = False
    connected: bool = True
    isomorph_rejection: bool = True
    matching: str = "torus"
    seed: Optional[int] = None

    def __post_init__(self):
        for name in ("p", "q", "delta"):
            vals = getattr(self, name)
            if isinstance(vals, int):
                object.__setattr__(self, name, (vals,))
                vals = (vals,)
            if not vals or any(int(v) < 1 for v in vals):
                raise ValueError(f"{name} values must be positive integers, got {vals}")
        for name in ("chi_p", "chi_q"):
            chi = getattr(self, name)
            if chi > 2 or chi % 2:
                raise ValueError(f"{name}={chi} is not the Euler characteristic of a closed orientable surface")
        if self.matching not in MATCHINGS:
            raise ValueError(f"matching must be one of {MATCHINGS}")

    def shapes(self) -> Iterator[Tuple[int, int, int]]:
        for p in self.p:
            for q in self.q:
                for d in self.delta:
                    yield p, q, d


# ---------------------------------------------------------------------------
# point layout


def point_index(i: int, j: int, m: int, q: int, delta: int) -> int:
    return (i * q + j) * delta + m


def layout(p: int, q: int, delta: int, sp: Sequence[int], sq: Sequence[int],
           offsets: Optional[Dict[Tuple[int, int], int]] = None):
    """Per-point vertex and anticlockwise slot arrays for both graphs.

    Point ``(i, j, m)`` (0-based) is the ``m``-th occurrence of label
    ``j+1`` around P-vertex ``i+1``; it is occurrence ``(m + offset) mod
    delta`` of label ``i+1`` around Q-vertex ``j+1``.
    """
    n = p * q * delta
    pv, pg, qv, qg, sign, mq = ([0] * n for _ in range(6))
    degp, degq = q * delta, p * delta
    for i in range(p):
        for j in range(q):
            c = offsets.get((i, j), 0) if offsets else 0
            for m in range(delta):
                x = point_index(i, j, m, q, delta)
                m2 = (m + c) % delta
                rp = m * q + j
                rq = m2 * p + i
                pv[x], qv[x] = i, j
                pg[x] = rp if sp[i] > 0 else degp - 1 - rp
                qg[x] = rq if sq[j] > 0 else degq - 1 - rq
                sign[x] = sp[i] * sq[j]
                mq[x] = m2
    return n, pv, pg, qv, qg, sign, mq


def offset_patterns(p: int, q: int, delta: int, matching: str):
    if matching == "torus" or delta == 1:
        yield {}
        return
    # offsets along the first row and column are absorbed by moving the
    # reading start at single vertices
    cells = [(i, j) for i in range(1, p) for j in range(1, q)]
    for vals in itertools.product(range(delta), repeat=len(cells)):
        yield {c: v for c, v in zip(cells, vals) if v}


# ---------------------------------------------------------------------------
# canonical forms


Point = Tuple[int, int, int, int]  # (i, j, occurrence at P, occurrence at Q)


@dataclass(frozen=True)
class Skeleton:
    """Instance data in a form the symmetry group acts on directly."""

    p: int
    q: int
    delta: int
    sp: Tuple[int, ...]
    sq: Tuple[int, ...]
    edges: Tuple[Tuple[Point, Point], ...]

    def key(self):
        return (self.sp, self.sq, self.edges)


def _norm_edges(edges) -> Tuple[Tuple[Point, Point], ...]:
    return tuple(sorted(tuple(sorted(e)) for e in edges))


def skeleton_from_partner(p, q, delta, sp, sq, mq, partner) -> Skeleton:
    def pt(x):
        ij, m = divmod(x, delta)
        i, j = divmod(ij, q)
        return (i, j, m, mq[x])

    edges = [(pt(a), pt(b)) for a, b in enumerate(partner) if a < b]
    return Skeleton(p, q, delta, tuple(sp), tuple(sq), _norm_edges(edges))


def _transform(sk: Skeleton, shift_p: int, shift_q: int, flip_p: int, flip_q: int,
               gauge_p: Sequence[int], gauge_q: Sequence[int]) -> Skeleton:
    p, q, d = sk.p, sk.q, sk.delta

    def move(pt):
        i, j, mp, mq = pt
        # relabelling P vertices cyclically moves the label-1 slot at every
        # Q-vertex; up to a uniform restart, occurrences of the labels that
        # wrap past p advance by one (and symmetrically for Q)
        i2 = (i + shift_p) % p
        mq = (mq + (i + shift_p) // p) % d
        j2 = (j + shift_q) % q
        mp = (mp + (j + shift_q) // q) % d
        return (i2, j2, (mp + gauge_p[i2]) % d, (mq + gauge_q[j2]) % d)

    sp = [0] * p
    for i in range(p):
        sp[(i + shift_p) % p] = -sk.sp[i] if flip_p else sk.sp[i]
    sq = [0] * q
    for j in range(q):
        sq[(j + shift_q) % q] = -sk.sq[j] if flip_q else sk.sq[j]
    edges = _norm_edges((move(a), move(b)) for a, b in sk.edges)
    return Skeleton(p, q, d, tuple(sp), tuple(sq), edges)


def group_elements(p: int, q: int, delta: int):
    gauges_p = list(itertools.product(range(delta), repeat=p))
    gauges_q = list(itertools.product(range(delta), repeat=q))
    for sp_ in range(p):
        for sq_ in range(q):
            for fp in (0, 1):
                for fq in (0, 1):
                    for gp in gauges_p:
                        for gq in gauges_q:
                            yield sp_, sq_, fp, fq, gp, gq


def canonical(sk: Skeleton) -> Skeleton:
    """Lexicographically least image of ``sk`` under the symmetry group."""
    best = None
    for g in group_elements(sk.p, sk.q, sk.delta):
        img = _transform(sk, *g)
        if best is None or img.key() < best.key():
            best = img
    return best


def canonical_sign_vectors(n: int) -> List[Tuple[int, ...]]:
    """Sign vectors that are least in their orbit under rotation and global flip."""
    out = []
    for s in itertools.product((-1, 1), repeat=n):
        orbit = []
        for k in range(n):
            r = s[-k:] + s[:-k] if k else s
            orbit.append(r)
            orbit.append(tuple(-x for x in r))
        if s == min(orbit):
            out.append(s)
    return out


# ---------------------------------------------------------------------------
# building pairs


def skeleton_to_raw(sk: Skeleton, chi_p: int = 2, chi_q: int = 2,
                    separating_p: bool = False, separating_q: bool = False) -> dict:
    p, q, d = sk.p, sk.q, sk.delta
    pslots: Dict[Tuple[int, int], dict] = {}
    qslots: Dict[Tuple[int, int], dict] = {}
    for e, pair in enumerate(sk.edges, start=1):
        for end, (i, j, mp, mq) in enumerate(pair):
            pslots[(i, mp * q + j)] = {"edge": e, "end": end, "label": j + 1}
            qslots[(j, mq * p + i)] = {"edge": e, "end": end, "label": i + 1}
    gp = [{"id": i + 1, "sign": "+" if sk.sp[i] > 0 else "-",
           "rotation": [pslots[(i, k)] for k in range(q * d)]} for i in range(p)]
    gq = [{"id": j + 1, "sign": "+" if sk.sq[j] > 0 else "-",
           "rotation": [qslots[(j, k)] for k in range(p * d)]} for j in range(q)]
    return {
        "delta": d, "p": p, "q": q,
        "gp": {"vertices": gp}, "gq": {"vertices": gq},
        "flags": {"separating_p": separating_p, "separating_q": separating_q,
                  "chi_p": chi_p, "chi_q": chi_q},
    }


def skeleton_from_pair(pair: GraphPair) -> Skeleton:
    """Recover the skeleton of a pair built from reading-order rotations."""
    p, q, d = pair.p, pair.q, pair.delta
    where: Dict[Tuple[int, int], list] = {}
    for v in pair.gp.vertices:
        for k, s in enumerate(v.rotation):
            where.setdefault(s.dart, [None, None, None, None])
            rec = where[s.dart]
            rec[0], rec[1], rec[2] = v.id - 1, s.label - 1, k // q
    for v in pair.gq.vertices:
        for k, s in enumerate(v.rotation):
            where[s.dart][3] = k // p
    edges = {}
    for (e, end), rec in where.items():
        edges.setdefault(e, [None, None])[end] = tuple(rec)
    sp = tuple(v.sign for v in pair.gp.vertices)
    sq = tuple(v.sign for v in pair.gq.vertices)
    return Skeleton(p, q, d, sp, sq, _norm_edges(tuple(v) for v in edges.values()))


def _budget(chi: int) -> int:
    return (2 - chi) // 2


def _search(mod, n, pv, pg, qv, qg, sign, p, q, d, spec, limit=-1):
    return mod.search(n, pv, pg, qv, qg, sign, p, q, q * d, p * d,
                      _budget(spec.chi_p), _budget(spec.chi_q), spec.connected, limit)


def _sign_choices(count: int, separating: bool, reject: bool):
    if separating:
        alt = tuple(1 if k % 2 == 0 else -1 for k in range(count))
        return [alt] if count % 2 == 0 else []
    if reject:
        return canonical_sign_vectors(count)
    return list(itertools.product((1, -1), repeat=count))


def enumerate_skeletons(spec: EnumSpec, p: int, q: int, delta: int,
                        pure_python: bool = False) -> List[Skeleton]:
    mod = _kernel_py if pure_python else kernel
    if (p * q * delta) % 2:
        return []
    out: List[Skeleton] = []
    seen = set()
    for sp in _sign_choices(p, spec.separating_p, spec.isomorph_rejection):
        for sq in _sign_choices(q, spec.separating_q, spec.isomorph_rejection):
            for offsets in offset_patterns(p, q, delta, spec.matching):
                n, pv, pg, qv, qg, sign, mq = layout(p, q, delta, sp, sq, offsets)
                for partner in _search(mod, n, pv, pg, qv, qg, sign, p, q, delta, spec):
                    sk = skeleton_from_partner(p, q, delta, sp, sq, mq, partner)
                    if spec.isomorph_rejection:
                        sk = canonical(sk)
                        if sk.key() in seen:
                            continue
                        seen.add(sk.key())
                    out.append(sk)
    if spec.isomorph_rejection:
        out.sort(key=Skeleton.key)
    return out


def enumerate_pairs(spec: EnumSpec, pure_python: bool = False) -> Iterator[GraphPair]:
    """Every valid pair described by ``spec``, validated by ``build_pair``.

    With isomorph rejection exactly one representative (the canonical
    form) is produced per class under cyclic relabelling of either
    vertex set, sign flips of either graph, and the choice of reading
    start at each vertex.
    """
    for p, q, d in spec.shapes():
        for k, sk in enumerate(enumerate_skeletons(spec, p, q, d, pure_python)):
            raw = skeleton_to_raw(sk, spec.chi_p, spec.chi_q, spec.separating_p, spec.separating_q)
            yield build_pair(raw, name=f"p{p}q{q}d{d}-{spec.matching}-{k}")


def count_pairs(spec: EnumSpec, pure_python: bool = False) -> int:
    return sum(len(enumerate_skeletons(spec, p, q, d, pure_python)) for p, q, d in spec.shapes())


# ---------------------------------------------------------------------------
# randomized instances


def random_pair(p: int, q: int, delta: int, rng: random.Random, matching: str = "torus",
                tries: int = 1000) -> GraphPair:
    """A random valid pair on whatever surfaces its rotation systems define.

    The matching of points into edges is uniform among parity-respecting
    ones; draws with a trivial loop or a disconnected graph are rejected.
    """
    if (p * q * delta) % 2:
        raise ValueError("p*q*delta must be even")
    for _ in range(tries):
        sp = [rng.choice((1, -1)) for _ in range(p)]
        sq = [rng.choice((1, -1)) for _ in range(q)]
        offsets = {}
        if matching == "free" and delta > 1:
            offsets = {(i, j): rng.randrange(delta) for i in range(p) for j in range(q)}
        n, pv, pg, qv, qg, sign, mq = layout(p, q, delta, sp, sq, offsets)
        pos = [x for x in range(n) if sign[x] > 0]
        neg = [x for x in range(n) if sign[x] < 0]
        if len(pos) != len(neg):
            continue
        rng.shuffle(neg)
        partner = [-1] * n
        for a, b in zip(pos, neg):
            partner[a], partner[b] = b, a
        sk = skeleton_from_partner(p, q, delta, sp, sq, mq, partner)
        chis = _derived_chis(sk)
        if chis is None:
            continue
        raw = skeleton_to_raw(sk, *chis)
        try:
            return build_pair(raw, name=f"random-p{p}q{q}d{delta}")
        except ValueError:
            continue
    raise RuntimeError("no valid random pair found")


def _derived_chis(sk: Skeleton) -> Optional[Tuple[int, int]]:
    """Euler characteristics of the surfaces the two rotation systems span.

    Returns ``None`` if either graph is disconnected.
    """
    raw = skeleton_to_raw(sk)
    from .graph import FatVertex, LabelledFatGraph, Slot, SIGN_OF
    out = []
    for key, companion in (("gp", sk.q), ("gq", sk.p)):
        verts = [FatVertex(v["id"], SIGN_OF[v["sign"]],
                           tuple(Slot(s["edge"], s["end"], s["label"]) for s in v["rotation"]))
                 for v in raw[key]["vertices"]]
        g = LabelledFatGraph(key[1].upper(), verts, companion, sk.delta, 2)
        if len(g.components) != 1:
            return None
        out.append(len(g.vertices) - len(g.edges) + len(g.walks))
    return out[0], out[1]
