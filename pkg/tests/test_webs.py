import random

import pytest

from dehn_graph.campaign import load_corpus
from dehn_graph.enumerate import EnumSpec, enumerate_pairs, random_pair
from dehn_graph.errors import HypothesisViolated, NotConnected, NotGreatWeb, NotSphere, TheoremViolation
from dehn_graph.face_rep import face_represents, graph_represents_all_types
from dehn_graph.graph import FatVertex, GraphPair, LabelledFatGraph, Slot
from dehn_graph.type_algebra import all_types
from dehn_graph.webs import (Web, cycles_by_interval, deficiency, distinct_interval_pairs, edge_components,
                             find_bigons, find_extended_scharlemann, find_i_cycle, find_k_web,
                             find_scharlemann_cycles, great_web_report, induced_edges,
                             innermost_i_cycle, innermost_scharlemann_from_web, is_great_web, is_k_web,
                             make_web, scharlemann_of, simple_i_cycles)

from oracles import great_web_oracle


@pytest.fixture(scope="module")
def spheres():
    out = list(enumerate_pairs(EnumSpec(p=(2, 3, 4), q=(2, 3, 4), delta=(1, 2))))
    out += list(enumerate_pairs(EnumSpec(p=(2, 3), q=(2, 3), delta=2, matching="free")))
    return out


@pytest.fixture(scope="module")
def missing_type(spheres):
    """Sphere pairs whose G_P misses a type."""
    return [pr for pr in spheres if pr.hypothesis_holds() and not graph_represents_all_types(pr.gp).ok]


def bipyramid():
    """A triangle 1-2-3 with vertex 4 inside and vertex 5 outside, all cones drawn."""
    ends = [(1, 2), (2, 3), (3, 1), (4, 1), (4, 2), (4, 3), (5, 1), (5, 2), (5, 3)]

    def slot(v, w):
        for e, (x, y) in enumerate(ends, start=1):
            if (x, y) == (v, w):
                return Slot(e, 0, 1)
            if (y, x) == (v, w):
                return Slot(e, 1, 1)

    rot = {1: [5, 2, 4, 3], 2: [3, 4, 1, 5], 3: [1, 4, 2, 5], 4: [1, 2, 3], 5: [3, 2, 1]}
    return LabelledFatGraph("Q", [FatVertex(v, 1, tuple(slot(v, w) for w in rot[v])) for v in rot], 1, 1, 2)


def bigon_graph(sign_a=1, sign_b=1):
    a = FatVertex(1, sign_a, (Slot(1, 0, 1), Slot(2, 0, 2)))
    b = FatVertex(2, sign_b, (Slot(2, 1, 1), Slot(1, 1, 2)))
    return LabelledFatGraph("Q", [a, b], 2, 1, 2)


# ---------------------------------------------------------------------------
# Scharlemann cycles


def test_constructed_bigon_scharlemann_cycle():
    g = LabelledFatGraph("Q", [FatVertex(1, 1, (Slot(1, 0, 1), Slot(2, 0, 2))),
                               FatVertex(2, 1, (Slot(1, 1, 2), Slot(2, 1, 1)))], 2, 1, 2)
    cycles = find_scharlemann_cycles(g)
    # both faces are bigons, one on each interval
    assert [c.length for c in cycles] == [2, 2]
    assert {c.sign for c in cycles} == {1}
    assert sorted(c.interval for c in cycles) == [(1, 2), (2, 1)]


def test_mixed_corner_face_is_not_scharlemann():
    g = bigon_graph()
    for f in g.faces:
        if len({c.interval for c in f.corners}) > 1:
            assert scharlemann_of(g, f) is None


def test_scharlemann_cycles_are_consistent(spheres):
    found = 0
    for pair in spheres:
        for g, other in ((pair.gp, pair.gq), (pair.gq, pair.gp)):
            for sc in find_scharlemann_cycles(g, other):
                f = g.faces[sc.face]
                assert {c.interval for c in f.corners} == {sc.interval[0]}
                assert {c.sign for c in f.corners} == {sc.sign}
                assert other.sign(sc.interval[0]) != other.sign(sc.interval[1])
                assert all(face_represents(f, t) for t in all_types(g.companion)) or sc.length == 1
                found += 1
    assert found > 0


def test_companion_sign_check_fires():
    g = LabelledFatGraph("Q", [FatVertex(1, 1, (Slot(1, 0, 1), Slot(2, 0, 2))),
                               FatVertex(2, 1, (Slot(1, 1, 2), Slot(2, 1, 1)))], 2, 1, 2)
    same = LabelledFatGraph("P", [FatVertex(1, 1, ()), FatVertex(2, 1, ())], 0, 1, 2)
    with pytest.raises(TheoremViolation):
        find_scharlemann_cycles(g, same)


def test_distinct_interval_pairs(spheres):
    for pair in spheres:
        cycles = find_scharlemann_cycles(pair.gq)
        groups = cycles_by_interval(cycles, 2)
        pairs = distinct_interval_pairs(cycles)
        assert len(pairs) == len(groups) * (len(groups) - 1) // 2
        for a, b in pairs:
            assert a.interval != b.interval and a.length == b.length == 2


# ---------------------------------------------------------------------------
# webs


def test_deficiency_identity(spheres):
    for pair in spheres:
        g = pair.gq
        for sign in (1, -1):
            vs = [v for v in g.ids if g.sign(v) == sign]
            es = induced_edges(g, vs)
            assert deficiency(g, vs, es) == len(vs) * pair.p * pair.delta - 2 * len(es)


def test_single_vertex_web_boundary():
    pair = load_corpus("sphere-p2q2d1-0")
    g = pair.gq
    qd = pair.p * pair.delta
    assert deficiency(g, [1], []) == qd
    assert is_k_web(g, [1], [], qd)
    assert not is_k_web(g, [1], [], qd - 1)


def test_mixed_sign_is_never_a_web():
    pair = load_corpus("sphere-p2q2d1-0")
    g = pair.gq
    mixed = [v for v in g.ids]
    assert len({g.sign(v) for v in mixed}) == 2
    assert not is_k_web(g, mixed, g.edges, 10 ** 6)
    assert make_web(g, mixed, g.edges, 10 ** 6) is None


def test_web_rejects_dangling_edges_and_bad_input():
    pair = load_corpus("sphere-p2q2d1-0")
    g = pair.gq
    e = g.edges[0]
    one = g.ends(e)[0]
    assert not is_k_web(g, [one], [e], 10) or set(g.ends(e)) == {one}
    assert not is_k_web(g, [], [], 10)
    assert not is_k_web(g, [99], [], 10)


def test_edge_components_order(spheres):
    for pair in spheres[:20]:
        g = pair.gq
        comps = edge_components(g, g.edges)
        lows = [c[0][0] for c in comps]
        assert lows == sorted(lows)
        assert sorted(e for _, es in comps for e in es) == sorted(g.edges)


def test_found_webs_qualify(spheres):
    for pair in spheres:
        k = pair.p - 2
        w = find_k_web(pair.gq, k)
        if w is not None:
            assert is_k_web(pair.gq, w.vertices, w.edges, k, connected=True)
            assert w.deficiency == deficiency(pair.gq, w.vertices, w.edges)


def test_great_web_matches_region_oracle(spheres):
    rng = random.Random(3)
    checked = 0
    for pair in spheres:
        g = pair.gq
        for sign in (1, -1):
            pool = [v for v in g.ids if g.sign(v) == sign]
            for _ in range(4):
                vs = rng.sample(pool, rng.randint(1, len(pool))) if pool else []
                es = [e for e in induced_edges(g, vs) if rng.random() < 0.7]
                if not vs or len(edge_components(g, es, vs)) != 1:
                    continue
                assert great_web_report(g, vs, es).great == great_web_oracle(g, vs, es)
                checked += 1
    assert checked > 50


def test_separating_triangle_is_not_great():
    g = bipyramid()
    assert g.euler_characteristic() == 2
    rep = great_web_report(g, (1, 2, 3), (1, 2, 3))
    assert not rep.great and rep.located[4] != rep.located[5]
    assert not great_web_oracle(g, (1, 2, 3), (1, 2, 3))
    # opening one side of the triangle joins the two regions
    assert great_web_report(g, (1, 2, 3), (1, 2)).great
    assert great_web_oracle(g, (1, 2, 3), (1, 2))


def test_whole_graph_is_vacuously_great():
    pair = load_corpus("great-web-p4q4d1")
    g = pair.gq
    rep = great_web_report(g, g.ids, g.edges)
    assert rep.great and not rep.located


def test_great_web_errors():
    pair = load_corpus("sphere-p2q2d1-0")
    g = pair.gq
    with pytest.raises(NotConnected):
        great_web_report(g, g.ids, [])
    rng = random.Random(2)
    while True:
        other = random_pair(2, 4, 2, rng)
        if other.chi_q != 2:
            break
    with pytest.raises(NotSphere):
        great_web_report(other.gq, other.gq.ids[:1], [])


# ---------------------------------------------------------------------------
# i-cycles and the innermost Scharlemann cycle


def test_single_vertex_has_no_i_cycle():
    pair = load_corpus("sphere-p2q2d1-0")
    for i in range(1, pair.p + 1):
        assert find_i_cycle(pair.gq, [], i) is None
        assert simple_i_cycles(pair.gq, [], i) == []


def test_great_webs_yield_scharlemann_cycles(missing_type):
    spheres_only = [pr for pr in missing_type if pr.chi_p == 2 and pr.chi_q == 2]
    assert spheres_only
    for pair in spheres_only:
        w = find_k_web(pair.gq, pair.p - 2, great=True)
        assert w is not None, pair.name
        assert is_great_web(pair, w).great
        labels = [i for i in range(1, pair.p + 1) if find_i_cycle(pair.gq, w.edges, i) is not None]
        assert len(labels) >= 2
        for i in labels:
            cyc = find_i_cycle(pair.gq, w.edges, i)
            for e, v in zip(cyc.edges, cyc.vertices):
                ends, labs = pair.gq.ends(e), pair.gq.end_labels(e)
                assert labs[ends.index(v)] == i
        inner = innermost_i_cycle(pair, w)
        sc = inner.scharlemann
        assert sc.face in inner.inside
        assert scharlemann_of(pair.gq, pair.gq.faces[sc.face]) == sc
        assert innermost_scharlemann_from_web(pair, w) == sc


def test_corpus_great_web():
    pair = load_corpus("great-web-p4q4d1")
    assert not graph_represents_all_types(pair.gp).ok
    w = find_k_web(pair.gq, pair.p - 2, great=True)
    inner = innermost_i_cycle(pair, w)
    assert inner.cycle_is_face
    assert inner.inside == (inner.scharlemann.face,)


def test_innermost_needs_a_great_web():
    pair = load_corpus("sphere-p2q2d1-0")
    fake = GraphPair(pair.gp, bipyramid(), pair.delta, pair.p, pair.q)
    with pytest.raises(NotGreatWeb):
        innermost_i_cycle(fake, Web((1, 2, 3), (1, 2, 3), 6, 1))


def test_innermost_checks_the_hypothesis():
    rng = random.Random(11)
    while True:
        pair = random_pair(2, 4, 1, rng)
        if pair.chi_p <= 0 and pair.chi_q == 2:
            break
    g = pair.gq
    with pytest.raises(HypothesisViolated):
        innermost_i_cycle(pair, Web(g.ids[:1], (), deficiency(g, g.ids[:1], ()), g.sign(g.ids[0])))


# ---------------------------------------------------------------------------
# bigons and extended Scharlemann cycles


def test_bigons_read_the_tail_label(spheres):
    for pair in spheres:
        g = pair.gq
        for i in range(1, pair.p + 1):
            for b in find_bigons(g, i):
                f = g.faces[b.face]
                assert f.length == 2 and f.is_disk
                fwd = [g.dart_label[d] for d in f.darts]
                back = [g.dart_label[(d[0], 1 - d[1])] for d in f.darts]
                assert fwd == [i, i] or back == [i, i]


def test_scharlemann_bigons_appear_in_both_detectors(spheres):
    seen = 0
    for pair in spheres:
        g = pair.gq
        bigons = {(b.face, b.label) for i in range(1, pair.p + 1) for b in find_bigons(g, i)}
        for sc in find_scharlemann_cycles(g):
            if sc.length == 2:
                tails = {lab for lab in sc.interval}
                assert any((sc.face, lab) in bigons for lab in tails)
                seen += 1
    assert seen > 0


def test_extended_cycles_are_flanked(spheres):
    for pair in spheres:
        g = pair.gq
        for ext in find_extended_scharlemann(g):
            assert len(ext.flanks) == len(ext.core.edges)
            for e, fl in zip(ext.core.edges, ext.flanks):
                f = g.faces[fl]
                assert f.length == 2 and e in f.edges and fl != ext.core.face


def test_without_scharlemann_cycles_nothing_is_extended():
    pair = load_corpus("delta-one-exception-0")
    for g in (pair.gp, pair.gq):
        assert find_scharlemann_cycles(g) == []
        assert find_extended_scharlemann(g) == []


def test_graph_without_bigons_has_none():
    g = bipyramid()
    assert all(f.length == 3 for f in g.faces)
    assert find_bigons(g, 1) == [] and find_extended_scharlemann(g) == []
