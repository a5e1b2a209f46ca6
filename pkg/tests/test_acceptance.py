"""Acceptance checks, one per criterion.

Each test prints a single ``criterion N: PASS|FAIL ...`` line (shown with
``pytest -s`` or when run as a script) and asserts the same outcome.
"""

import itertools
import random
import sys
import time

import pytest

from dehn_graph.campaign import (check_instance, corpus_index, dumps_record, instances, load_corpus,
                                 run_campaign, verify_record)
from dehn_graph.enumerate import EnumSpec, enumerate_pairs, random_pair
from dehn_graph.face_rep import face_represents, graph_represents_all_types
from dehn_graph.face_rep import CornerWord
from dehn_graph.gamma import (build_gamma, resolve_all, restricted_graph, sinks_sources,
                              verify_glass, verify_witness)
from dehn_graph.homology import h1_invariants, presentation
from dehn_graph.type_algebra import (QType, cokernel, is_minimal_all_types, represents_all_types,
                                     smith_normal_form, survey_torsion, types_represented)
from dehn_graph.webs import (find_k_web, find_scharlemann_cycles, innermost_scharlemann_from_web,
                             is_great_web, scharlemann_of)

# every enumerated sphere pair with p, q <= 4 and delta <= 2; the torus
# matching has no delta-2 sphere pairs at this size, so the free matching
# supplies them
SPHERES = [EnumSpec(p=(1, 2, 3, 4), q=(1, 2, 3, 4), delta=(1, 2)),
           EnumSpec(p=(1, 2, 3), q=(1, 2, 3), delta=2, matching="free")]


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    sys.stdout.flush()
    return ok


@pytest.fixture(scope="module")
def spheres():
    return [pr for spec in SPHERES for pr in enumerate_pairs(spec)]


def test_criterion_1_worked_examples():
    t0 = time.perf_counter()
    checks = []
    checks.append({str(t) for t in types_represented((1, 0, -2))} == {"++-", "+--"})
    checks.append(represents_all_types([(1, 0, 1), (-1, 1, 0), (1, 1, -1)]))
    for q in range(1, 6):
        for pos in range(q):
            for k in (-3, -2, 2, 3):
                a = [0] * q
                a[pos] = k
                checks.append(represents_all_types([a]))
    A = [(1, 2, 1), (-1, 1, 1), (1, -1, 2), (1, 1, -1)]
    checks.append(is_minimal_all_types(A))
    checks.append(smith_normal_form(A, 3).factors == (1, 1, 1) and cokernel(A, 3).is_trivial)
    dt = time.perf_counter() - t0
    ok = all(checks) and dt < 1.0
    assert report(1, ok, f"{sum(checks)}/{len(checks)} example checks exact, {dt:.3f}s")


def test_criterion_2_torsion_survey():
    t0 = time.perf_counter()
    results = [survey_torsion(q, 2) for q in (1, 2, 3)]
    ok = all(s.ok for s in results)
    detail = ", ".join(f"q={s.q}: {s.with_torsion}/{s.orbits} orbits" for s in results)
    assert report(2, ok, f"{detail}, {time.perf_counter() - t0:.1f}s")


def test_criterion_3_index_sum_identity(spheres):
    rng = random.Random(2026)
    shapes = [(2, 2, 1), (2, 3, 2), (3, 4, 2), (4, 4, 1), (2, 4, 3), (4, 2, 2), (3, 2, 2), (5, 4, 1), (6, 2, 1)]
    randomized = built = bad = 0
    for k in range(1000):
        p, q, d = shapes[k % len(shapes)]
        pair = random_pair(p, q, d, rng, matching=("torus", "free")[k % 2])
        randomized += 1
        labelsets = [tuple(range(1, q + 1)), tuple(sorted(rng.sample(range(1, q + 1), rng.randint(1, q))))]
        for L in labelsets:
            rg = restricted_graph(pair.gp, L)
            for signs in itertools.product((1, -1), repeat=len(L)):
                built += 1
                bad += not verify_glass(build_gamma(rg, QType(signs, L)))
    for pair in spheres:
        for r in range(1, pair.q + 1):
            for L in itertools.combinations(range(1, pair.q + 1), r):
                rg = restricted_graph(pair.gp, L)
                for signs in itertools.product((1, -1), repeat=r):
                    built += 1
                    bad += not verify_glass(build_gamma(rg, QType(signs, L)))
    ok = bad == 0 and randomized >= 1000
    assert report(3, ok, f"{built} angle graphs ({randomized} random instances), {bad} violations")


def test_criterion_4_sinks_and_sources(spheres):
    pairs = checked = bad = 0
    for pair in spheres:
        if pair.q > 4:
            continue
        pairs += 1
        for r in range(1, pair.q + 1):
            for L in itertools.combinations(range(1, pair.q + 1), r):
                rg = restricted_graph(pair.gp, L)
                for signs in itertools.product((1, -1), repeat=r):
                    tau = QType(signs, L)
                    ss = set(sinks_sources(build_gamma(rg, tau)))
                    for f in rg.faces:
                        if not f.is_disk or len(f.corners) < 2:
                            continue
                        checked += 1
                        bad += (f.index in ss) != face_represents(f, tau)
    ok = bad == 0 and checked > 0
    assert report(4, ok, f"{checked} (face, type) pairs on {pairs} instances, {bad} disagreements")


def test_criterion_5_scharlemann_homology():
    t0 = time.perf_counter()
    got = {}
    for k in (2, 3, 4, 5):
        inv = h1_invariants(presentation([CornerWord(((1, 1),) * k, 3)]))
        got[k] = (inv.free_rank, inv.torsion)
    ok = all(got[k] == (0, (k,)) for k in got) and time.perf_counter() - t0 < 1.0
    assert report(5, ok, "H1 = " + ", ".join(f"Z/{k}" if v == (0, (k,)) else f"? {v}" for k, v in got.items()))


def _dichotomy(spheres):
    rows = []
    for pair in spheres:
        if not pair.hypothesis_holds():
            continue
        res = resolve_all(pair)
        verified = all(verify_witness(pair, w) for w in res.values())
        rows.append((pair, res, verified))
    return rows


@pytest.fixture(scope="module")
def dichotomy(spheres):
    t0 = time.perf_counter()
    rows = _dichotomy(spheres)
    return rows, time.perf_counter() - t0


def test_criterion_6_dichotomy(dichotomy):
    rows, dt = dichotomy
    types = sum(len(res) for _, res, _ in rows)
    unverified = sum(not v for _, _, v in rows)
    complete = all(len(res) == 2 ** (pair.q - 1) for pair, res, _ in rows)
    ok = unverified == 0 and complete and dt < 600
    assert report(6, ok, f"{len(rows)} instances, {types} types resolved, "
                         f"{unverified} unverified, {dt:.1f}s")


def test_criterion_7_great_webs(dichotomy):
    rows, _ = dichotomy
    missing = extracted = 0
    for pair, res, _ in rows:
        if graph_represents_all_types(pair.gp).ok:
            continue
        missing += 1
        web = find_k_web(pair.gq, pair.p - 2, great=True)
        if web is None or not is_great_web(pair, web).great:
            continue
        sc = innermost_scharlemann_from_web(pair, web)
        if scharlemann_of(pair.gq, pair.gq.faces[sc.face]) == sc:
            extracted += 1
    delta_two = [pair for pair, _, _ in rows if pair.delta == 2]
    with_cycle = sum(bool(find_scharlemann_cycles(pr.gp) or find_scharlemann_cycles(pr.gq)) for pr in delta_two)
    ok = extracted == missing and with_cycle == len(delta_two) and len(delta_two) > 0
    assert report(7, ok, f"{extracted}/{missing} type-missing instances give a Scharlemann cycle; "
                         f"{with_cycle}/{len(delta_two)} delta-2 instances have one")


def test_criterion_8_delta_one_counterexamples():
    res = run_campaign(instances(EnumSpec(p=(2, 3, 4), q=(2, 3, 4), delta=1)))
    found = [r["name"] for r in res.records if r.get("delta_one_exception")]
    shipped = [n for n in corpus_index() if n.startswith("delta-one-exception")]
    reverified = 0
    for name in shipped:
        pair = load_corpus(name)
        rec = check_instance(pair)
        if (rec["delta_one_exception"] and verify_record(pair, rec) and pair.delta == 1
                and not find_scharlemann_cycles(pair.gp) and not find_scharlemann_cycles(pair.gq)
                and graph_represents_all_types(pair.gp).ok):
            reverified += 1
    ok = len(found) >= 1 and shipped and reverified == len(shipped)
    assert report(8, ok, f"{len(found)} found by the campaign, {reverified}/{len(shipped)} shipped re-verify")


def test_criterion_9_determinism(tmp_path):
    spec = EnumSpec(p=(2, 4), q=(2, 4), delta=(1, 2), seed=17, matching="free")
    paths = []
    for k in range(2):
        path = tmp_path / f"run{k}.jsonl"
        run_campaign(instances(spec, random_count=40), ledger=str(path))
        paths.append(path)
    same = paths[0].read_bytes() == paths[1].read_bytes()
    pairs = list(instances(spec, random_count=40))
    recs = [check_instance(pr) for pr in pairs]
    good = sum(verify_record(pr, r) for pr, r in zip(pairs, recs))
    stable = all(dumps_record(r) == dumps_record(check_instance(pr)) for pr, r in zip(pairs[:10], recs))
    ok = same and stable and good == len(recs)
    assert report(9, ok, f"ledgers byte-identical: {same}; {good}/{len(recs)} records re-verify")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
