import json
import random

import pytest

from dehn_graph import campaign
from dehn_graph.campaign import (EXIT_OK, EXIT_VIOLATION, check_instance, corpus_index, delta_one_exceptions,
                                 dumps_record, instances, load_corpus, run_campaign, run_dichotomy_campaign,
                                 verify_record)
from dehn_graph.enumerate import EnumSpec, random_pair
from dehn_graph.errors import UnsupportedFormat
from dehn_graph.export import FORMATS, export_drawing
from dehn_graph.face_rep import face_represents
from dehn_graph.gamma import build_gamma, restricted_graph
from dehn_graph.type_algebra import QType
from dehn_graph.webs import find_k_web

SPEC = EnumSpec(p=(2, 4), q=(2, 4), delta=(1, 2))


@pytest.fixture(scope="module")
def pairs():
    return list(instances(SPEC))


@pytest.fixture(scope="module")
def result(pairs):
    return run_campaign(pairs)


def test_campaign_is_clean(result):
    assert result.exit_code == EXIT_OK
    assert not result.violations and result.halted is None
    assert sum(result.counts().values()) == len(result.records) > 0
    assert set(result.counts()) <= {"FACE", "WEB", "GREAT-WEB", "SCHARLEMANN", "HYPOTHESIS-FALSE"}


def test_records_verify(pairs, result):
    assert len(pairs) == len(result.records)
    for pair, rec in zip(pairs, result.records):
        assert rec["name"] == pair.name
        assert verify_record(pair, rec)


def test_tampered_records_fail_verification():
    pair = load_corpus("great-web-p4q4d1")
    rec = check_instance(pair)
    assert verify_record(pair, rec)
    assert not verify_record(pair, dict(rec, digest="0" * len(rec["digest"])))
    # point a face witness at a face that does not represent its type
    t = next(t for t, s in rec["types"].items() if s["kind"] == "FACE")
    wrong = next(f.index for f in pair.gp.faces if not face_represents(f, QType.parse(t)))
    bad = json.loads(dumps_record(rec))
    bad["types"][t]["face"] = wrong
    assert not verify_record(pair, bad)
    bad = json.loads(dumps_record(rec))
    bad["witness"]["great_web"]["edges"] = []
    assert not verify_record(pair, bad)


def test_ledger_bytes_are_deterministic(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run_dichotomy_campaign(SPEC, ledger=str(a))
    run_dichotomy_campaign(SPEC, ledger=str(b), jobs=2)
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert all(json.loads(line)["status"] == "ok" for line in lines)


def test_random_stream_is_seeded():
    spec = EnumSpec(p=(2, 4), q=(2, 4), delta=(1, 2), seed=3)
    names = [p.digest() for p in instances(spec, random_count=6)]
    assert names == [p.digest() for p in instances(spec, random_count=6)]
    assert list(instances(EnumSpec(p=3, q=3, delta=1), random_count=4)) == []


def test_empty_stream():
    res = run_campaign([])
    assert res.records == [] and res.exit_code == EXIT_OK


def test_timings_are_optional():
    pair = load_corpus("sphere-p2q2d1-0")
    assert "seconds" not in check_instance(pair)
    assert check_instance(pair, timings=True)["seconds"] >= 0


def test_halts_on_first_violation(tmp_path, monkeypatch):
    real = campaign.check_instance

    def broken(pair, timings=False):
        rec = real(pair, timings)
        if pair.name == "sphere-p2q2d1-1":
            rec["status"], rec["alerts"] = "violation", ["forced"]
        return rec

    monkeypatch.setattr(campaign, "check_instance", broken)
    pairs = [load_corpus(n) for n in ("sphere-p2q2d1-0", "sphere-p2q2d1-1", "sphere-p2q2d2-free-0")]
    ledger = tmp_path / "run.jsonl"
    res = run_campaign(pairs, ledger=str(ledger))
    assert res.exit_code == EXIT_VIOLATION
    assert len(res.records) == 2 and res.halted["name"] == "sphere-p2q2d1-1"
    dumped = json.loads((tmp_path / "run.jsonl.violation.json").read_text())
    assert dumped["p"] == 2
    assert len(ledger.read_text().splitlines()) == 2
    assert len(run_campaign(pairs, halt=False).records) == 3


def test_hypothesis_false_is_skipped():
    rng = random.Random(11)
    while True:
        pair = random_pair(2, 4, 1, rng)
        if not pair.hypothesis_holds():
            break
    rec = check_instance(pair)
    assert rec["branch"] == "HYPOTHESIS-FALSE" and rec["status"] == "skipped"
    assert verify_record(pair, rec)


# ---------------------------------------------------------------------------
# the shipped corpus


def test_corpus_reverifies():
    names = corpus_index()
    assert len(names) >= 8
    for name in names:
        pair = load_corpus(name)
        rec = check_instance(pair)
        assert rec["status"] == "ok", name
        assert verify_record(pair, rec)


def test_corpus_exceptions_and_great_web():
    recs = [check_instance(load_corpus(n)) for n in corpus_index()]
    exc = delta_one_exceptions(campaign.CampaignResult(recs))
    assert sorted(r["name"] for r in exc) == [f"delta-one-exception-{k}" for k in range(3)]
    great = next(r for r in recs if r["name"] == "great-web-p4q4d1")
    assert great["branch"] == "SCHARLEMANN"


# ---------------------------------------------------------------------------
# drawings


def test_exports():
    pair = load_corpus("great-web-p4q4d1")
    g = pair.gq
    om = build_gamma(restricted_graph(pair.gp, range(1, pair.q + 1)), QType.parse("+-+-"))
    web = find_k_web(g, pair.p - 2, great=True)
    assert export_drawing(g).startswith("graph GQ {")
    dot = export_drawing(om)
    assert dot.startswith("digraph") and dot.count("->") == len(om.edges)
    assert "penwidth" in export_drawing(web, graph=g)
    assert "fillcolor" in export_drawing(g.faces[0], graph=g)
    for obj in (g, om, web, g.faces[0]):
        json.loads(export_drawing(obj, "json"))
    assert export_drawing(om) == export_drawing(om)
    assert FORMATS == ("dot", "json")


def test_export_errors():
    pair = load_corpus("sphere-p2q2d1-0")
    with pytest.raises(UnsupportedFormat):
        export_drawing(pair.gp, "svg")
    with pytest.raises(ValueError):
        export_drawing(pair.gp.faces[0])
    with pytest.raises(TypeError):
        export_drawing(42)
