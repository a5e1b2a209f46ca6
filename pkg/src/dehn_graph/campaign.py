"""Verification campaigns over instance streams.

Each instance gets one JSON record naming the deepest branch reached:

* ``FACE``: G_P represents every type;
* ``WEB``: some type resolved to a web in G_Q;
* ``GREAT-WEB``: on spheres, a great (p-2)-web was found;
* ``SCHARLEMANN``: the innermost i-cycle of that web gave a Scharlemann cycle.

Records carry witnesses that ``verify_record`` re-checks from scratch.
"""

from __future__ import annotations

import json
import multiprocessing
import random
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, Iterable, Iterator, List, Optional

from .enumerate import EnumSpec, enumerate_pairs, random_pair
from .errors import NoneFound, TheoremViolation
from .face_rep import face_represents, graph_represents_all_types
from .gamma import FaceWitness, resolve_all
from .graph import GraphPair, build_pair
from .type_algebra import QType
from . import webs

EXIT_OK, EXIT_INVALID, EXIT_VIOLATION = 0, 1, 2


def _sphere_pair(pair: GraphPair) -> bool:
    return pair.chi_p == 2 and pair.chi_q == 2


def check_instance(pair: GraphPair, timings: bool = False) -> dict:
    t0 = time.perf_counter()
    rec: Dict[str, object] = {
        "name": pair.name, "digest": pair.digest(), "p": pair.p, "q": pair.q,
        "delta": pair.delta, "chi_p": pair.chi_p, "chi_q": pair.chi_q,
        "hypothesis": pair.hypothesis_holds(), "alerts": [],
    }
    alerts: List[str] = rec["alerts"]
    if not pair.hypothesis_holds():
        rec["branch"] = "HYPOTHESIS-FALSE"
        rec["status"] = "skipped"
        return rec
    at = graph_represents_all_types(pair.gp)
    rec["all_types"] = at.ok
    try:
        resolved = resolve_all(pair)
    except (TheoremViolation, NoneFound) as exc:
        alerts.append(f"resolve: {exc}")
        resolved = {}
    rec["types"] = {t: w.summary() for t, w in resolved.items()}
    faces_only = all(isinstance(w, FaceWitness) for w in resolved.values())
    if resolved and faces_only != at.ok:
        alerts.append("face witnesses disagree with the all-types check")
    if at.ok:
        rec["branch"] = "FACE"
        rec["witness"] = {"faces": at.witness}
    else:
        rec["branch"] = "WEB"
        web_w = next((w for w in resolved.values() if not isinstance(w, FaceWitness)), None)
        rec["witness"] = {"web": web_w.web.summary() if web_w else None}
        if web_w is None:
            alerts.append("G_P misses a type but no type resolved to a web")
        if _sphere_pair(pair):
            great = webs.find_k_web(pair.gq, pair.p - 2, great=True)
            if great is None:
                alerts.append("no great (p-2)-web in G_Q")
            else:
                rec["branch"] = "GREAT-WEB"
                rec["witness"]["great_web"] = great.summary()
                try:
                    inner = webs.innermost_i_cycle(pair, great)
                    rec["branch"] = "SCHARLEMANN"
                    rec["witness"]["scharlemann"] = inner.scharlemann.summary()
                    rec["witness"]["i_cycle"] = {"label": inner.cycle.label,
                                                 "edges": list(inner.cycle.edges),
                                                 "is_face": inner.cycle_is_face}
                except (NoneFound, TheoremViolation) as exc:
                    alerts.append(f"innermost cycle: {exc}")
    if _sphere_pair(pair):
        sp = webs.find_scharlemann_cycles(pair.gp, pair.gq)
        sq = webs.find_scharlemann_cycles(pair.gq, pair.gp)
        rec["scharlemann_p"] = [c.face for c in sp]
        rec["scharlemann_q"] = [c.face for c in sq]
        if pair.delta >= 2 and not sp and not sq:
            alerts.append("delta >= 2 but neither graph has a Scharlemann cycle")
        rec["delta_one_exception"] = pair.delta == 1 and at.ok and not sp and not sq
    rec["status"] = "violation" if alerts else "ok"
    if timings:
        rec["seconds"] = round(time.perf_counter() - t0, 6)
    return rec


def verify_record(pair: GraphPair, rec: dict) -> bool:
    """Re-check every witness stored in a record against the instance."""
    if rec.get("digest") != pair.digest():
        return False
    if rec.get("status") == "skipped":
        return not pair.hypothesis_holds()
    gp, gq = pair.gp, pair.gq
    for t, summ in rec.get("types", {}).items():
        tau = QType.parse(t)
        if summ["kind"] == "FACE":
            if not face_represents(gp.faces[summ["face"]], tau):
                return False
        elif not webs.is_k_web(gq, summ["vertices"], summ["edges"], pair.web_bound):
            return False
    wit = rec.get("witness", {})
    for t, idx in wit.get("faces", {}).items():
        if not face_represents(gp.faces[idx], QType.parse(t)):
            return False
    if wit.get("web") and not webs.is_k_web(gq, wit["web"]["vertices"], wit["web"]["edges"], pair.web_bound):
        return False
    gw = wit.get("great_web")
    if gw:
        if not webs.is_k_web(gq, gw["vertices"], gw["edges"], pair.p - 2):
            return False
        if not webs.great_web_report(gq, gw["vertices"], gw["edges"]).great:
            return False
    sc = wit.get("scharlemann")
    if sc and webs.scharlemann_of(gq, gq.faces[sc["face"]]) is None:
        return False
    for key, g in (("scharlemann_p", gp), ("scharlemann_q", gq)):
        if any(webs.scharlemann_of(g, g.faces[k]) is None for k in rec.get(key, [])):
            return False
    return True


# ---------------------------------------------------------------------------
# instance streams and the runner


def instances(spec: EnumSpec, random_count: int = 0) -> Iterator[GraphPair]:
    """Enumerated pairs, or ``random_count`` random ones drawn with ``spec.seed``."""
    if not random_count:
        yield from enumerate_pairs(spec)
        return
    rng = random.Random(spec.seed)
    shapes = [s for s in spec.shapes() if (s[0] * s[1] * s[2]) % 2 == 0]
    if not shapes:
        return
    for k in range(random_count):
        p, q, d = shapes[k % len(shapes)]
        pair = random_pair(p, q, d, rng, spec.matching)
        raw = pair.to_dict()
        yield build_pair(raw, name=f"random-{k}-p{p}q{q}d{d}")


def _work(args):
    raw, name, timings = args
    return check_instance(build_pair(raw, name=name), timings)


@dataclass
class CampaignResult:
    records: List[dict] = field(default_factory=list)
    halted: Optional[dict] = None

    @property
    def violations(self) -> List[dict]:
        return [r for r in self.records if r.get("status") == "violation"]

    @property
    def exit_code(self) -> int:
        return EXIT_VIOLATION if self.violations else EXIT_OK

    def counts(self) -> Dict[str, int]:
        out: Dict[str, int] = {}
        for r in self.records:
            out[r["branch"]] = out.get(r["branch"], 0) + 1
        return dict(sorted(out.items()))


def dumps_record(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


def run_campaign(pairs: Iterable[GraphPair], ledger: Optional[str] = None, jobs: int = 1,
                 timings: bool = False, halt: bool = True) -> CampaignResult:
    """Check every pair; records come back in stream order whatever ``jobs`` is.

    With ``halt`` the run stops at the first violation and, given a ledger,
    dumps the instance next to it.
    """
    result = CampaignResult()
    pairs = list(pairs)
    by_index = {}
    tasks = []
    for k, pr in enumerate(pairs):
        by_index[k] = pr
        tasks.append((pr.to_dict(), pr.name, timings))
    out = open(ledger, "a") if ledger else None
    pool = multiprocessing.Pool(jobs) if jobs > 1 else None
    try:
        stream = pool.imap(_work, tasks) if pool else map(_work, tasks)
        for k, rec in enumerate(stream):
            result.records.append(rec)
            if out:
                out.write(dumps_record(rec) + "\n")
            if rec["status"] == "violation" and halt:
                result.halted = rec
                if ledger:
                    with open(ledger + ".violation.json", "w") as fh:
                        fh.write(by_index[k].dumps() + "\n")
                break
    finally:
        if pool:
            pool.terminate()
        if out:
            out.close()
    return result


def run_dichotomy_campaign(spec: EnumSpec, ledger: Optional[str] = None, jobs: int = 1,
                           random_count: int = 0, timings: bool = False) -> CampaignResult:
    return run_campaign(instances(spec, random_count), ledger, jobs, timings)


def delta_one_exceptions(result: CampaignResult) -> List[dict]:
    """Records of sphere pairs with delta 1, no Scharlemann cycles, and all types represented."""
    return [r for r in result.records if r.get("delta_one_exception")]


# ---------------------------------------------------------------------------
# the shipped corpus


def corpus_index() -> Dict[str, str]:
    with resources.files(__package__).joinpath("corpus/index.json").open() as fh:
        return json.load(fh)


def load_corpus(name: str) -> GraphPair:
    path = resources.files(__package__).joinpath(f"corpus/{name}.json")
    with path.open() as fh:
        return build_pair(json.load(fh), name=name)
