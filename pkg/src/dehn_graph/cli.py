"""Command line entry point: ``dehn-graph <command> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import __version__, webs
from .campaign import EXIT_INVALID, EXIT_OK, EXIT_VIOLATION, run_dichotomy_campaign
from .enumerate import EnumSpec, enumerate_pairs, random_pair
from .errors import DehnGraphError, InstanceError, NoneFound, TheoremViolation
from .export import export_drawing
from .face_rep import graph_represents_all_types
from .gamma import build_gamma, resolve_type, restricted_graph
from .graph import GraphPair, build_pair, validate
from .homology import h1_invariants, presentation
from .type_algebra import (QType, all_types, cokernel, find_torsion_subset, is_minimal_all_types,
                           missing_types, types_represented)


class Invalid(Exception):
    """An input file that cannot be used."""


def _ints(text: str) -> List[int]:
    return [int(x) for x in text.replace("(", " ").replace(")", " ").replace(",", " ").split()]


def _load_raw(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise Invalid(f"{path}: {exc}") from None


def _load_pair(path: str) -> GraphPair:
    raw = _load_raw(path)
    try:
        return build_pair(raw, name=os.path.basename(path))
    except InstanceError as exc:
        raise Invalid(f"{path}: {exc.kind}: {exc}") from None


def _graph(pair: GraphPair, side: str):
    return pair.gp if side.upper() == "P" else pair.gq


def _emit(args, data, text_lines: List[str]):
    if args.format == "json":
        print(json.dumps(data, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _sign(s):
    return "+" if s > 0 else "-"


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    raw = _load_raw(args.instance)
    problems = validate(raw)
    data = {"valid": not problems,
            "violations": [{"kind": p.kind, "message": str(p)} for p in problems]}
    lines = ["valid"] if not problems else [f"{p.kind}: {p}" for p in problems]
    _emit(args, data, lines)
    return EXIT_OK if not problems else EXIT_INVALID


def cmd_faces(args) -> int:
    pair = _load_pair(args.instance)
    g = _graph(pair, args.side)
    faces = g.faces if args.labels is None else restricted_graph(g, _ints(args.labels)).faces
    data, lines = [], []
    for f in faces:
        corners = [[c.vertex, c.interval, c.sign] for c in f.corners]
        data.append({"face": f.index, "length": f.length, "chi": f.chi, "disk": f.is_disk,
                     "edges": list(f.edges), "corners": corners})
        word = " ".join(f"{c.vertex}{_sign(c.sign)}:{c.interval}" for c in f.corners)
        lines.append(f"face {f.index}: length {f.length} chi {f.chi}"
                     f"{'' if f.is_disk else ' (not a disk)'}  {word}")
    _emit(args, data, lines)
    return EXIT_OK


def _read_vectors(path: str) -> List[List[int]]:
    try:
        with open(path) as fh:
            rows = [_ints(line) for line in fh if line.strip() and not line.startswith("#")]
    except OSError as exc:
        raise Invalid(str(exc)) from None
    if not rows or len({len(r) for r in rows}) != 1:
        raise Invalid(f"{path}: need one integer tuple per line, all of one length")
    return rows


def cmd_types(args) -> int:
    A = _read_vectors(args.vectors)
    q = len(A[0])
    data = {"q": q, "vectors": {",".join(map(str, a)): [str(t) for t in types_represented(a)] for a in A}}
    lines = [f"{tuple(a)}: {' '.join(str(t) for t in types_represented(a)) or '-'}" for a in A]
    if args.check_all:
        miss = missing_types(A, q)
        data["all_types"] = not miss
        data["missing"] = [str(t) for t in miss]
        lines.append("all types represented" if not miss else "missing: " + " ".join(map(str, miss)))
    if args.torsion_subset:
        sub = find_torsion_subset(A, q)
        data["torsion_subset"] = [list(a) for a in sub] if sub else None
        data["cokernel"] = cokernel(A, q).describe()
        lines.append(f"cokernel of all vectors: {cokernel(A, q).describe()}")
        lines.append("torsion subset: " + (f"{list(sub)} -> {cokernel(sub, q).describe()}" if sub else "none"))
    if args.minimal:
        m = is_minimal_all_types(A, q)
        data["minimal"] = m
        lines.append(f"minimal all-types: {'yes' if m else 'no'}")
    _emit(args, data, lines)
    return EXIT_OK


def cmd_all_types(args) -> int:
    pair = _load_pair(args.instance)
    res = graph_represents_all_types(pair.gp, want_minimal=args.minimal)
    data = {"all_types": res.ok, "witness": res.witness,
            "missing": str(res.missing) if res.missing else None,
            "minimal": list(res.minimal) if res.minimal else None}
    lines = [f"{t}: face {k}" for t, k in res.witness.items()]
    lines.append("all types represented" if res.ok else f"type {res.missing} is not represented")
    if res.minimal:
        lines.append(f"minimal family: faces {', '.join(map(str, res.minimal))}")
    _emit(args, data, lines)
    return EXIT_OK


def cmd_dichotomy(args) -> int:
    pair = _load_pair(args.instance)
    taus = [QType.parse(args.tau)] if args.tau else all_types(pair.q)
    if any(len(t) != pair.q for t in taus):
        raise Invalid(f"--tau needs {pair.q} signs")
    data, lines = {}, []
    for tau in taus:
        w = resolve_type(pair, tau)
        data[str(tau)] = w.summary()
        if w.kind == "FACE":
            lines.append(f"{tau}: FACE {w.face.index} ({w.route})")
        else:
            lines.append(f"{tau}: WEB vertices {list(w.web.vertices)} edges {list(w.web.edges)} "
                         f"deficiency {w.web.deficiency} ({w.route})")
    if args.emit_gamma:
        tau = taus[0]
        om = build_gamma(restricted_graph(pair.gp, range(1, pair.q + 1)), tau)
        with open(args.emit_gamma, "w") as fh:
            fh.write(export_drawing(om, "dot"))
    _emit(args, data, lines)
    return EXIT_OK


def cmd_webs(args) -> int:
    pair = _load_pair(args.instance)
    w = webs.find_k_web(pair.gq, args.k, great=args.great)
    data = {"k": args.k, "great": args.great, "web": w.summary() if w else None}
    if w is None:
        lines = [f"no {'great ' if args.great else ''}{args.k}-web"]
    else:
        lines = [f"{'great ' if args.great else ''}{args.k}-web: vertices {list(w.vertices)} "
                 f"edges {list(w.edges)} deficiency {w.deficiency} sign {_sign(w.sign)}"]
        if args.great:
            ic = webs.innermost_i_cycle(pair, w) if pair.hypothesis_holds() else None
            if ic:
                data["scharlemann"] = ic.scharlemann.summary()
                lines.append(f"innermost {ic.cycle.label}-cycle edges {list(ic.cycle.edges)} -> "
                             f"Scharlemann face {ic.scharlemann.face} on {ic.scharlemann.interval}")
    _emit(args, data, lines)
    return EXIT_OK


def cmd_scharlemann(args) -> int:
    pair = _load_pair(args.instance)
    data, lines = {}, []
    sides = ["P", "Q"] if args.side == "both" else [args.side.upper()]
    for side in sides:
        g = _graph(pair, side)
        other = pair.gq if side == "P" else pair.gp
        found = webs.find_scharlemann_cycles(g, other)
        data[side] = [c.summary() for c in found]
        for c in found:
            lines.append(f"G_{side} face {c.face}: interval {c.interval} length {c.length} "
                         f"sign {_sign(c.sign)} edges {list(c.edges)}")
        if args.extended:
            ext = webs.find_extended_scharlemann(g)
            data[side + "_extended"] = [x.summary() for x in ext]
            for x in ext:
                lines.append(f"G_{side} extended: face {x.core.face} flanked by {list(x.flanks)}")
    if not lines:
        lines.append("no Scharlemann cycles")
    _emit(args, data, lines)
    return EXIT_OK


def cmd_homology(args) -> int:
    pair = _load_pair(args.instance)
    g = _graph(pair, args.side)
    ids = _ints(args.faces)
    try:
        faces = [g.faces[k] for k in ids]
    except IndexError:
        raise Invalid(f"face ids must lie in 0..{len(g.faces) - 1}") from None
    pres = presentation(faces, g.companion)
    inv = h1_invariants(pres)
    data = {"generators": list(pres.generators), "relators": pres.matrix(),
            "factors": list(inv.factors), "free_rank": inv.free_rank, "h1": inv.describe()}
    lines = [pres.describe(), f"invariant factors: {list(inv.factors)}", f"H1 = {inv.describe()}"]
    _emit(args, data, lines)
    return EXIT_OK


def _spec(args) -> EnumSpec:
    try:
        return EnumSpec(p=tuple(_ints(args.p)), q=tuple(_ints(args.q)), delta=tuple(_ints(args.delta)),
                        chi_p=args.chi_p, chi_q=args.chi_q, separating_p=args.separating_p,
                        separating_q=args.separating_q, isomorph_rejection=not args.no_reject,
                        matching=args.matching, seed=args.seed)
    except ValueError as exc:
        raise Invalid(str(exc)) from None


def cmd_enumerate(args) -> int:
    spec = _spec(args)
    if args.random:
        import random
        rng = random.Random(args.seed)
        shapes = [s for s in spec.shapes() if (s[0] * s[1] * s[2]) % 2 == 0]
        pairs = [random_pair(*shapes[k % len(shapes)], rng, spec.matching) for k in range(args.random)]
    else:
        pairs = enumerate_pairs(spec)
    n = 0
    for pair in pairs:
        n += 1
        if args.count:
            continue
        if args.out:
            os.makedirs(args.out, exist_ok=True)
            with open(os.path.join(args.out, f"{pair.name or n}.json"), "w") as fh:
                fh.write(pair.dumps() + "\n")
        else:
            print(pair.dumps())
    if args.count or args.out:
        _emit(args, {"count": n}, [f"{n} instances"])
    return EXIT_OK


def cmd_campaign(args) -> int:
    spec = _spec(args)
    res = run_dichotomy_campaign(spec, ledger=args.ledger, jobs=args.jobs,
                                 random_count=args.random, timings=args.timings)
    exceptions = [r["name"] for r in res.records if r.get("delta_one_exception")]
    data = {"instances": len(res.records), "branches": res.counts(),
            "violations": [r["name"] for r in res.violations], "delta_one_exceptions": exceptions}
    lines = [f"{len(res.records)} instances"]
    lines += [f"  {k}: {v}" for k, v in res.counts().items()]
    if exceptions:
        lines.append("delta-one exceptions: " + ", ".join(exceptions))
    for r in res.violations:
        lines.append(f"VIOLATION {r['name']}: {'; '.join(r['alerts'])}")
    _emit(args, data, lines)
    return res.exit_code


# ---------------------------------------------------------------------------
# parser


def _global(parser: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=d(0), help="seed for randomized modes")
    parser.add_argument("--jobs", type=int, default=d(1), help="worker processes")
    parser.add_argument("--ledger", default=d(None), help="append JSON-lines records here")
    parser.add_argument("--format", choices=("text", "json"), default=d("text"))


def _spec_args(parser):
    parser.add_argument("--p", default="2", help="values of p, e.g. 2,3,4")
    parser.add_argument("--q", default="2", help="values of q")
    parser.add_argument("--delta", default="1", help="values of delta")
    parser.add_argument("--chi-p", type=int, default=2)
    parser.add_argument("--chi-q", type=int, default=2)
    parser.add_argument("--separating-p", action="store_true")
    parser.add_argument("--separating-q", action="store_true")
    parser.add_argument("--matching", choices=("torus", "free"), default="torus")
    parser.add_argument("--no-reject", action="store_true", help="keep isomorphic copies")
    parser.add_argument("--random", type=int, default=0, help="draw this many random instances instead")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dehn-graph", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    _global(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    _global(common, suppress=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("validate", cmd_validate, "check an instance file")
    sp.add_argument("instance")
    sp = add("faces", cmd_faces, "list faces with their corners")
    sp.add_argument("instance")
    sp.add_argument("--side", choices=("P", "Q", "p", "q"), default="P")
    sp.add_argument("--labels", help="restrict to edges with an end label in this set")
    sp = add("types", cmd_types, "type algebra on a file of integer vectors")
    sp.add_argument("vectors")
    sp.add_argument("--check-all", action="store_true")
    sp.add_argument("--torsion-subset", action="store_true")
    sp.add_argument("--minimal", action="store_true")
    sp = add("all-types", cmd_all_types, "does G_P represent every type")
    sp.add_argument("instance")
    sp.add_argument("--minimal", action="store_true")
    sp = add("dichotomy", cmd_dichotomy, "resolve each type to a face or a web")
    sp.add_argument("instance")
    sp.add_argument("--tau", help="a single type such as ++-")
    sp.add_argument("--emit-gamma", metavar="DOT_FILE")
    sp = add("webs", cmd_webs, "find a k-web in G_Q")
    sp.add_argument("instance")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--great", action="store_true")
    sp = add("scharlemann", cmd_scharlemann, "list Scharlemann cycles")
    sp.add_argument("instance")
    sp.add_argument("--extended", action="store_true")
    sp.add_argument("--side", choices=("P", "Q", "both"), default="both")
    sp = add("homology", cmd_homology, "H_1 of the handle presentation of some faces")
    sp.add_argument("instance")
    sp.add_argument("--faces", required=True, help="face ids, e.g. 0,2")
    sp.add_argument("--side", choices=("P", "Q"), default="P")
    sp = add("enumerate", cmd_enumerate, "enumerate valid pairs")
    _spec_args(sp)
    sp.add_argument("--count", action="store_true", help="only print the count")
    sp.add_argument("--out", help="write one file per instance into this directory")
    sp = add("campaign", cmd_campaign, "run the dichotomy checks over an instance stream")
    _spec_args(sp)
    sp.add_argument("--timings", action="store_true", help="record per-instance seconds")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Invalid as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (TheoremViolation, NoneFound) as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except DehnGraphError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
