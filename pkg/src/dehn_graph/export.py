"""Graphviz descriptions of graphs, angle graphs, webs and faces.

Output is deterministic: nodes and edges are written in sorted order.
"""

from __future__ import annotations

import json
from typing import Iterable, List, Optional

from .errors import UnsupportedFormat
from .gamma import DirectedAngleGraph
from .graph import Face, LabelledFatGraph
from .webs import Web

FORMATS = ("dot", "json")


def _sign(s: int) -> str:
    return "+" if s > 0 else "-"


def _graph_lines(g: LabelledFatGraph, hi_v=frozenset(), hi_e=frozenset()) -> List[str]:
    lines = []
    for v in g.vertices:
        attrs = f'label="{g.side}{v.id}{_sign(v.sign)}"'
        if v.id in hi_v:
            attrs += ", style=filled, fillcolor=lightblue"
        lines.append(f"  v{v.id} [{attrs}];")
    for e in g.edges:
        a, b = g.ends(e)
        la, lb = g.end_labels(e)
        attrs = f'label="e{e}", taillabel="{la}", headlabel="{lb}"'
        if e in hi_e:
            attrs += ", color=blue, penwidth=2"
        lines.append(f"  v{a} -- v{b} [{attrs}];")
    return lines


def graph_dot(g: LabelledFatGraph, name: str = "G", highlight_vertices: Iterable[int] = (),
              highlight_edges: Iterable[int] = ()) -> str:
    body = _graph_lines(g, frozenset(highlight_vertices), frozenset(highlight_edges))
    return "graph %s {\n%s\n}\n" % (name, "\n".join(body))


def gamma_dot(om: DirectedAngleGraph, name: str = "Gamma") -> str:
    g = om.rgraph.graph
    lines = [f'  // type {om.tau} on labels {",".join(map(str, om.rgraph.labels))}']
    for v in g.vertices:
        lines.append(f'  fat{v.id} [shape=circle, label="{v.id}{_sign(v.sign)}"];')
    for f in om.rgraph.faces:
        lines.append(f'  dual{f.index} [shape=box, label="f{f.index}"];')
    for e in om.edges:
        lam = e.corner.interval
        if e.inward:
            lines.append(f'  dual{e.face} -> fat{e.fat} [label="{lam}"];')
        else:
            lines.append(f'  fat{e.fat} -> dual{e.face} [label="{lam}"];')
    return "digraph %s {\n%s\n}\n" % (name, "\n".join(lines))


def web_dot(g: LabelledFatGraph, web: Web, name: str = "Web") -> str:
    return graph_dot(g, name, web.vertices, web.edges)


def face_dot(g: LabelledFatGraph, face: Face, name: str = "Face") -> str:
    return graph_dot(g, name, face.vertices, face.edges)


def _as_json(obj, graph: Optional[LabelledFatGraph]) -> str:
    if isinstance(obj, DirectedAngleGraph):
        data = {"type": str(obj.tau), "labels": list(obj.rgraph.labels),
                "edges": [{"fat": e.fat, "face": e.face, "interval": e.corner.interval,
                           "inward": e.inward} for e in obj.edges]}
    elif isinstance(obj, Web):
        data = obj.summary()
    elif isinstance(obj, Face):
        data = {"face": obj.index, "edges": list(obj.edges), "vertices": list(obj.vertices),
                "corners": [[c.vertex, c.interval, c.sign] for c in obj.corners]}
    elif isinstance(obj, LabelledFatGraph):
        data = {"side": obj.side, "vertices": [v.id for v in obj.vertices],
                "edges": [[e, *obj.ends(e)] for e in obj.edges]}
    else:
        raise TypeError(f"cannot export {type(obj).__name__}")
    return json.dumps(data, sort_keys=True) + "\n"


def export_drawing(obj, fmt: str = "dot", graph: Optional[LabelledFatGraph] = None) -> str:
    """Describe a graph, angle graph, web or face; webs and faces need their ``graph``."""
    if fmt not in FORMATS:
        raise UnsupportedFormat(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    if fmt == "json":
        return _as_json(obj, graph)
    if isinstance(obj, DirectedAngleGraph):
        return gamma_dot(obj)
    if isinstance(obj, LabelledFatGraph):
        return graph_dot(obj, f"G{obj.side}")
    if not isinstance(obj, (Web, Face)):
        raise TypeError(f"cannot export {type(obj).__name__}")
    if graph is None:
        raise ValueError("webs and faces are drawn inside their graph")
    return web_dot(graph, obj) if isinstance(obj, Web) else face_dot(graph, obj)
