"""Rotation-system primitives shared by the graph, angle-graph and web code.

A dart is an ``(edge, end)`` pair: the edge seen leaving the vertex that
holds that end.  Rotations list darts anticlockwise around a vertex, and
face boundary walks follow ``phi = sigma . alpha`` where ``alpha`` flips
the end and ``sigma`` steps anticlockwise.
"""

from __future__ import annotations

from typing import Dict, Hashable, Iterable, List, Mapping, Sequence, Tuple

Dart = Tuple[int, int]


def alpha(d: Dart) -> Dart:
    return (d[0], 1 - d[1])


def successor_map(ccw: Mapping[Hashable, Sequence[Dart]]) -> Dict[Dart, Dart]:
    succ = {}
    for darts in ccw.values():
        n = len(darts)
        for k, d in enumerate(darts):
            succ[d] = darts[(k + 1) % n]
    return succ


def trace_walks(ccw: Mapping[Hashable, Sequence[Dart]]) -> List[Tuple[Dart, ...]]:
    """Boundary walks of the rotation system, in deterministic order.

    Vertices are visited in sorted order and darts in rotation order; each
    walk starts at the first unvisited dart met that way.
    """
    succ = successor_map(ccw)
    seen = set()
    walks = []
    for v in sorted(ccw):
        for d in ccw[v]:
            if d in seen:
                continue
            walk = []
            x = d
            while x not in seen:
                seen.add(x)
                walk.append(x)
                x = succ[alpha(x)]
            walks.append(tuple(walk))
    return walks


class UnionFind:
    def __init__(self, items: Iterable[Hashable] = ()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # smaller label wins so class representatives are deterministic
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def classes(self):
        out = {}
        for x in sorted(self.parent):
            out.setdefault(self.find(x), []).append(x)
        return out


def components(vertices: Iterable[int], edges: Iterable[Tuple[int, int]]) -> List[List[int]]:
    """Connected components as sorted vertex lists, ordered by least vertex."""
    uf = UnionFind(vertices)
    for u, v in edges:
        uf.union(u, v)
    return sorted((sorted(c) for c in uf.classes().values()), key=lambda c: c[0])


def merge_regions(atom_chi: Sequence[int],
                  deleted_edges: Iterable[Tuple[int, int]],
                  deleted_vertices: Iterable[Sequence[int]]):
    """Merge the faces ("atoms") of a cellular map across deleted cells.

    ``deleted_edges`` gives, per removed edge, the atoms on its two sides;
    ``deleted_vertices`` gives, per removed vertex, the atoms around it.
    Returns ``(root, chi)``: the region root of every atom and the Euler
    characteristic of every region, counted as an open cell complex.
    """
    n = len(atom_chi)
    uf = UnionFind(range(n))
    deleted_edges = list(deleted_edges)
    deleted_vertices = [list(a) for a in deleted_vertices]
    for a, b in deleted_edges:
        uf.union(a, b)
    for atoms in deleted_vertices:
        for a in atoms[1:]:
            uf.union(atoms[0], a)
    root = [uf.find(a) for a in range(n)]
    chi = {}
    for a in range(n):
        chi[root[a]] = chi.get(root[a], 0) + atom_chi[a]
    for a, _ in deleted_edges:
        chi[root[a]] -= 1
    for atoms in deleted_vertices:
        chi[root[atoms[0]]] += 1
    return root, chi
