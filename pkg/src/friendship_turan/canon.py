"""Canonical labelling of small vertex-coloured graphs.

Colour refinement to an equitable ordered partition, then exhaustive
individualisation over the first smallest non-singleton cell; the canonical
ordering is the leaf with the lexicographically least relabelled adjacency.
Disconnected graphs are labelled component by component and the component
codes sorted, which keeps the leaf count bounded by the largest component.
"""

from __future__ import annotations

from collections.abc import Sequence

from .graph import Graph, bits
from .graph6 import encode

__all__ = ["canonical_form", "canonical_order", "canonical_graph", "is_isomorphic"]

Code = tuple


def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        new: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                row = adj[v]
                sig = tuple((row & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            for sig in sorted(groups):
                new.append(groups[sig])
        if len(new) == len(cells):
            return new
        cells = new


def _leaf_code(adj: Sequence[int], order: list[int], colors: Sequence[int]) -> Code:
    pos = {v: i for i, v in enumerate(order)}
    rows = tuple(sum(1 << pos[u] for u in bits(adj[v])) for v in order)
    return (tuple(colors[v] for v in order), rows)


def _search(adj: Sequence[int], colors: Sequence[int], cells: list[list[int]], best: list) -> None:
    cells = _refine(adj, cells)
    target = -1
    size = 0
    for i, c in enumerate(cells):
        if len(c) > 1 and (target < 0 or len(c) < size):
            target, size = i, len(c)
    if target < 0:
        order = [c[0] for c in cells]
        code = _leaf_code(adj, order, colors)
        if best[0] is None or code < best[0]:
            best[0], best[1] = code, order
        return
    cell = cells[target]
    for v in cell:
        rest = [u for u in cell if u != v]
        _search(adj, colors, cells[:target] + [[v], rest] + cells[target + 1:], best)


def _component_order(G: Graph, verts: list[int], colors: Sequence[int]) -> tuple[Code, list[int]]:
    adj = G.adj
    mask = sum(1 << v for v in verts)
    local = {v: adj[v] & mask for v in verts}
    groups: dict[tuple[int, int], list[int]] = {}
    for v in verts:
        groups.setdefault((colors[v], local[v].bit_count()), []).append(v)
    cells = [groups[key] for key in sorted(groups)]
    best: list = [None, None]
    _search(local, colors, cells, best)
    return (len(verts),) + best[0], best[1]


def canonical_order(G: Graph, colors: Sequence[int] | None = None) -> list[int]:
    """Vertex order ``order`` such that relabelling ``order[i] -> i`` is canonical."""
    if colors is None:
        colors = [0] * G.n
    parts = [_component_order(G, comp, colors) for comp in G.components()]
    parts.sort(key=lambda p: p[0])
    return [v for _, order in parts for v in order]


def canonical_graph(G: Graph, colors: Sequence[int] | None = None) -> tuple[Graph, list[int]]:
    """The canonical relabelled copy of ``G`` and its colour sequence."""
    order = canonical_order(G, colors)
    perm = [0] * G.n
    for i, v in enumerate(order):
        perm[v] = i
    cols = [0] * G.n if colors is None else [colors[v] for v in order]
    return G.relabel(perm), cols


def canonical_form(G: Graph, colors: Sequence[int] | None = None) -> bytes:
    """Complete isomorphism invariant: equal iff the (coloured) graphs are isomorphic."""
    H, cols = canonical_graph(G, colors)
    label = encode(H).encode("ascii")
    if colors is not None:
        label += b":" + ",".join(map(str, cols)).encode("ascii")
    return label


def is_isomorphic(G: Graph, H: Graph) -> bool:
    return G.n == H.n and G.edge_count() == H.edge_count() and canonical_form(G) == canonical_form(H)
