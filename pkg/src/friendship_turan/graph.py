"""Simple undirected graphs stored as per-vertex bit rows.

Row ``adj[v]`` is a Python int whose bit ``u`` is set iff ``uv`` is an edge,
so neighbourhood intersections and induced restrictions are single ``&``
operations and vertex counts are unbounded.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Sequence
from itertools import combinations

__all__ = [
    "Graph",
    "edge_count",
    "triangle_count",
    "induced_subgraph",
    "join",
    "disjoint_union",
    "friendship_graph",
    "clique_union",
    "complete_graph",
    "empty_graph",
    "path_graph",
    "cycle_graph",
    "complete_bipartite_graph",
    "star_graph",
    "petersen_graph",
    "bits",
    "to_json",
    "from_json",
]


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``origin`` optionally records, for each vertex, the label it had in a
    host graph (set by :func:`induced_subgraph`). It is not part of equality.
    """

    __slots__ = ("_n", "_adj", "_origin", "_m")

    def __init__(self, n: int, adj: Sequence[int], origin: Sequence[int] | None = None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(adj) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(adj)}")
        full = (1 << n) - 1
        rows = tuple(int(r) for r in adj)
        for v, row in enumerate(rows):
            if row & ~full or row < 0:
                raise ValueError(f"row {v} references a vertex outside 0..{n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not rows[u] >> v & 1:
                    raise ValueError(f"adjacency is not symmetric at ({v}, {u})")
        if origin is not None and len(origin) != n:
            raise ValueError("origin map must have one entry per vertex")
        self._n = n
        self._adj = rows
        self._origin = tuple(origin) if origin is not None else None
        self._m = sum(r.bit_count() for r in rows) // 2

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        """Build from an edge list; loops and repeated edges are rejected."""
        adj = [0] * n
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if adj[u] >> v & 1:
                raise ValueError(f"repeated edge ({u}, {v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @property
    def n(self) -> int:
        return self._n

    @property
    def adj(self) -> tuple[int, ...]:
        return self._adj

    @property
    def origin(self) -> tuple[int, ...] | None:
        return self._origin

    def __len__(self) -> int:
        return self._n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self._adj[v]))

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self._adj]

    def max_degree(self) -> int:
        return max((r.bit_count() for r in self._adj), default=0)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u, row in enumerate(self._adj):
            out.extend((u, v) for v in bits(row >> (u + 1) << (u + 1)))
        return out

    def edge_count(self) -> int:
        return self._m

    def isolated_vertices(self) -> list[int]:
        return [v for v, r in enumerate(self._adj) if not r]

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self._n)):
            raise ValueError("perm must be a permutation of 0..n-1")
        adj = [0] * self._n
        for v, row in enumerate(self._adj):
            adj[perm[v]] = sum(1 << perm[u] for u in bits(row))
        return Graph(self._n, adj)

    def remove_vertices(self, S: Iterable[int]) -> Graph:
        """``G \\ S`` as an induced subgraph on the remaining vertices."""
        drop = set(S)
        return induced_subgraph(self, [v for v in range(self._n) if v not in drop])

    def components(self) -> list[list[int]]:
        """Vertex sets of connected components, each sorted, ordered by minimum."""
        seen = 0
        comps = []
        for v in range(self._n):
            if seen >> v & 1:
                continue
            comp = frontier = 1 << v
            while frontier:
                nxt = 0
                for u in bits(frontier):
                    nxt |= self._adj[u]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(list(bits(comp)))
        return comps


def edge_count(G: Graph) -> int:
    return G.edge_count()


def triangle_count(G: Graph) -> int:
    """Number of triangles, each counted once via ``u < v < w``."""
    total = 0
    adj = G.adj
    for u in range(G.n):
        up = adj[u] >> (u + 1) << (u + 1)
        for v in bits(up):
            total += (up & adj[v] >> (v + 1) << (v + 1)).bit_count()
    return total


def induced_subgraph(G: Graph, S: Iterable[int]) -> Graph:
    """``G[S]`` relabelled to ``0..|S|-1`` in ascending order of ``S``.

    The returned graph's ``origin`` maps new labels back to ``G``'s.
    """
    verts = sorted(set(S))
    for v in verts:
        if not 0 <= v < G.n:
            raise IndexError(f"vertex {v} out of range for n={G.n}")
    index = {v: i for i, v in enumerate(verts)}
    mask = sum(1 << v for v in verts)
    adj = [sum(1 << index[u] for u in bits(G.adj[v] & mask)) for v in verts]
    return Graph(len(verts), adj, origin=verts)


def disjoint_union(G: Graph, H: Graph) -> Graph:
    """``G`` on ``0..|G|-1`` followed by ``H`` shifted by ``|G|``."""
    shift = G.n
    return Graph(G.n + H.n, list(G.adj) + [r << shift for r in H.adj])


def join(G: Graph, H: Graph) -> Graph:
    """Disjoint union plus every edge between the two vertex sets."""
    shift = G.n
    h_all = ((1 << H.n) - 1) << shift
    g_all = (1 << G.n) - 1
    adj = [r | h_all for r in G.adj] + [(r << shift) | g_all for r in H.adj]
    return Graph(G.n + H.n, adj)


def empty_graph(n: int) -> Graph:
    return Graph(n, [0] * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full ^ (1 << v) for v in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite_graph(p: int, q: int) -> Graph:
    return Graph.from_edges(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def star_graph(leaves: int) -> Graph:
    """``K_{1,leaves}`` with centre 0."""
    return complete_bipartite_graph(1, leaves)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def friendship_graph(k: int) -> Graph:
    """``F_k``: ``k`` triangles sharing vertex 0; triangle ``i`` is ``{0, 2i+1, 2i+2}``."""
    if k < 1:
        raise ValueError("friendship graph needs k >= 1")
    edges = []
    for i in range(k):
        a, b = 2 * i + 1, 2 * i + 2
        edges += [(0, a), (0, b), (a, b)]
    return Graph.from_edges(2 * k + 1, edges)


def clique_union(copies: int, size: int) -> Graph:
    """``copies`` disjoint copies of ``K_size``."""
    G = empty_graph(0)
    for _ in range(copies):
        G = disjoint_union(G, complete_graph(size))
    return G


def to_json(G: Graph) -> str:
    return json.dumps({"n": G.n, "edges": [list(e) for e in G.edges()]})


def from_json(text: str) -> Graph:
    data = json.loads(text)
    try:
        n = int(data["n"])
        edges = [(int(u), int(v)) for u, v in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed adjacency JSON: {exc}") from exc
    return Graph.from_edges(n, edges)


def all_pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))
