"""Maximum matching on general graphs (Edmonds' blossom contraction).

The core routine works on a vertex subset of a host graph given by bit rows,
so neighbourhood graphs ``G[N(v)]`` never have to be materialised.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, bits

__all__ = [
    "MatchingWitness",
    "max_matching",
    "has_matching_of_size",
    "matching_on",
    "matching_number_on",
]


@dataclass(frozen=True)
class MatchingWitness:
    edges: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.edges)

    def validate(self, G: Graph) -> bool:
        seen: set[int] = set()
        for u, v in self.edges:
            if not G.has_edge(u, v) or u in seen or v in seen or u == v:
                return False
            seen.update((u, v))
        return True


def _find_augmenting(root: int, g: list[list[int]], match: list[int]) -> tuple[int, list[int]]:
    N = len(g)
    used = [False] * N
    parent = [-1] * N
    base = list(range(N))
    used[root] = True
    queue = [root]

    def lca(a: int, b: int) -> int:
        seen = [False] * N
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for to in g[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and parent[match[to]] != -1):
                cur = lca(v, to)
                blossom = [False] * N
                mark(v, cur, to, blossom)
                mark(to, cur, v, blossom)
                for i in range(N):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if match[to] == -1:
                    return to, parent
                used[match[to]] = True
                queue.append(match[to])
    return -1, parent


def _solve(g: list[list[int]], target: int | None) -> list[int]:
    N = len(g)
    match = [-1] * N
    size = 0
    # greedy start, lowest-degree vertices first
    for v in sorted(range(N), key=lambda x: len(g[x])):
        if match[v] == -1:
            for u in g[v]:
                if match[u] == -1:
                    match[u], match[v] = v, u
                    size += 1
                    break
    for root in range(N):
        if target is not None and size >= target:
            break
        if match[root] != -1 or not g[root]:
            continue
        end, parent = _find_augmenting(root, g, match)
        if end == -1:
            continue
        v = end
        while v != -1:
            pv = parent[v]
            nxt = match[pv]
            match[v], match[pv] = pv, v
            v = nxt
        size += 1
    return match


def matching_on(adj: tuple[int, ...] | list[int], mask: int, target: int | None = None) -> list[tuple[int, int]]:
    """Maximum matching of the subgraph induced by ``mask`` in host rows ``adj``.

    With ``target`` set, augmentation stops once that many edges are matched
    (the result is then only guaranteed to have ``min(target, nu)`` edges).
    """
    verts = list(bits(mask))
    index = {v: i for i, v in enumerate(verts)}
    g = [[index[u] for u in bits(adj[v] & mask)] for v in verts]
    match = _solve(g, target)
    return [(verts[i], verts[j]) for i, j in enumerate(match) if j > i]


def matching_number_on(adj: tuple[int, ...] | list[int], mask: int) -> int:
    return len(matching_on(adj, mask))


def max_matching(G: Graph) -> tuple[int, MatchingWitness]:
    """Exact matching number of ``G`` and one maximum matching."""
    edges = matching_on(G.adj, (1 << G.n) - 1)
    return len(edges), MatchingWitness(tuple(edges))


def has_matching_of_size(G: Graph, k: int) -> bool:
    """True iff ``nu(G) >= k``; stops augmenting as soon as ``k`` is reached."""
    if k <= 0:
        return True
    if 2 * k > G.n or k > G.edge_count():
        return False
    return len(matching_on(G.adj, (1 << G.n) - 1, target=k)) >= k
