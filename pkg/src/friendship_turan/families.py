"""Chvátal–Hanson numbers and the candidate family ``P_k``.

``P_k`` is the set of graphs with no isolated vertex, matching number and
maximum degree at most ``k-1``, and exactly ``f(k-1, k-1)`` edges. Members are
assembled from connected components produced by edge augmentation with
isomorphism rejection; every component must carry enough edges that the rest
of the graph can still reach ``f(k-1, k-1)``.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field

from .canon import canonical_form
from .graph import Graph, disjoint_union, empty_graph
from .graph6 import encode
from .matching import has_matching_of_size, max_matching

__all__ = [
    "FeasibilityError",
    "FamilyMember",
    "Family",
    "f_value",
    "f_bruteforce",
    "enumerate_Pk",
    "validate_member",
    "connected_graphs",
    "graphs_without_isolated",
    "graphs_on",
    "BRUTEFORCE_MAX_NU",
    "BRUTEFORCE_MAX_DELTA",
    "PK_EXHAUSTIVE_MAX_K",
    "PK_DEFAULT_BUDGET",
]

log = logging.getLogger(__name__)

BRUTEFORCE_MAX_NU = 2
BRUTEFORCE_MAX_DELTA = 3
PK_EXHAUSTIVE_MAX_K = 4
PK_DEFAULT_BUDGET = 2_000_000


class FeasibilityError(ValueError):
    """Parameters lie beyond a documented exhaustive-search cap."""


def f_value(nu: int, delta: int) -> int:
    """Maximum edges over graphs with matching number <= nu and max degree <= delta."""
    if nu < 1 or delta < 1:
        raise ValueError("f(nu, delta) needs nu >= 1 and delta >= 1")
    half_up = (delta + 1) // 2
    return nu * delta + (delta // 2) * (nu // half_up)


def _f_or_zero(nu: int, delta: int) -> int:
    return 0 if nu <= 0 else f_value(nu, delta)


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0
        self.exhausted = False

    def spend(self, amount: int = 1) -> bool:
        self.used += amount
        if self.limit is not None and self.used > self.limit:
            self.exhausted = True
        return not self.exhausted


def _with_edge(G: Graph, u: int, v: int) -> Graph:
    n = max(G.n, u + 1, v + 1)
    adj = list(G.adj) + [0] * (n - G.n)
    adj[u] |= 1 << v
    adj[v] |= 1 << u
    return Graph(n, adj)


def _augment(
    seeds: list[Graph],
    max_edges: int,
    extensions: Callable[[Graph], Iterable[tuple[int, int]]],
    keep: Callable[[Graph], bool],
    budget: _Budget,
) -> dict[int, list[Graph]]:
    """Level-by-level edge augmentation keeping one graph per isomorphism class."""
    levels: dict[int, list[Graph]] = {}
    current = {canonical_form(G): G for G in seeds if keep(G)}
    m = min((G.edge_count() for G in seeds), default=0)
    while current:
        levels[m] = [current[key] for key in sorted(current)]
        if m >= max_edges:
            break
        nxt: dict[bytes, Graph] = {}
        for G in levels[m]:
            for u, v in extensions(G):
                if not budget.spend():
                    return levels
                H = _with_edge(G, u, v)
                if not keep(H):
                    continue
                key = canonical_form(H)
                if key not in nxt:
                    nxt[key] = H
        current = nxt
        m += 1
    return levels


def _bounded_keep(max_deg: int, max_nu: int) -> Callable[[Graph], bool]:
    def keep(G: Graph) -> bool:
        return G.max_degree() <= max_deg and not has_matching_of_size(G, max_nu + 1)

    return keep


def connected_graphs(
    max_edges: int, max_deg: int, max_nu: int, budget: _Budget | None = None
) -> dict[int, list[Graph]]:
    """Connected graphs with at least one edge, by edge count, up to isomorphism."""
    budget = budget or _Budget(None)
    K2 = Graph.from_edges(2, [(0, 1)])

    def ext(G: Graph) -> Iterable[tuple[int, int]]:
        n = G.n
        for u in range(n):
            if G.degree(u) >= max_deg:
                continue
            for v in range(u + 1, n):
                if not G.has_edge(u, v) and G.degree(v) < max_deg:
                    yield u, v
            yield u, n

    return _augment([K2], max_edges, ext, _bounded_keep(max_deg, max_nu), budget)


def graphs_without_isolated(
    max_edges: int, max_deg: int, max_nu: int, max_vertices: int, budget: _Budget | None = None
) -> dict[int, list[Graph]]:
    """Graphs with no isolated vertex, by edge count, up to isomorphism."""
    budget = budget or _Budget(None)

    def ext(G: Graph) -> Iterable[tuple[int, int]]:
        n = G.n
        for u in range(n):
            if G.degree(u) >= max_deg:
                continue
            for v in range(u + 1, n):
                if not G.has_edge(u, v) and G.degree(v) < max_deg:
                    yield u, v
            if n + 1 <= max_vertices:
                yield u, n
        if n + 2 <= max_vertices:
            yield n, n + 1

    return _augment([empty_graph(0)], max_edges, ext, _bounded_keep(max_deg, max_nu), budget)


def graphs_on(n: int, keep: Callable[[Graph], bool] | None = None) -> list[Graph]:
    """All graphs on exactly ``n`` vertices up to isomorphism.

    ``keep`` must be monotone decreasing under edge addition (e.g. H-freeness);
    rejected graphs are not augmented further.
    """
    keep = keep or (lambda G: True)

    def ext(G: Graph) -> Iterable[tuple[int, int]]:
        for u in range(n):
            for v in range(u + 1, n):
                if not G.has_edge(u, v):
                    yield u, v

    levels = _augment([empty_graph(n)], n * (n - 1) // 2, ext, keep, _Budget(None))
    return [G for m in sorted(levels) for G in levels[m]]


def f_bruteforce(nu: int, delta: int) -> tuple[int, Graph]:
    """Exhaustive ``f(nu, delta)`` with one maximiser (fewest vertices, then least label).

    A maximum matching's ``2 nu`` endpoints cover every edge, so a graph
    without isolated vertices has at most ``2 nu (delta + 1)`` vertices.
    """
    if nu < 1 or delta < 1:
        raise ValueError("f(nu, delta) needs nu >= 1 and delta >= 1")
    if nu > BRUTEFORCE_MAX_NU or delta > BRUTEFORCE_MAX_DELTA:
        raise FeasibilityError(
            f"brute force capped at nu <= {BRUTEFORCE_MAX_NU}, delta <= {BRUTEFORCE_MAX_DELTA}"
        )
    vmax = 2 * nu * (delta + 1)
    levels = graphs_without_isolated(2 * nu * delta, delta, nu, vmax)
    top = max(levels)
    witness = min(levels[top], key=lambda G: (G.n, canonical_form(G)))
    return top, witness


@dataclass(frozen=True)
class FamilyMember:
    graph: Graph
    nu: int
    max_deg: int
    edges: int
    canonical_label: bytes

    @classmethod
    def from_graph(cls, G: Graph) -> FamilyMember:
        return cls(G, max_matching(G)[0], G.max_degree(), G.edge_count(), canonical_form(G))


def validate_member(G: Graph, k: int) -> list[str]:
    """Reasons ``G`` is not in ``P_k`` (empty when it is)."""
    problems = []
    if G.isolated_vertices():
        problems.append(f"isolated vertices {G.isolated_vertices()}")
    nu = max_matching(G)[0]
    if nu > k - 1:
        problems.append(f"matching number {nu} > {k - 1}")
    if G.max_degree() > k - 1:
        problems.append(f"maximum degree {G.max_degree()} > {k - 1}")
    target = f_value(k - 1, k - 1)
    if G.edge_count() != target:
        problems.append(f"edge count {G.edge_count()} != f(k-1,k-1) = {target}")
    return problems


@dataclass
class Family:
    """Members of ``P_k`` in canonical-label order."""

    k: int
    members: list[FamilyMember]
    exhaustive: bool
    stats: dict = field(default_factory=dict)

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __getitem__(self, i: int) -> FamilyMember:
        return self.members[i]

    def graph6_lines(self) -> str:
        return "".join(encode(m.graph) + "\n" for m in self.members)

    def manifest(self) -> dict:
        return {
            "k": self.k,
            "f_value": f_value(self.k - 1, self.k - 1),
            "member_count": len(self.members),
            "exhaustive": self.exhaustive,
            "canonical_labels": [m.canonical_label.decode("ascii") for m in self.members],
            "graph6": [encode(m.graph) for m in self.members],
        }

    def to_json(self) -> str:
        return json.dumps(self.manifest(), indent=2)


def enumerate_Pk(k: int, budget: int | None = PK_DEFAULT_BUDGET) -> Family:
    """All graphs of ``P_k`` up to isomorphism.

    Exhaustive for ``k <= PK_EXHAUSTIVE_MAX_K`` (the budget is ignored there).
    Beyond that the augmentation runs under ``budget`` candidate expansions and
    the family is flagged non-exhaustive if the budget runs out.
    """
    if k < 2:
        raise ValueError("P_k is defined for k >= 2")
    d = k - 1
    F = f_value(d, d)
    ranges = {}
    for j in range(1, k):
        lo = F - _f_or_zero(k - 1 - j, d)
        hi = min(F, f_value(j, d))
        if lo <= hi:
            ranges[j] = (lo, hi)
    tracker = _Budget(None if k <= PK_EXHAUSTIVE_MAX_K else budget)
    top_nu = max(ranges)
    levels = connected_graphs(max(hi for _, hi in ranges.values()), d, top_nu, tracker)

    comps: list[tuple[int, int, Graph]] = []
    for m in sorted(levels):
        for G in levels[m]:
            nu = max_matching(G)[0]
            if nu in ranges and ranges[nu][0] <= m <= ranges[nu][1]:
                comps.append((nu, m, G))
    log.debug("P_%d: %d candidate components", k, len(comps))

    found: dict[bytes, Graph] = {}

    def combine(start: int, nu_left: int, e_left: int, acc: Graph) -> None:
        if e_left == 0:
            found.setdefault(canonical_form(acc), acc)
            return
        for i in range(start, len(comps)):
            nu, m, G = comps[i]
            if nu <= nu_left and m <= e_left:
                combine(i, nu_left - nu, e_left - m, disjoint_union(acc, G))

    combine(0, d, F, empty_graph(0))
    members = [FamilyMember.from_graph(found[key]) for key in sorted(found)]
    for mem in members:
        bad = validate_member(mem.graph, k)
        if bad:
            raise AssertionError(f"generated non-member of P_{k}: {bad}")
        if mem.graph.n > 2 * F:
            raise AssertionError("member exceeds the 2 f(k-1,k-1) vertex bound")
    stats = {"components": len(comps), "expansions": tracker.used}
    return Family(k, members, exhaustive=not tracker.exhausted, stats=stats)
