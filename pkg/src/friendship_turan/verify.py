"""Independent checks: F_k-freeness, disjoint F_k packing, certificate replay.

A graph contains ``F_k`` centred at ``v`` exactly when ``G[N(v)]`` has a
matching of size ``k``, so freeness is one matching computation per vertex.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Any

from .admissible import AdmissibleTriple, OverlayR, is_admissible, odd_k_lower_bound, tau
from .construct import FormulaParams, build_Hn, g_formula
from .families import f_value, graphs_on, validate_member
from .graph import Graph, bits, triangle_count
from .graph6 import Graph6Error, decode
from .matching import matching_on

__all__ = [
    "FreenessCertificate",
    "PackingWitness",
    "VerificationReport",
    "is_Fk_free",
    "max_disjoint_Fk",
    "verify_certificate",
    "explore_small_g",
    "DEFAULT_PACKING_BUDGET",
    "EXPLORE_MAX_N",
]

DEFAULT_PACKING_BUDGET = 10_000_000
EXPLORE_MAX_N = 8


@dataclass(frozen=True)
class FreenessCertificate:
    k: int
    per_vertex_nu: tuple[int, ...]
    free: bool
    center: int | None = None
    copy: tuple[tuple[int, int], ...] | None = None

    @property
    def verdict(self) -> str:
        return "free" if self.free else f"center {self.center}"

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "free": self.free,
            "center": self.center,
            "copy": [list(e) for e in self.copy] if self.copy else None,
            "per_vertex_nu": list(self.per_vertex_nu),
        }


def is_Fk_free(G: Graph, k: int) -> FreenessCertificate:
    """``nu(G[N(v)]) <= k-1`` at every vertex; otherwise the first centre and one copy."""
    if k < 1:
        raise ValueError("k must be >= 1")
    nus = []
    center = None
    copy = None
    for v in range(G.n):
        M = matching_on(G.adj, G.adj[v])
        nus.append(len(M))
        if center is None and len(M) >= k:
            center, copy = v, tuple(M[:k])
    return FreenessCertificate(k, tuple(nus), center is None, center, copy)


def _has_center(G: Graph, mask: int, k: int) -> int | None:
    for v in bits(mask):
        if len(matching_on(G.adj, G.adj[v] & mask, target=k)) >= k:
            return v
    return None


@dataclass(frozen=True)
class PackingWitness:
    copies: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]

    def vertex_sets(self) -> list[set[int]]:
        return [{c} | {x for e in M for x in e} for c, M in self.copies]

    def validate(self, G: Graph, k: int) -> bool:
        used: set[int] = set()
        for (c, M), vs in zip(self.copies, self.vertex_sets()):
            if len(M) != k or len(vs) != 2 * k + 1 or vs & used:
                return False
            for x, y in M:
                if not (G.has_edge(c, x) and G.has_edge(c, y) and G.has_edge(x, y)):
                    return False
            used |= vs
        return True


class _Packer:
    def __init__(self, G: Graph, k: int, cap: int | None, budget: int):
        self.G, self.k, self.cap, self.budget = G, k, cap, budget
        self.nodes = 0
        self.best: list = []
        self.seen: dict[int, int] = {}
        self.out_of_budget = False

    def tick(self) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            self.out_of_budget = True
        return not self.out_of_budget

    def copy_at(self, c: int, mask: int):
        M = matching_on(self.G.adj, self.G.adj[c] & mask & ~(1 << c), target=self.k)
        return (c, tuple(M[: self.k])) if len(M) >= self.k else None

    def greedy(self, mask: int, hs: list[int]) -> list:
        """Disjoint copies found greedily: hitting-set vertices first, as centres
        whose copies avoid the other hitting-set vertices."""
        copies = []
        protected = sum(1 << h for h in hs)

        def take(pick) -> None:
            nonlocal mask, protected
            c, M = pick
            copies.append(pick)
            for x in (c, *[y for e in M for y in e]):
                mask &= ~(1 << x)
                protected &= ~(1 << x)

        for h in hs:
            if mask >> h & 1:
                pick = self.copy_at(h, mask & ~protected | 1 << h)
                if pick:
                    take(pick)
        while True:
            # low-degree centres waste fewer vertices
            order = sorted(bits(mask), key=lambda v: ((self.G.adj[v] & mask).bit_count(), v))
            pick = None
            for c in order:
                pick = self.copy_at(c, mask & ~protected | 1 << c) or self.copy_at(c, mask)
                if pick:
                    break
            if pick is None:
                return copies
            take(pick)

    def hitting_set(self, mask: int) -> list[int]:
        """Vertices whose removal leaves no F_k; its size bounds any packing."""
        hs = []
        while _has_center(self.G, mask, self.k) is not None:
            v = max(bits(mask), key=lambda u: ((self.G.adj[u] & mask).bit_count(), -u))
            hs.append(v)
            mask &= ~(1 << v)
        return hs

    def _matchings(self, pool: int, need: int, forced: int | None = None):
        """Vertex sets of ``need``-matchings inside ``pool`` (covering ``forced`` if given)."""
        adj = self.G.adj
        out: set[int] = set()

        def rec(pool: int, need: int, used: int) -> None:
            if not self.tick():
                return
            if need == 0:
                out.add(used)
                return
            if pool.bit_count() < 2 * need or len(matching_on(adj, pool, target=need)) < need:
                return
            u = pool & -pool
            ui = u.bit_length() - 1
            rest = pool & ~u
            for w in bits(adj[ui] & rest):
                rec(rest & ~(1 << w), need - 1, used | u | 1 << w)
            rec(rest, need, used)

        if forced is None:
            rec(pool, need, 0)
        else:
            for w in bits(self.G.adj[forced] & pool):
                base = 1 << forced | 1 << w
                rec(pool & ~base, need - 1, base)
        return out

    def copies_through(self, h: int, mask: int) -> list[int]:
        adj = self.G.adj
        sets: set[int] = set()
        hb = 1 << h
        for vs in self._matchings(adj[h] & mask, self.k):
            sets.add(vs | hb)
        for c in bits(adj[h] & mask):
            pool = adj[c] & mask & ~(1 << c)
            for vs in self._matchings(pool, self.k, forced=h):
                sets.add(vs | 1 << c)
        return sorted(sets)

    def rec(self, mask: int, chosen: list) -> None:
        if not self.tick():
            return
        if len(chosen) > len(self.best):
            self.best = list(chosen)
        if self.cap is not None and len(self.best) >= self.cap:
            return
        if self.seen.get(mask, -1) >= len(chosen):
            return
        self.seen[mask] = len(chosen)
        hs = self.hitting_set(mask)
        if len(chosen) + len(hs) <= len(self.best):
            return
        quick = self.greedy(mask, hs)
        if len(chosen) + len(quick) > len(self.best):
            self.best = chosen + quick
            if len(quick) == len(hs) or (self.cap is not None and len(self.best) >= self.cap):
                return
        h = hs[0]
        for vs in self.copies_through(h, mask):
            copy = self._describe(vs)
            self.rec(mask & ~vs, chosen + [copy])
            if self.out_of_budget:
                return
        self.rec(mask & ~(1 << h), chosen)

    def _describe(self, vs: int) -> tuple:
        for c in bits(vs):
            pick = self.copy_at(c, vs)
            if pick:
                return pick
        raise AssertionError("vertex set does not carry an F_k copy")


def max_disjoint_Fk(
    G: Graph, k: int, cap: int | None = None, budget: int = DEFAULT_PACKING_BUDGET
) -> tuple[int, PackingWitness, bool]:
    """Maximum number of pairwise vertex-disjoint ``F_k`` copies.

    Returns ``(count, witness, exact)``. ``exact`` is False when the node
    budget ran out (``count`` is then a certified lower bound). ``cap`` stops
    the search once that many copies are found; the result is then exact only
    as the statement "at least ``cap``".
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    packer = _Packer(G, k, cap, budget)
    full = (1 << G.n) - 1
    hs = packer.hitting_set(full)
    packer.best = packer.greedy(full, hs)
    if cap is not None:
        packer.best = packer.best[:cap]
    if len(packer.best) < len(hs) and (cap is None or len(packer.best) < cap):
        packer.rec(full, [])
    return len(packer.best), PackingWitness(tuple(packer.best)), not packer.out_of_budget


@dataclass
class VerificationReport:
    checks: list[dict[str, Any]] = field(default_factory=list)

    def add(self, check: str, ok: bool, details: Any = None) -> bool:
        self.checks.append({"check": check, "pass": bool(ok), "details": details})
        return ok

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c["pass"] for c in self.checks)

    def failures(self) -> list[str]:
        return [c["check"] for c in self.checks if not c["pass"]]

    def to_json(self) -> str:
        return json.dumps({"pass": self.passed, "checks": self.checks}, indent=2)


def verify_certificate(cert: dict | str, n: int) -> VerificationReport:
    """Replay a c* certificate: membership, admissibility, objective, and the H_n identities.

    Check names: ``certificate-format``, ``family-membership``,
    ``admissibility-A`` (``d_P(a) + nu(Q[N_R(a)]) <= k-1``), ``admissibility-B``
    (``d_Q(b) + nu(P[N_R(b)]) <= k-1``), ``phi-value``, ``odd-k-lower-bound``,
    ``Hn-edge-count``, ``Hn-triangle-count``, ``Hn-Fk-free``, ``g-identity``.
    """
    report = VerificationReport()
    try:
        data = json.loads(cert) if isinstance(cert, str) else cert
        k, t, value = int(data["k"]), int(data["t"]), int(data["value"])
        raw = data["optimizers"]
        if not raw:
            raise ValueError("no optimizers listed")
        triples = []
        for item in raw:
            P, Q = decode(item["P"]), decode(item["Q"])
            R = OverlayR.from_pairs(P.n, Q.n, item["R"])
            triples.append((P, Q, R))
    except (KeyError, TypeError, ValueError, Graph6Error) as exc:
        report.add("certificate-format", False, str(exc))
        return report
    report.add("certificate-format", True, {"k": k, "t": t, "value": value, "optimizers": len(triples)})

    F = f_value(k - 1, k - 1)
    for idx, (P, Q, R) in enumerate(triples):
        where = f"optimizer {idx}"
        bad = {name: validate_member(G, k) for name, G in (("P", P), ("Q", Q))}
        if not report.add("family-membership", not any(bad.values()), {"optimizer": idx, **bad}):
            continue
        ok, why = is_admissible(P, Q, R, k)
        if not ok:
            name = "admissibility-A" if why.side == "A" else "admissibility-B"
            report.add(name, False, f"{where}: vertex {why.vertex} has lhs {why.lhs} > {k - 1}")
            continue
        report.add("admissibility-A", True, where)
        report.add("admissibility-B", True, where)
        tau_R = tau(P, Q, R)
        val = (2 * F - P.n * Q.n + len(R)) * t - F * (P.n + Q.n) + triangle_count(P) + triangle_count(Q) + tau_R
        report.add("phi-value", val == value, {"optimizer": idx, "recomputed": val, "claimed": value})
        if val != value:
            continue
        tr = AdmissibleTriple(P, Q, R, k)
        try:
            rep = build_Hn(tr, n)
        except ValueError as exc:
            report.add("Hn-edge-count", False, str(exc))
            continue
        H = rep.graph
        e_closed = (n * n // 4) - P.n * Q.n + len(R) + 2 * F
        tri_closed = F * (n - P.n - Q.n) + triangle_count(P) + triangle_count(Q) + tau_R
        report.add("Hn-edge-count", H.edge_count() == e_closed, {"direct": H.edge_count(), "closed": e_closed})
        report.add("Hn-triangle-count", triangle_count(H) == tri_closed, {"direct": triangle_count(H), "closed": tri_closed})
        report.add("Hn-Fk-free", is_Fk_free(H, k).free, where)
        lhs = t * H.edge_count() + triangle_count(H)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            g = g_formula(FormulaParams(k, t, n, cstar=value))
        report.add("g-identity", lhs == g, {"t*e+N3": lhs, "g_formula": g})
    if k % 2 and data.get("exhaustive"):
        lb = odd_k_lower_bound(k, t)
        report.add("odd-k-lower-bound", value >= lb, {"value": value, "lower_bound": lb})
    return report


def explore_small_g(k: int, t: int, n: int) -> tuple[int, list[Graph], str]:
    """Exact ``max t e(H) + N(K_3, H)`` over ``F_k``-free ``H`` on ``n <= 8`` vertices.

    The closed form for this maximum is only claimed for large ``n``; at these
    sizes disagreement with it is expected and is not a failure.
    """
    if n > EXPLORE_MAX_N:
        raise ValueError(f"explore_small_g is exhaustive only for n <= {EXPLORE_MAX_N}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    graphs = graphs_on(n, keep=lambda G: is_Fk_free(G, k).free)
    scored = [(t * G.edge_count() + triangle_count(G), G) for G in graphs]
    best = max(s for s, _ in scored)
    note = "small-n exploration: the closed form is claimed only for sufficiently large n"
    return best, [G for s, G in scored if s == best], note
