"""Admissible triples ``(P, Q, R)`` and the exact search for ``c_k^*(t)``.

``R`` is a bipartite overlay between ``A = V(P)`` and ``B = V(Q)``. A triple
is k-admissible when every ``a`` in ``A`` has
``d_P(a) + nu(Q[N_R(a)]) <= k - 1`` and every ``b`` in ``B`` has
``d_Q(b) + nu(P[N_R(b)]) <= k - 1``.

The search branches on ``N_R(a)`` for each ``a`` in turn. Candidate
neighbourhoods are generated directly from the A-side inequality, the B-side
inequality is checked incrementally, and subtrees are cut with an optimistic
completion bound that is linear in ``t``.
"""

from __future__ import annotations

import json
import logging
import time
from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .canon import canonical_form
from .families import Family, enumerate_Pk, f_value, validate_member
from .graph import Graph, bits, triangle_count
from .graph6 import decode, encode
from .matching import matching_number_on

__all__ = [
    "OverlayR",
    "Violation",
    "AdmissibleTriple",
    "CStarResult",
    "is_admissible",
    "tau",
    "phi",
    "cstar_search",
    "canonical_triple",
    "odd_k_lower_bound",
    "PairSearch",
    "DEFAULT_SEARCH_BUDGET",
    "DEFAULT_MAX_TIES",
]

log = logging.getLogger(__name__)

DEFAULT_SEARCH_BUDGET = 50_000_000
DEFAULT_MAX_TIES = 20_000


@dataclass(frozen=True)
class OverlayR:
    size_a: int
    size_b: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        for a, b in self.edges:
            if not (0 <= a < self.size_a and 0 <= b < self.size_b):
                raise ValueError(f"R edge ({a}, {b}) out of range {self.size_a}x{self.size_b}")

    @classmethod
    def from_pairs(cls, size_a: int, size_b: int, pairs: Iterable[Sequence[int]]) -> OverlayR:
        edges = [(int(a), int(b)) for a, b in pairs]
        if len(set(edges)) != len(edges):
            raise ValueError("duplicate pair in R")
        return cls(size_a, size_b, frozenset(edges))

    @classmethod
    def from_masks(cls, size_a: int, size_b: int, nbr_a: Sequence[int]) -> OverlayR:
        return cls(size_a, size_b, frozenset((a, b) for a in range(size_a) for b in bits(nbr_a[a])))

    def __len__(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def nbr_a(self) -> list[int]:
        out = [0] * self.size_a
        for a, b in self.edges:
            out[a] |= 1 << b
        return out

    def nbr_b(self) -> list[int]:
        out = [0] * self.size_b
        for a, b in self.edges:
            out[b] |= 1 << a
        return out

    def transpose(self) -> OverlayR:
        return OverlayR(self.size_b, self.size_a, frozenset((b, a) for a, b in self.edges))


@dataclass(frozen=True)
class Violation:
    side: str  # "A" or "B"
    vertex: int
    lhs: int


def _check_dims(P: Graph, Q: Graph, R: OverlayR) -> None:
    if R.size_a != P.n or R.size_b != Q.n:
        raise ValueError(f"R is {R.size_a}x{R.size_b} but |V(P)|={P.n}, |V(Q)|={Q.n}")


def is_admissible(P: Graph, Q: Graph, R: OverlayR, k: int) -> tuple[bool, Violation | None]:
    """Check both admissibility inequalities; report the first violation (A side first)."""
    _check_dims(P, Q, R)
    for side, host, other, nbrs in (("A", P, Q, R.nbr_a()), ("B", Q, P, R.nbr_b())):
        for v in range(host.n):
            lhs = host.degree(v) + matching_number_on(other.adj, nbrs[v])
            if lhs > k - 1:
                return False, Violation(side, v, lhs)
    return True, None


def tau(P: Graph, Q: Graph, R: OverlayR) -> int:
    """Common R-neighbours summed over the edges of P and over the edges of Q."""
    _check_dims(P, Q, R)
    na, nb = R.nbr_a(), R.nbr_b()
    return sum((na[u] & na[v]).bit_count() for u, v in P.edges()) + sum(
        (nb[u] & nb[v]).bit_count() for u, v in Q.edges()
    )


def _phi_terms(F: int, P: Graph, Q: Graph, e_R: int, tau_R: int, t: int, tri: int) -> int:
    return (2 * F - P.n * Q.n + e_R) * t - F * (P.n + Q.n) + tri + tau_R


def phi(P: Graph, Q: Graph, R: OverlayR, t: int, k: int) -> int:
    """The objective whose maximum over k-admissible triples is ``c_k^*(t)``."""
    _check_dims(P, Q, R)
    for name, G in (("P", P), ("Q", Q)):
        bad = validate_member(G, k)
        if bad:
            raise ValueError(f"{name} is not in P_{k}: {'; '.join(bad)}")
    F = f_value(k - 1, k - 1)
    return _phi_terms(F, P, Q, len(R), tau(P, Q, R), t, triangle_count(P) + triangle_count(Q))


def odd_k_lower_bound(k: int, t: int) -> int:
    """Value at ``P = Q = 2K_k`` with a perfect matching between every clique pair (odd k)."""
    if k % 2 == 0:
        raise ValueError("the 2K_k construction needs odd k")
    num = (10 * k + 6 * t + 4) * k * (k - 1)
    assert num % 3 == 0
    return -num // 3


@dataclass(frozen=True)
class AdmissibleTriple:
    P: Graph
    Q: Graph
    R: OverlayR
    k: int

    def __post_init__(self):
        _check_dims(self.P, self.Q, self.R)
        for name, G in (("P", self.P), ("Q", self.Q)):
            bad = validate_member(G, self.k)
            if bad:
                raise ValueError(f"{name} is not in P_{self.k}: {'; '.join(bad)}")
        ok, why = is_admissible(self.P, self.Q, self.R, self.k)
        if not ok:
            raise ValueError(f"triple is not {self.k}-admissible: {why}")

    def phi(self, t: int) -> int:
        return phi(self.P, self.Q, self.R, t, self.k)

    def swapped(self) -> AdmissibleTriple:
        return AdmissibleTriple(self.Q, self.P, self.R.transpose(), self.k)

    def to_dict(self) -> dict:
        return {"P": encode(self.P), "Q": encode(self.Q), "R": [list(e) for e in self.R.sorted_edges()]}

    @classmethod
    def from_dict(cls, data: dict, k: int) -> AdmissibleTriple:
        P, Q = decode(data["P"]), decode(data["Q"])
        return cls(P, Q, OverlayR.from_pairs(P.n, Q.n, data["R"]), k)


def _overlay_graph(P: Graph, Q: Graph, R: OverlayR) -> Graph:
    na = R.nbr_a()
    nb = R.nbr_b()
    shift = P.n
    adj = [P.adj[a] | (na[a] << shift) for a in range(P.n)]
    adj += [(Q.adj[b] << shift) | nb[b] for b in range(Q.n)]
    return Graph(P.n + Q.n, adj)


def canonical_triple(tr: AdmissibleTriple) -> bytes:
    """Label invariant under relabelling P, relabelling Q, and swapping the sides."""
    G = _overlay_graph(tr.P, tr.Q, tr.R)
    left = canonical_form(G, [0] * tr.P.n + [1] * tr.Q.n)
    right = canonical_form(G, [1] * tr.P.n + [0] * tr.Q.n)
    return min(left, right)


class BudgetExceeded(Exception):
    pass


class PairSearch:
    """Branch and bound over overlays ``R`` for one ordered pair ``(P, Q)``.

    Vertices of ``A`` are processed in index order. ``prefix`` arguments are
    lists of B-masks giving ``N_R(a)`` for the first ``len(prefix)`` vertices.
    """

    def __init__(self, P: Graph, Q: Graph, k: int, t: int, symmetry: bool = True):
        self.P, self.Q, self.k, self.t = P, Q, k, t
        self.na, self.nb = P.n, Q.n
        self.F = f_value(k - 1, k - 1)
        self.const = _phi_terms(self.F, P, Q, 0, 0, t, triangle_count(P) + triangle_count(Q))
        self.dQ = Q.degrees()
        self._nuP: dict[int, int] = {}
        self.back = [P.adj[a] & ((1 << a) - 1) for a in range(self.na)]
        self.cands = [self._candidates(k - 1 - P.degree(a)) for a in range(self.na)]
        if symmetry and self.na:
            self.cands[0] = self._orbit_reps(self.cands[0])
        self.eQ = {S: self._edges_in_Q(S) for c in self.cands for S in c}
        self.nodes = self.prunes = self.leaves = 0

    def _edges_in_Q(self, S: int) -> int:
        return sum((self.Q.adj[b] & S).bit_count() for b in bits(S)) // 2

    def _candidates(self, cap: int) -> list[int]:
        """All ``S`` in ``B`` with ``nu(Q[S]) <= cap``, largest first."""
        if cap < 0:
            return []
        out = []
        adjQ = self.Q.adj

        def grow(i: int, S: int) -> None:
            if i == self.nb:
                out.append(S)
                return
            grow(i + 1, S)
            T = S | 1 << i
            if cap >= self.nb // 2 or matching_number_on(adjQ, T) <= cap:
                grow(i + 1, T)

        grow(0, 0)
        out.sort(key=lambda S: (-S.bit_count(), S))
        return out

    def _orbit_reps(self, cands: list[int]) -> list[int]:
        seen: set[bytes] = set()
        reps = []
        for S in cands:
            key = canonical_form(self.Q, [S >> b & 1 for b in range(self.nb)])
            if key not in seen:
                seen.add(key)
                reps.append(S)
        return reps

    def nu_P(self, mask: int) -> int:
        v = self._nuP.get(mask)
        if v is None:
            v = self._nuP[mask] = matching_number_on(self.P.adj, mask)
        return v

    def feasible(self, a: int, S: int, nbrB: list[int]) -> bool:
        bit = 1 << a
        lim = self.k - 1
        for b in bits(S):
            if self.dQ[b] + self.nu_P(nbrB[b] | bit) > lim:
                return False
        return True

    def gain(self, a: int, S: int, nbrA: list[int]) -> int:
        g = self.t * S.bit_count() + self.eQ[S]
        for a2 in bits(self.back[a]):
            g += (S & nbrA[a2]).bit_count()
        return g

    def bound(self, depth: int, nbrA: list[int], nbrB: list[int], value: int) -> int:
        """Optimistic value of any completion of the first ``depth`` assignments."""
        ub = value
        t = self.t
        for a in range(depth, self.na):
            assigned = self.back[a] & ((1 << depth) - 1)
            pending = (self.back[a] >> depth).bit_count()
            best = None
            for S in self.cands[a]:
                size = S.bit_count()
                g = (t + pending) * size + self.eQ[S]
                for a2 in bits(assigned):
                    g += (S & nbrA[a2]).bit_count()
                if best is not None and g <= best:
                    continue
                if self.feasible(a, S, nbrB):
                    best = g
            if best is None:
                return -(10**18)
            ub += best
        return ub

    def _state(self, prefix: Sequence[int]) -> tuple[list[int], list[int], int]:
        nbrA = [0] * self.na
        nbrB = [0] * self.nb
        value = self.const
        for a, S in enumerate(prefix):
            value += self.gain(a, S, nbrA)
            nbrA[a] = S
            for b in bits(S):
                nbrB[b] |= 1 << a
        return nbrA, nbrB, value

    def node_bound(self, prefix: Sequence[int]) -> int:
        nbrA, nbrB, value = self._state(prefix)
        return self.bound(len(prefix), nbrA, nbrB, value)

    def completions(self, prefix: Sequence[int] = ()) -> Iterator[tuple[int, list[int]]]:
        """Every admissible completion of ``prefix`` with its objective, no pruning."""
        nbrA, nbrB, value = self._state(prefix)

        def rec(a: int, value: int) -> Iterator[tuple[int, list[int]]]:
            if a == self.na:
                yield value, list(nbrA)
                return
            for S in self.cands[a]:
                if not self.feasible(a, S, nbrB):
                    continue
                g = self.gain(a, S, nbrA)
                nbrA[a] = S
                for b in bits(S):
                    nbrB[b] |= 1 << a
                yield from rec(a + 1, value + g)
                for b in bits(S):
                    nbrB[b] &= ~(1 << a)
                nbrA[a] = 0

        yield from rec(len(prefix), value)

    def run(self, incumbent: int | None, budget: int | None, max_ties: int) -> dict:
        """Search with pruning; returns best value, the tied overlays and status flags."""
        state = {"best": incumbent, "ties": [], "strict": False, "complete": True}
        nbrA = [0] * self.na
        nbrB = [0] * self.nb

        def rec(a: int, value: int) -> None:
            self.nodes += 1
            if budget is not None and self.nodes > budget:
                raise BudgetExceeded
            if a == self.na:
                self.leaves += 1
                best = state["best"]
                if best is None or value > best:
                    state["best"] = value
                    state["ties"] = [list(nbrA)]
                    state["strict"] = False
                elif value == best and not state["strict"]:
                    state["ties"].append(list(nbrA))
                    if len(state["ties"]) >= max_ties:
                        state["strict"] = True
                return
            best = state["best"]
            if best is not None:
                ub = self.bound(a, nbrA, nbrB, value)
                if ub < best or (state["strict"] and ub <= best):
                    self.prunes += 1
                    return
            for S in self.cands[a]:
                if not self.feasible(a, S, nbrB):
                    continue
                g = self.gain(a, S, nbrA)
                nbrA[a] = S
                for b in bits(S):
                    nbrB[b] |= 1 << a
                rec(a + 1, value + g)
                for b in bits(S):
                    nbrB[b] &= ~(1 << a)
                nbrA[a] = 0

        try:
            rec(0, self.const)
        except BudgetExceeded:
            state["complete"] = False
        return state


@dataclass
class CStarResult:
    k: int
    t: int
    value: int | None
    optimizers: list[AdmissibleTriple]
    exhaustive: bool
    optimizers_complete: bool = True
    stats: dict = field(default_factory=dict)

    def to_dict(self, timing: bool = False) -> dict:
        stats = {key: v for key, v in self.stats.items() if timing or key != "wall_time"}
        return {
            "k": self.k,
            "t": self.t,
            "value": self.value,
            "exhaustive": self.exhaustive,
            "optimizers_complete": self.optimizers_complete,
            "optimizers": [tr.to_dict() for tr in self.optimizers],
            "stats": stats,
        }

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2)


def _search_pair(args: tuple) -> dict:
    P6, Q6, k, t, symmetry, budget, max_ties = args
    P, Q = decode(P6), decode(Q6)
    search = PairSearch(P, Q, k, t, symmetry=symmetry)
    out = search.run(None, budget, max_ties)
    out["nodes"], out["prunes"], out["leaves"] = search.nodes, search.prunes, search.leaves
    return out


def cstar_search(
    k: int,
    t: int,
    family: Family | None = None,
    *,
    symmetry: bool = True,
    budget: int | None = DEFAULT_SEARCH_BUDGET,
    max_ties: int = DEFAULT_MAX_TIES,
    threads: int = 1,
    allow_partial_family: bool = False,
) -> CStarResult:
    """Exact ``c_k^*(t)`` over all ordered pairs of ``family`` and all admissible ``R``.

    Each pair is searched independently (its own incumbent), so node counts
    and results do not depend on ``threads``. With ``symmetry`` on, only pairs
    ``i <= j`` are searched and the first vertex's neighbourhood is reduced to
    one representative per orbit of ``Aut(Q)``; the optimizer classes reported
    are unchanged because they are deduplicated by :func:`canonical_triple`.
    """
    if k < 3:
        raise ValueError("c_k^*(t) needs k >= 3")
    if t < 1:
        raise ValueError("t must be positive")
    if threads < 1:
        raise ValueError("threads must be >= 1")
    if family is None:
        family = enumerate_Pk(k)
    if family.k != k:
        raise ValueError(f"family is P_{family.k}, not P_{k}")
    if not len(family):
        raise ValueError("empty family")
    if not family.exhaustive and not allow_partial_family:
        raise ValueError("family is not exhaustive; pass allow_partial_family=True for a lower bound")

    start = time.perf_counter()
    members = [m.graph for m in family]
    pairs = [(i, j) for i in range(len(members)) for j in range(len(members)) if not symmetry or i <= j]
    jobs = [(encode(members[i]), encode(members[j]), k, t, symmetry, budget, max_ties) for i, j in pairs]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            outs = list(pool.map(_search_pair, jobs))
    else:
        outs = [_search_pair(job) for job in jobs]

    value = max((o["best"] for o in outs if o["best"] is not None), default=None)
    complete = all(o["complete"] for o in outs)
    ties_complete = True
    found: dict[bytes, AdmissibleTriple] = {}
    for (i, j), o in zip(pairs, outs):
        if o["best"] != value or value is None:
            continue
        ties_complete &= not o["strict"]
        P, Q = members[i], members[j]
        for nbrA in o["ties"]:
            tr = AdmissibleTriple(P, Q, OverlayR.from_masks(P.n, Q.n, nbrA), k)
            found.setdefault(canonical_triple(tr), tr)
    optimizers = [found[key] for key in sorted(found)]
    stats = {
        "pairs": len(pairs),
        "nodes": sum(o["nodes"] for o in outs),
        "prunes": sum(o["prunes"] for o in outs),
        "leaves": sum(o["leaves"] for o in outs),
        "raw_ties": sum(len(o["ties"]) for o in outs if o["best"] == value),
        "wall_time": round(time.perf_counter() - start, 3),
    }
    return CStarResult(
        k,
        t,
        value,
        optimizers,
        exhaustive=complete and family.exhaustive,
        optimizers_complete=ties_complete and complete,
        stats=stats,
    )
