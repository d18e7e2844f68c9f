"""Extremal constructions and closed-form evaluators.

``build_Hn`` plants ``P`` and ``Q`` inside the two sides of a balanced complete
bipartite graph and replaces the ``A x B`` block by ``R``; ``build_extremal``
joins a ``K_t`` on top. Each construction is re-counted directly and checked
against its closed form before it is returned.

Every evaluator takes ``c_k^*(t)`` as input instead of searching for it.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from math import comb

from .admissible import AdmissibleTriple, OverlayR, tau
from .families import f_value
from .graph import Graph, complete_graph, join, triangle_count
from .graph6 import encode

__all__ = [
    "SmallNWarning",
    "ConstructionMismatch",
    "FormulaParams",
    "ConstructionReport",
    "build_Hn",
    "hn_graph",
    "build_extremal",
    "ex_formula",
    "g_formula",
    "zhu_chen_formula",
    "erdos_gallai_bound",
    "mixed_ex_formula",
    "large_n_threshold",
]


class SmallNWarning(UserWarning):
    """``n`` is below the heuristic threshold where the extremal reading applies."""


class ConstructionMismatch(RuntimeError):
    pass


def large_n_threshold(k: int) -> int:
    return 4 * k**3


def _warn_small(k: int, n: int) -> None:
    if n < large_n_threshold(k):
        warnings.warn(
            f"n={n} is below 4k^3={large_n_threshold(k)}; the value is exact arithmetic "
            "but the extremal statement is only claimed for large n",
            SmallNWarning,
            stacklevel=3,
        )


@dataclass(frozen=True)
class FormulaParams:
    k: int
    t: int
    n: int
    cstar: int | None = None
    ell_list: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.k < 3:
            raise ValueError("k must be >= 3")
        if self.t < 1:
            raise ValueError("t must be >= 1")
        if self.n < self.t:
            raise ValueError("n must be at least t")
        if self.ell_list is not None:
            ells = tuple(self.ell_list)
            object.__setattr__(self, "ell_list", ells)
            if len(ells) != self.t + 1:
                raise ValueError(f"ell_list needs t+1 = {self.t + 1} entries")
            if any(x < y for x, y in zip(ells, ells[1:])):
                raise ValueError("ell_list must be nonincreasing")
            if min(ells) < 3:
                raise ValueError("ell_list entries must be >= 3")

    def need_cstar(self) -> int:
        if self.cstar is None:
            raise ValueError("cstar must be supplied (from a search or a certificate)")
        return self.cstar


@dataclass(frozen=True)
class ConstructionReport:
    graph: Graph
    e_closed: int
    e_direct: int
    tri_closed: int
    tri_direct: int
    partition: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...], tuple[int, ...]]

    def to_dict(self) -> dict:
        X, Y, A, B = self.partition
        return {
            "graph6": encode(self.graph),
            "n": self.graph.n,
            "edges": self.e_direct,
            "triangles": self.tri_direct,
            "edges_closed_form": self.e_closed,
            "triangles_closed_form": self.tri_closed,
            "X": list(X),
            "Y": list(Y),
            "A": list(A),
            "B": list(B),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def hn_graph(P: Graph, Q: Graph, R: OverlayR, n: int, a_in_larger: bool = True) -> tuple[Graph, tuple]:
    """Assemble ``H_n(P, Q, R)`` without checking admissibility.

    ``A`` sits on the first vertices of ``X`` and ``B`` on the first of ``Y``;
    ``X`` is the larger side (``ceil(n/2)``) unless ``a_in_larger`` is False.
    Returns the graph and the partition ``(X, Y, A, B)``.
    """
    na, nb = P.n, Q.n
    if (R.size_a, R.size_b) != (na, nb):
        raise ValueError("R does not match the sizes of P and Q")
    if n < na + nb + 2 or n < 2 * max(na, nb):
        raise ValueError(f"n={n} too small: need n >= {max(na + nb + 2, 2 * max(na, nb))}")
    sx = (n + 1) // 2 if a_in_larger else n // 2
    sy = n - sx
    X, Y = range(sx), range(sx, n)
    A, B = range(na), range(sx, sx + nb)
    y_all = ((1 << sy) - 1) << sx
    x_all = (1 << sx) - 1
    b_mask = ((1 << nb) - 1) << sx
    a_mask = (1 << na) - 1
    ra, rb = R.nbr_a(), R.nbr_b()
    adj = [0] * n
    for x in X:
        adj[x] = y_all
    for y in Y:
        adj[y] = x_all
    for a in A:
        adj[a] = (y_all & ~b_mask) | (ra[a] << sx) | P.adj[a]
    for i, b in enumerate(B):
        adj[b] = (x_all & ~a_mask) | rb[i] | (Q.adj[i] << sx)
    return Graph(n, adj), (tuple(X), tuple(Y), tuple(A), tuple(B))


def build_Hn(tr: AdmissibleTriple, n: int, a_in_larger: bool = True) -> ConstructionReport:
    """``H_n(P, Q, R)`` for an admissible triple, with closed forms cross-checked."""
    P, Q, R = tr.P, tr.Q, tr.R
    na, nb = P.n, Q.n
    H, part = hn_graph(P, Q, R, n, a_in_larger)

    F = f_value(tr.k - 1, tr.k - 1)
    e_closed = len(part[0]) * len(part[1]) - na * nb + len(R) + 2 * F
    tri_closed = F * (n - na - nb) + triangle_count(P) + triangle_count(Q) + tau(P, Q, R)
    e_direct, tri_direct = H.edge_count(), triangle_count(H)
    if (e_closed, tri_closed) != (e_direct, tri_direct):
        raise ConstructionMismatch(
            f"closed forms (e={e_closed}, N3={tri_closed}) disagree with direct counts "
            f"(e={e_direct}, N3={tri_direct})"
        )
    return ConstructionReport(H, e_closed, e_direct, tri_closed, tri_direct, part)


def build_extremal(tr: AdmissibleTriple, t: int, n: int) -> Graph:
    """``K_t`` joined to ``H_{n-t}(P, Q, R)``; vertices ``0..t-1`` form the clique."""
    if t < 1:
        raise ValueError("t must be >= 1")
    return join(complete_graph(t), build_Hn(tr, n - t).graph)


def g_formula(p: FormulaParams) -> int:
    """``t floor(n^2/4) + f(k-1,k-1) n + c_k^*(t)``."""
    cstar = p.need_cstar()
    _warn_small(p.k, p.n)
    return p.t * (p.n * p.n // 4) + f_value(p.k - 1, p.k - 1) * p.n + cstar


def ex_formula(p: FormulaParams) -> int:
    """Triangle count of ``K_t`` joined to an optimal ``H_{n-t}``."""
    cstar = p.need_cstar()
    _warn_small(p.k, p.n)
    k, t, n = p.k, p.t, p.n
    m = n - t
    return comb(t, 3) + m * comb(t, 2) + t * (m * m // 4) + f_value(k - 1, k - 1) * m + cstar


def mixed_ex_formula(p: FormulaParams) -> int:
    """Disjoint union of friendship graphs of sizes ``ell_list``: only the smallest size matters."""
    if p.ell_list is None:
        raise ValueError("ell_list is required")
    return ex_formula(FormulaParams(p.ell_list[-1], p.t, p.n, p.cstar))


def zhu_chen_formula(k: int, n: int) -> int:
    """Maximum triangle count of an ``F_k``-free graph on ``n >= 4k^3`` vertices."""
    if k < 3:
        raise ValueError("k must be >= 3")
    _warn_small(k, n)
    if k % 2:
        return (n - 2 * k) * k * (k - 1) + 2 * comb(k, 3)
    # k (k - 3/2) = k (2k - 3) / 2, integral for even k
    return (n - 2 * k + 1) * (k * (2 * k - 3) // 2) + 2 * comb(k - 1, 3) + (k // 2 - 1) ** 2


def erdos_gallai_bound(k: int, n: int) -> int:
    """Edge bound for ``n``-vertex graphs with matching number at most ``k-1``."""
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    return max(comb(2 * k - 1, 2), comb(k - 1, 2) + (k - 1) * (n - k + 1))
