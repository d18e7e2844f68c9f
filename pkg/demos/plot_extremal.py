"""
From an optimal triple to an extremal graph
===========================================

An optimal triple is blown up into H_n, a near-balanced complete bipartite
graph with P and Q planted inside the halves. Joining K_t gives a graph with
no t+1 vertex-disjoint copies of F_k whose triangle count meets the formula.
"""

import warnings

import numpy as np

from friendship_turan import (
    FormulaParams,
    build_extremal,
    build_Hn,
    cstar_search,
    ex_formula,
    is_Fk_free,
    max_disjoint_Fk,
    triangle_count,
)

warnings.simplefilter("ignore")  # n here is below the range where the formula is claimed

t, n = 2, 60
res = cstar_search(3, t)
tr = res.optimizers[0]

rep = build_Hn(tr, n - t)
print(f"H_{n - t}: e = {rep.e_direct} (closed form {rep.e_closed}), "
      f"N3 = {rep.tri_direct} (closed form {rep.tri_closed}), F_3-free: {is_Fk_free(rep.graph, 3).free}")

G = build_extremal(tr, t, n)
print(f"K_{t} + H_{n - t}: N3 = {triangle_count(G)}, formula {ex_formula(FormulaParams(3, t, n, cstar=res.value))}")

count, witness, exact = max_disjoint_Fk(G, 3)
print(f"max disjoint F_3 copies = {count} (exact: {exact}); centres {[c for c, _ in witness.copies]}")

# triangle counts per vertex: the clique vertices carry most of them
A = np.zeros((n, n), dtype=int)
for u, v in G.edges():
    A[u, v] = A[v, u] = 1
per_vertex = np.diag(A @ A @ A) // 2
print("triangles at clique vertices:", per_vertex[:t], " median elsewhere:", int(np.median(per_vertex[t:])))
