"""
Chvátal–Hanson values and the families P_k
==========================================

f(nu, Delta) is the largest edge count of a graph with matching number at
most nu and maximum degree at most Delta. P_k collects the graphs attaining
f(k-1, k-1) with no isolated vertex.
"""

from friendship_turan import enumerate_Pk, f_bruteforce, f_value
from friendship_turan.graph6 import encode

# the closed form against exhaustive search on the small cases
for nu in (1, 2):
    for delta in (1, 2, 3):
        brute, witness = f_bruteforce(nu, delta)
        print(f"f({nu},{delta}) = {f_value(nu, delta)}  brute force {brute}  witness {encode(witness)}")

# the diagonal values that enter every construction below
print("f(k-1,k-1), k=3..12:", [f_value(k - 1, k - 1) for k in range(3, 13)])

# P_3 is the single graph 2K_3; P_4 already has seven members
for k in (2, 3, 4):
    fam = enumerate_Pk(k)
    print(f"P_{k}: {len(fam)} member(s)", [encode(m.graph) for m in fam])
