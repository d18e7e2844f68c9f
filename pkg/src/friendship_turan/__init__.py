"""Exact search and verification for triangle counts in graphs without disjoint friendship graphs."""

from .admissible import (
    AdmissibleTriple,
    CStarResult,
    OverlayR,
    canonical_triple,
    cstar_search,
    is_admissible,
    odd_k_lower_bound,
    phi,
    tau,
)
from .canon import canonical_form, is_isomorphic
from .construct import (
    FormulaParams,
    build_extremal,
    build_Hn,
    hn_graph,
    erdos_gallai_bound,
    ex_formula,
    g_formula,
    mixed_ex_formula,
    zhu_chen_formula,
)
from .families import FamilyMember, enumerate_Pk, f_bruteforce, f_value
from .graph import (
    Graph,
    clique_union,
    complete_graph,
    disjoint_union,
    edge_count,
    friendship_graph,
    induced_subgraph,
    join,
    triangle_count,
)
from .graph6 import decode as graph6_decode
from .graph6 import encode as graph6_encode
from .matching import has_matching_of_size, max_matching
from .verify import explore_small_g, is_Fk_free, max_disjoint_Fk, verify_certificate

__version__ = "0.1.0"
