from __future__ import annotations

import json
import random
import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from friendship_turan.admissible import AdmissibleTriple, OverlayR
from friendship_turan.construct import (
    ConstructionMismatch,
    FormulaParams,
    SmallNWarning,
    build_extremal,
    build_Hn,
    erdos_gallai_bound,
    ex_formula,
    g_formula,
    hn_graph,
    large_n_threshold,
    mixed_ex_formula,
    zhu_chen_formula,
)
from friendship_turan.graph import clique_union, triangle_count

from oracles import naive_triangles, random_admissible_R

TWO_K3 = clique_union(2, 3)


def _triple(seed: int, p: float = 1.0) -> AdmissibleTriple:
    R = random_admissible_R(TWO_K3, TWO_K3, 3, random.Random(seed), p=p)
    return AdmissibleTriple(TWO_K3, TWO_K3, OverlayR.from_pairs(6, 6, R), 3)


@given(st.integers(0, 10**6), st.floats(0.1, 1.0), st.integers(14, 40), st.booleans())
def test_hn_structure(seed, p, n, a_in_larger):
    tr = _triple(seed, p)
    rep = build_Hn(tr, n, a_in_larger)
    H = rep.graph
    X, Y, A, B = rep.partition
    assert len(X) + len(Y) == n and abs(len(X) - len(Y)) <= 1
    assert set(A) <= set(X) and set(B) <= set(Y)
    R = set(tr.R.sorted_edges())
    for x in X:
        for y in Y:
            in_ab = x in A and y in B
            expected = (not in_ab) or (A.index(x), B.index(y)) in R
            assert H.has_edge(x, y) == expected
    for i, a in enumerate(A):
        for j, a2 in enumerate(A):
            assert H.has_edge(a, a2) == tr.P.has_edge(i, j)
    for x in X:
        for x2 in X:
            if x in A and x2 in A:
                continue
            assert not H.has_edge(x, x2)
    assert rep.e_direct == H.edge_count() and rep.tri_direct == triangle_count(H)
    if n <= 20:
        assert rep.tri_direct == naive_triangles(H)


def test_hn_rejects_small_n_and_mismatched_sizes():
    tr = _triple(0)
    with pytest.raises(ValueError):
        build_Hn(tr, 13)
    with pytest.raises(ValueError):
        hn_graph(TWO_K3, TWO_K3, OverlayR.from_pairs(6, 5, []), 20)


def test_report_json():
    d = json.loads(build_Hn(_triple(1), 20).to_json())
    assert d["edges"] == d["edges_closed_form"] and d["triangles"] == d["triangles_closed_form"]
    assert d["n"] == 20 and len(d["A"]) == 6


def test_mismatch_is_raised(monkeypatch):
    import friendship_turan.construct as c

    monkeypatch.setattr(c, "tau", lambda P, Q, R: -1)
    with pytest.raises(ConstructionMismatch):
        c.build_Hn(_triple(2), 20)


def test_extremal_shape(cstar3):
    tr = cstar3[1].optimizers[0]
    G = build_extremal(tr, 2, 30)
    assert G.n == 30
    for v in range(2):
        assert G.degree(v) == 29
    with pytest.raises(ValueError):
        build_extremal(tr, 0, 30)


@pytest.mark.parametrize("t", [1, 2, 3])
@pytest.mark.parametrize("n", [40, 41, 60])
def test_ex_formula_matches_construction(cstar3, t, n):
    tr = cstar3[t].optimizers[0]
    p = FormulaParams(3, t, n, cstar=cstar3[t].value)
    assert triangle_count(build_extremal(tr, t, n)) == ex_formula(p)


def test_g_formula_matches_hn(cstar3):
    for t in (1, 2, 3):
        for tr in cstar3[t].optimizers:
            for n in (20, 33):
                H = build_Hn(tr, n).graph
                assert t * H.edge_count() + triangle_count(H) == g_formula(FormulaParams(3, t, n, cstar=cstar3[t].value))


def test_formula_params_validation():
    with pytest.raises(ValueError):
        FormulaParams(3, 1, 50).need_cstar()
    with pytest.raises(ValueError):
        FormulaParams(2, 1, 50, cstar=0)
    with pytest.raises(ValueError):
        FormulaParams(3, 0, 50, cstar=0)
    with pytest.raises(ValueError):
        mixed_ex_formula(FormulaParams(3, 1, 50, cstar=-80))


def test_mixed_uses_smallest_size():
    p = FormulaParams(5, 2, 400, cstar=-92, ell_list=(7, 5, 3))
    assert mixed_ex_formula(p) == ex_formula(FormulaParams(3, 2, 400, cstar=-92))
    with pytest.raises(ValueError):
        FormulaParams(3, 2, 400, cstar=-92, ell_list=(5, 3))


def test_small_n_warning():
    with pytest.warns(SmallNWarning):
        g_formula(FormulaParams(3, 1, 10, cstar=-80))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        g_formula(FormulaParams(3, 1, large_n_threshold(3), cstar=-80))


def test_zhu_chen_values():
    # odd k: (n - 2k) k(k-1) + 2 C(k,3); even k: (n - 2k + 1) k(k - 3/2) + 2 C(k-1,3) + (k/2 - 1)^2
    assert zhu_chen_formula(3, 108) == (108 - 6) * 6 + 2
    assert zhu_chen_formula(4, 256) == (256 - 7) * 10 + 2 + 1
    assert zhu_chen_formula(5, 500) == (500 - 10) * 20 + 20
    with pytest.raises(ValueError):
        zhu_chen_formula(2, 50)


def test_erdos_gallai_values():
    assert erdos_gallai_bound(2, 3) == 3
    assert erdos_gallai_bound(2, 10) == 9
    assert erdos_gallai_bound(3, 7) == 11  # max(C(5,2), C(2,2) + 2*5)
    with pytest.raises(ValueError):
        erdos_gallai_bound(0, 5)
