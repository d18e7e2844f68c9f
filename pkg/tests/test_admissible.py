from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from friendship_turan.admissible import (
    AdmissibleTriple,
    OverlayR,
    PairSearch,
    canonical_triple,
    cstar_search,
    is_admissible,
    odd_k_lower_bound,
    phi,
    tau,
)
from friendship_turan.families import Family, enumerate_Pk, f_value
from friendship_turan.graph import clique_union, cycle_graph, triangle_count

from oracles import naive_admissible, naive_tau, random_admissible_R

TWO_K3 = clique_union(2, 3)


def _perfect_blocks(k: int) -> OverlayR:
    """Perfect matching between every pair of cliques of 2K_k, vertex x of one to x of the other."""
    return OverlayR.from_pairs(
        2 * k, 2 * k, [(i * k + x, j * k + x) for i in range(2) for j in range(2) for x in range(k)]
    )


def _naive_phi(P, Q, R: set, t: int, k: int) -> int:
    F = f_value(k - 1, k - 1)
    return (
        (2 * F - P.n * Q.n + len(R)) * t
        - F * (P.n + Q.n)
        + triangle_count(P)
        + triangle_count(Q)
        + naive_tau(P, Q, R)
    )


def test_overlay_basics():
    R = OverlayR.from_pairs(3, 2, [(0, 1), (2, 0), (2, 1)])
    assert R.nbr_a() == [0b10, 0, 0b11]
    assert R.nbr_b() == [0b100, 0b101]
    assert R.transpose().sorted_edges() == [(0, 2), (1, 0), (1, 2)]
    assert OverlayR.from_masks(3, 2, R.nbr_a()) == R
    with pytest.raises(ValueError):
        OverlayR.from_pairs(3, 2, [(0, 1), (0, 1)])
    with pytest.raises(ValueError):
        OverlayR.from_pairs(3, 2, [(3, 0)])


@st.composite
def overlays(draw, size_a=6, size_b=6):
    pairs = [(a, b) for a in range(size_a) for b in range(size_b)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return {p for p, c in zip(pairs, keep) if c}


@given(overlays())
def test_admissibility_against_oracle_k3(R):
    ok, why = is_admissible(TWO_K3, TWO_K3, OverlayR.from_pairs(6, 6, R), 3)
    assert ok == naive_admissible(TWO_K3, TWO_K3, R, 3)
    assert (why is None) == ok
    assert tau(TWO_K3, TWO_K3, OverlayR.from_pairs(6, 6, R)) == naive_tau(TWO_K3, TWO_K3, R)


@settings(max_examples=60)
@given(st.data())
def test_admissibility_against_oracle_k4(data):
    fam = enumerate_Pk(4)
    P = fam[data.draw(st.integers(0, len(fam) - 1))].graph
    Q = fam[data.draw(st.integers(0, len(fam) - 1))].graph
    R = data.draw(overlays(P.n, Q.n))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    R = {p for p in R if rng.random() < 0.3}
    Ro = OverlayR.from_pairs(P.n, Q.n, R)
    assert is_admissible(P, Q, Ro, 4)[0] == naive_admissible(P, Q, R, 4)
    assert tau(P, Q, Ro) == naive_tau(P, Q, R)
    assert phi(P, Q, Ro, 2, 4) == _naive_phi(P, Q, R, 2, 4)


def test_violation_reports_side():
    ok, why = is_admissible(TWO_K3, TWO_K3, OverlayR.from_pairs(6, 6, [(0, 0), (1, 0)]), 3)
    assert not ok and why.side == "B" and why.vertex == 0 and why.lhs == 3
    ok, why = is_admissible(TWO_K3, TWO_K3, OverlayR.from_pairs(6, 6, [(0, 0), (0, 1)]), 3)
    assert not ok and why.side == "A" and why.vertex == 0


def test_phi_rejects_non_members():
    with pytest.raises(ValueError):
        phi(cycle_graph(6), TWO_K3, OverlayR.from_pairs(6, 6, []), 1, 3)


@pytest.mark.parametrize("k", [3, 5])
@pytest.mark.parametrize("t", [1, 2, 3, 7])
def test_two_clique_identity(k, t):
    P = clique_union(2, k)
    R = _perfect_blocks(k)
    assert is_admissible(P, P, R, k)[0]
    assert phi(P, P, R, t, k) == odd_k_lower_bound(k, t) == _naive_phi(P, P, set(R.sorted_edges()), t, k)


def test_odd_k_lower_bound_values():
    assert [odd_k_lower_bound(3, t) for t in (1, 2, 3)] == [-80, -92, -104]
    with pytest.raises(ValueError):
        odd_k_lower_bound(4, 1)


def test_triple_validation_and_round_trip():
    tr = AdmissibleTriple(TWO_K3, TWO_K3, _perfect_blocks(3), 3)
    assert AdmissibleTriple.from_dict(json.loads(json.dumps(tr.to_dict())), 3) == tr
    assert tr.swapped().phi(2) == tr.phi(2)
    with pytest.raises(ValueError):
        AdmissibleTriple(TWO_K3, TWO_K3, OverlayR.from_pairs(6, 6, [(0, 0), (0, 1)]), 3)
    with pytest.raises(ValueError):
        AdmissibleTriple(TWO_K3, TWO_K3, OverlayR.from_pairs(6, 5, []), 3)


@settings(max_examples=40)
@given(st.randoms(use_true_random=False))
def test_canonical_triple_invariance(rnd):
    R = random_admissible_R(TWO_K3, TWO_K3, 3, random.Random(rnd.random()), p=rnd.uniform(0.2, 1))
    tr = AdmissibleTriple(TWO_K3, TWO_K3, OverlayR.from_pairs(6, 6, R), 3)
    pa = list(range(6))
    pb = list(range(6))
    rnd.shuffle(pa)
    rnd.shuffle(pb)
    P2, Q2 = TWO_K3.relabel(pa), TWO_K3.relabel(pb)
    moved = AdmissibleTriple(P2, Q2, OverlayR.from_pairs(6, 6, [(pa[a], pb[b]) for a, b in R]), 3)
    assert canonical_triple(moved) == canonical_triple(tr) == canonical_triple(tr.swapped())


def test_canonical_triple_separates():
    full = AdmissibleTriple(TWO_K3, TWO_K3, _perfect_blocks(3), 3)
    fewer = AdmissibleTriple(TWO_K3, TWO_K3, OverlayR.from_pairs(6, 6, full.R.sorted_edges()[1:]), 3)
    assert canonical_triple(full) != canonical_triple(fewer)


def _random_prefix(search: PairSearch, depth: int, rng: random.Random) -> list[int]:
    nbrB = [0] * search.nb
    prefix = []
    for a in range(depth):
        options = [S for S in search.cands[a] if search.feasible(a, S, nbrB)]
        S = rng.choice(options)
        prefix.append(S)
        for b in range(search.nb):
            if S >> b & 1:
                nbrB[b] |= 1 << a
    return prefix


def test_node_bound_audit():
    """The pruning bound never undercuts a completion, on 100 random subtrees."""
    rng = random.Random(42)
    fam4 = enumerate_Pk(4)
    audited = 0
    while audited < 100:
        if rng.random() < 0.5:
            P = Q = TWO_K3
            k = 3
            depth = rng.randint(2, 5)
        else:
            P, Q = rng.choice(fam4.members).graph, rng.choice(fam4.members).graph
            k = 4
            depth = rng.randint(P.n - 3, P.n - 1)
        t = rng.randint(1, 4)
        search = PairSearch(P, Q, k, t, symmetry=False)
        prefix = _random_prefix(search, depth, rng)
        values = [v for v, _ in search.completions(prefix)]
        if not values:
            continue
        assert search.node_bound(prefix) >= max(values)
        for v, nbrA in rng.sample(list(search.completions(prefix)), min(3, len(values))):
            R = OverlayR.from_masks(P.n, Q.n, nbrA)
            assert v == phi(P, Q, R, t, k)
        audited += 1


@pytest.mark.parametrize("t", [1, 2, 3])
def test_random_triples_never_beat_optimum(cstar3, t):
    rng = random.Random(t)
    best = cstar3[t].value
    hit = False
    for _ in range(200):
        R = random_admissible_R(TWO_K3, TWO_K3, 3, rng, p=rng.uniform(0.3, 1))
        v = _naive_phi(TWO_K3, TWO_K3, R, t, 3)
        assert v <= best
        hit |= v == best
    assert [tr.phi(t) for tr in cstar3[t].optimizers] == [best] * len(cstar3[t].optimizers)


def test_k3_optimizer_classes(cstar3):
    for t, res in cstar3.items():
        assert res.value == -12 * t - 68
        assert res.exhaustive and res.optimizers_complete
        assert len(res.optimizers) == 3
        labels = [canonical_triple(tr) for tr in res.optimizers]
        assert labels == sorted(set(labels))
        assert all(len(tr.R) == 12 for tr in res.optimizers)


def test_result_serialisation(cstar3):
    d = cstar3[1].to_dict()
    assert "wall_time" not in d["stats"]
    assert "wall_time" in cstar3[1].to_dict(timing=True)["stats"]
    assert json.loads(cstar3[1].to_json()) == d


def test_threads_do_not_change_result(family3, cstar3):
    res = cstar_search(3, 1, family3, threads=2)
    assert res.to_dict() == cstar3[1].to_dict()


def test_search_guards(family3):
    with pytest.raises(ValueError):
        cstar_search(2, 1)
    with pytest.raises(ValueError):
        cstar_search(3, 0)
    with pytest.raises(ValueError):
        cstar_search(3, 1, family3, threads=0)
    partial = Family(3, family3.members, exhaustive=False)
    with pytest.raises(ValueError):
        cstar_search(3, 1, partial)
    res = cstar_search(3, 1, partial, allow_partial_family=True)
    assert res.value == -80 and not res.exhaustive


def test_budget_exhaustion_is_reported(family3):
    res = cstar_search(3, 1, family3, budget=50)
    assert not res.exhaustive
    assert res.value is None or res.value <= -80


def test_strict_tie_mode(family3):
    res = cstar_search(3, 1, family3, max_ties=1)
    assert res.value == -80 and not res.optimizers_complete and res.optimizers
