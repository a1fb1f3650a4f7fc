"""Deficiency certificates, the matching gadget, and k-factor decisions."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kfs import (
    ClassWitness,
    DeficiencyWitness,
    GadgetMap,
    Graph,
    build_gnk,
    complete,
    deficiency,
    disjoint_union,
    empty,
    from_edges,
    has_k_factor,
    in_class_Gkn,
    in_class_Gnk_big,
    max_matching,
    random_graph,
    search_certificate,
    tutte_gadget,
    validate_factor,
)
from oracles import (
    deficiency_value,
    has_k_factor_bruteforce,
    max_deficiency,
    max_matching_size,
)


# -- deficiency evaluator ---------------------------------------------------

def test_deficiency_hand_case_extremal_7_2():
    g = build_gnk(7, 2)
    w = deficiency(g, [0, 1], [2, 3, 4], 2)
    assert (w.tau, w.q, w.delta) == (1, 1, 2)
    w0 = deficiency(g, [], [2, 3, 4], 2)
    assert w0.delta == 0
    assert deficiency(g, [], [], 2).delta == deficiency(g, [], [], 2).tau


def test_deficiency_empty_sets_on_odd_component():
    # K_3 with k=2: single component, e(C,T)=0, k|C| even -> tau 0
    w = deficiency(complete(3), [], [], 2)
    assert w.delta == 0 and w.q == 1
    # K_3 with k=3: k|C| = 9 odd -> tau 1
    w = deficiency(complete(3), [], [], 3)
    assert w.delta == 1


def test_deficiency_validation():
    g = complete(4)
    with pytest.raises(ValueError):
        deficiency(g, [0], [0], 2)      # overlap
    with pytest.raises(ValueError):
        deficiency(g, [0, 0], [1], 2)   # duplicate
    with pytest.raises(ValueError):
        deficiency(g, [9], [], 2)       # out of range
    with pytest.raises(ValueError):
        deficiency(g, [], [], 0)


def test_deficiency_matches_oracle_random():
    rng = np.random.default_rng(42)
    for _ in range(300):
        n = int(rng.integers(2, 10))
        g = random_graph(n, float(rng.uniform(0.1, 0.9)), rng)
        k = int(rng.integers(2, 4))
        labels = rng.integers(0, 3, size=n)
        S = [v for v in range(n) if labels[v] == 1]
        T = [v for v in range(n) if labels[v] == 2]
        assert deficiency(g, S, T, k).delta == deficiency_value(g, S, T, k)


@given(st.integers(2, 9), st.integers(2, 3), st.integers(0, 2**32 - 1))
@settings(max_examples=100)
def test_deficiency_parity_invariant(n, k, seed):
    # delta(S,T) is congruent to k*n mod 2 for every split
    rng = np.random.default_rng(seed)
    g = random_graph(n, float(rng.uniform(0, 1)), rng)
    labels = rng.integers(0, 3, size=n)
    S = [v for v in range(n) if labels[v] == 1]
    T = [v for v in range(n) if labels[v] == 2]
    assert deficiency(g, S, T, k).delta % 2 == (k * n) % 2


# -- exhaustive certificate search -----------------------------------------

def test_search_certificate_on_extremal_graphs():
    w = search_certificate(build_gnk(7, 2), 2)
    assert isinstance(w, DeficiencyWitness)
    assert w.delta == 2
    assert w.S == (0, 1) and w.T == (2, 3, 4)
    w = search_certificate(build_gnk(9, 2), 2)
    assert w.delta == 2
    assert search_certificate(build_gnk(12, 3), 3).delta == 2


def test_search_certificate_none_when_factor_exists():
    assert search_certificate(complete(6), 2) is None
    assert search_certificate(complete(4), 3) is None  # K_4 is 3-regular


def test_search_certificate_matches_bruteforce_max():
    rng = np.random.default_rng(7)
    for _ in range(120):
        n = int(rng.integers(2, 8))
        g = random_graph(n, float(rng.uniform(0.1, 0.9)), rng)
        k = int(rng.integers(2, 4))
        best = max_deficiency(g, k)
        w = search_certificate(g, k)
        if best <= 0:
            assert w is None
        else:
            assert w is not None and w.delta == best
            # the returned witness must evaluate to its claimed value
            assert deficiency(g, w.S, w.T, k).delta == best


def test_search_certificate_cap():
    with pytest.raises(ValueError):
        search_certificate(complete(17), 2, cap=16)
    with pytest.raises(ValueError):
        search_certificate(complete(15), 2, cap=14)


def test_search_certificate_tie_break_deterministic():
    # 2K_3 with k=3: the maximum deficiency is 6, attained by several
    # splits; the tie-break picks the smallest support, then lex order
    g = disjoint_union(complete(3), complete(3))
    w1 = search_certificate(g, 3)
    assert w1 == search_certificate(g, 3)
    assert w1.delta == max_deficiency(g, 3) == 6
    assert w1.S == () and w1.T == (0, 1, 3, 4)
    wl = search_certificate(g, 3, prefer_large=True)
    assert wl.delta == 6
    assert wl.S == () and wl.T == (0, 1, 2, 3, 4, 5)


# -- matching ---------------------------------------------------------------

def test_max_matching_hand_cases(c5, petersen, k33):
    assert len(max_matching(c5)) == 2
    assert len(max_matching(petersen)) == 5
    assert len(max_matching(k33)) == 3
    assert max_matching(empty(4)) == set()
    assert len(max_matching(from_edges(4, [(0, 1), (1, 2), (2, 3)]))) == 2


def test_max_matching_is_a_matching():
    rng = np.random.default_rng(11)
    for _ in range(200):
        n = int(rng.integers(2, 14))
        g = random_graph(n, float(rng.uniform(0.1, 0.9)), rng)
        mm = max_matching(g)
        used = set()
        for u, v in mm:
            assert g.has_edge(u, v)
            assert u not in used and v not in used
            used.update((u, v))
        assert len(mm) == max_matching_size(g)


def test_max_matching_blossom_heavy():
    # odd cycles force blossom contraction: two triangles joined by a path
    g = from_edges(
        8, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 5)]
    )
    assert len(max_matching(g)) == max_matching_size(g) == 4


# -- gadget -----------------------------------------------------------------

def test_gadget_shape_k4():
    gm = tutte_gadget(complete(4), 1)
    assert isinstance(gm, GadgetMap)
    # per vertex: 3 externals + (3-1) internals
    assert gm.graph.n == 4 * 5
    assert len(gm.cross) == 6
    assert all(len(gm.externals[v]) == 3 for v in range(4))
    assert all(len(gm.internals[v]) == 2 for v in range(4))
    for (u, v), (a, b) in gm.cross.items():
        assert gm.graph.has_edge(a, b)
        assert a in gm.externals[u] and b in gm.externals[v]


def test_gadget_internal_external_biclique():
    g = from_edges(3, [(0, 1), (1, 2)])
    gm = tutte_gadget(g, 1)
    for v in range(3):
        for i in gm.internals[v]:
            for e in gm.externals[v]:
                assert gm.graph.has_edge(i, e)
            # internals never touch other gadgets
            for w in range(3):
                if w != v:
                    for e2 in gm.externals[w]:
                        assert not gm.graph.has_edge(i, e2)


def test_gadget_requires_min_degree():
    with pytest.raises(ValueError):
        tutte_gadget(from_edges(3, [(0, 1)]), 2)


def test_gadget_matching_encodes_factor():
    # perfect matching of the gadget <-> k-factor; matched cross edges
    # are exactly the factor edges
    g = complete(4)
    gm = tutte_gadget(g, 2)
    pm = max_matching(gm.graph)
    assert 2 * len(pm) == gm.graph.n
    norm = {tuple(sorted(e)) for e in pm}
    factor = [
        edge
        for edge, cross in gm.cross.items()
        if tuple(sorted(cross)) in norm
    ]
    validate_factor(g, factor, 2)


# -- the full decision ------------------------------------------------------

def test_has_k_factor_hand_cases(petersen, c5, k33):
    assert has_k_factor(complete(4), 3).exists          # K_4 itself
    assert has_k_factor(petersen, 3).exists             # 3-regular
    assert has_k_factor(petersen, 2).exists             # two 5-cycles
    assert has_k_factor(c5, 2).exists                   # the cycle itself
    assert not has_k_factor(c5, 1).exists               # odd order
    assert has_k_factor(k33, 1).exists
    assert has_k_factor(k33, 2).exists
    assert has_k_factor(k33, 3).exists
    assert not has_k_factor(complete(5), 3).exists      # kn odd


def test_has_k_factor_outcome_contents():
    out = has_k_factor(complete(6), 3)
    assert out.exists and out.factor is not None
    validate_factor(complete(6), out.factor, 3)
    d = out.to_dict()
    assert d["exists"] and len(d["factor"]) == 9

    out = has_k_factor(build_gnk(9, 2), 2)
    assert not out.exists
    assert out.witness is not None and out.witness.delta > 0
    assert deficiency(build_gnk(9, 2), out.witness.S, out.witness.T, 2).delta == out.witness.delta


def test_has_k_factor_fast_paths():
    out = has_k_factor(complete(5), 3)
    assert not out.exists and out.certified_by == "parity"
    assert out.witness is not None  # parity still yields a deficiency witness
    out = has_k_factor(from_edges(4, [(0, 1), (1, 2), (2, 3)]), 2)
    assert not out.exists and out.certified_by == "degree"
    assert out.witness.delta > 0
    assert has_k_factor(empty(0), 2).exists  # vacuous


def test_has_k_factor_matches_bruteforce():
    rng = np.random.default_rng(21)
    for _ in range(250):
        n = int(rng.integers(2, 8))
        g = random_graph(n, float(rng.uniform(0.1, 0.95)), rng)
        for k in (1, 2, 3):
            out = has_k_factor(g, k)
            assert out.exists == has_k_factor_bruteforce(g, k), (g.edges(), k)
            if out.exists:
                validate_factor(g, out.factor, k)
            elif out.witness is not None:
                assert deficiency(g, out.witness.S, out.witness.T, k).delta > 0


@given(st.integers(2, 10), st.integers(1, 3), st.integers(0, 2**32 - 1))
@settings(max_examples=120)
def test_factor_routes_agree_property(n, k, seed):
    rng = np.random.default_rng(seed)
    g = random_graph(n, float(rng.uniform(0, 1)), rng)
    out = has_k_factor(g, k)  # raises RuntimeError internally on route clash
    if out.exists:
        validate_factor(g, out.factor, k)


def test_has_k_factor_above_cap_uses_matching_only():
    g = build_gnk(40, 2)
    out = has_k_factor(g, 2)
    assert not out.exists
    assert out.certified_by == "matching"
    assert out.witness is None  # exhaustive witness search is capped
    out = has_k_factor(complete(40), 3)
    assert out.exists and len(out.factor) == 60
    validate_factor(complete(40), out.factor, 3)


def test_validate_factor_rejects_bad_input():
    g = complete(4)
    with pytest.raises(ValueError):
        validate_factor(g, [(0, 1)], 2)               # degrees wrong
    with pytest.raises(ValueError):
        validate_factor(g, [(0, 1), (0, 1), (2, 3), (2, 3)], 2)  # duplicates
    ok = has_k_factor(g, 2).factor
    validate_factor(g, ok, 2)
    with pytest.raises(ValueError):
        validate_factor(from_edges(4, [(0, 1), (2, 3)]), [(0, 1), (0, 2), (1, 3), (2, 3)], 2)


# -- structural classes -----------------------------------------------------

def test_class_Gkn_membership_extremal():
    # the k+1 independent vertices of the extremal graph have degree sum
    # k(k+1) + (k-1) = k^2 + 2k - 1, exactly the class boundary
    for (n, k) in [(9, 2), (16, 3), (24, 4)]:
        w = in_class_Gkn(build_gnk(n, k), k)
        assert isinstance(w, ClassWitness)
        assert w.kind == "B-set"
        assert w.value == k * k + 2 * k - 1
        assert w.slack == 0


def test_class_Gkn_non_membership():
    assert in_class_Gkn(complete(10), 2) is None
    assert in_class_Gkn(complete(10), 3) is None  # degree sums far above bound


def test_class_Gkn_validation():
    with pytest.raises(ValueError):
        in_class_Gkn(complete(2), 2)  # needs at least k+1 vertices
    with pytest.raises(ValueError):
        in_class_Gkn(from_edges(4, [(0, 1)]), 2)  # min degree below k


def test_class_Gnk_big_extremal_members():
    for (n, k) in [(9, 2), (12, 2), (16, 3)]:
        w = in_class_Gnk_big(build_gnk(n, k), k, cap=16)
        assert w is not None and w.kind == "ST-pair"
        assert w.slack >= 0


def test_class_Gnk_big_two_triangles():
    # 2K_3 has a 2-factor (each triangle) yet satisfies the class
    # inequality with S empty, T a triangle: class membership does not
    # refute factor existence
    g = disjoint_union(complete(3), complete(3))
    assert has_k_factor(g, 2).exists
    w = in_class_Gnk_big(g, 2)
    assert w is not None


def test_class_Gnk_big_rejects_low_degree():
    assert in_class_Gnk_big(from_edges(3, [(0, 1)]), 2) is None
