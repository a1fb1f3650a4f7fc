"""Graph container, builders, and the extremal-family constructor."""
import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kfs import (
    MAX_VERTICES,
    GnkParams,
    Graph,
    add_edge,
    build_base_family_member,
    build_gnk,
    complement,
    complete,
    disjoint_union,
    empty,
    from_edges,
    gnk_blocks,
    induced_subgraph,
    join,
    random_graph,
    relabel,
    remove_edge,
)
from oracles import gnk_degree_multiset, gnk_edge_count

FIXTURES = Path(__file__).parent / "fixtures"


# -- strategies -------------------------------------------------------------

def graphs(max_n=10):
    @st.composite
    def _build(draw):
        n = draw(st.integers(0, max_n))
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        picked = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
        return from_edges(n, picked)

    return _build()


# -- container basics -------------------------------------------------------

def test_from_edges_roundtrip():
    g = from_edges(4, [(0, 1), (2, 3), (1, 2)])
    assert g.m == 3
    assert tuple(g.edges()) == ((0, 1), (1, 2), (2, 3))
    assert g.has_edge(1, 0) and not g.has_edge(0, 2)
    assert g.degrees() == (1, 2, 2, 1)


def test_from_edges_rejects_bad_input():
    with pytest.raises(ValueError):
        from_edges(3, [(0, 0)])
    with pytest.raises(ValueError):
        from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        from_edges(3, [(0, 3)])
    with pytest.raises(ValueError):
        from_edges(-1, [])
    with pytest.raises(ValueError):
        from_edges(MAX_VERTICES + 1, [])


def test_graph_equality_and_hash():
    g1 = from_edges(3, [(0, 1)])
    g2 = from_edges(3, [(0, 1)])
    assert g1 == g2 and hash(g1) == hash(g2)
    assert g1 != from_edges(3, [(0, 2)])
    assert g1 != from_edges(4, [(0, 1)])


def test_complete_and_empty():
    assert complete(5).m == 10
    assert complete(5).degrees() == (4,) * 5
    assert empty(5).m == 0
    assert complete(0).n == 0 and complete(1).m == 0


def test_components():
    g = from_edges(6, [(0, 1), (1, 2), (4, 5)])
    comps = g.components()
    assert sorted(sorted(c) for c in comps) == [[0, 1, 2], [3], [4, 5]]
    assert not g.is_connected()
    assert complete(4).is_connected()
    assert empty(0).is_connected()


def test_component_masks_within():
    g = from_edges(5, [(0, 1), (1, 2), (3, 4)])
    # restricting to {0, 2, 3, 4} severs 0 from 2
    masks = g.component_masks(within=0b11101)
    assert sorted(masks) == sorted([0b00001, 0b00100, 0b11000])


def test_dense_adjacency_and_masks():
    g = from_edges(3, [(0, 1), (1, 2)])
    a = g.dense_adjacency()
    assert a.dtype == np.float64
    assert a.tolist() == [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
    assert g.adjacency_masks().tolist() == [0b010, 0b101, 0b010]


def test_to_csr_shape():
    g = from_edges(4, [(0, 1), (0, 2), (2, 3)])
    indptr, indices = g.to_csr()
    assert indptr.tolist() == [0, 2, 3, 5, 6]
    assert indices.tolist() == [1, 2, 0, 0, 3, 2]


@given(graphs())
def test_relabel_preserves_structure(g):
    perm = list(reversed(range(g.n)))
    h = relabel(g, perm)
    assert h.m == g.m
    assert sorted(h.degrees()) == sorted(g.degrees())
    assert relabel(h, perm) == g


@given(graphs())
def test_complement_involution(g):
    assert complement(complement(g)) == g
    assert g.m + complement(g).m == g.n * (g.n - 1) // 2


def test_join_degrees():
    g = join(complete(2), empty(3))
    assert g.n == 5
    assert sorted(g.degrees()) == [2, 2, 2, 4, 4]
    assert g.m == 1 + 6


def test_disjoint_union():
    g = disjoint_union(complete(3), complete(2))
    assert g.n == 5 and g.m == 4
    assert len(g.components()) == 2


def test_add_remove_edge():
    g = from_edges(3, [(0, 1)])
    g2 = add_edge(g, 1, 2)
    assert g2.has_edge(1, 2) and not g.has_edge(1, 2)
    assert remove_edge(g2, 1, 2) == g
    with pytest.raises(ValueError):
        add_edge(g, 0, 1)
    with pytest.raises(ValueError):
        remove_edge(g, 0, 2)
    with pytest.raises(ValueError):
        add_edge(g, 2, 2)


def test_induced_subgraph_on_triangle_plus_tail():
    g = from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    h = induced_subgraph(g, [0, 2, 3])
    assert h.n == 3
    assert tuple(h.edges()) == ((0, 1), (1, 2))  # relabeled 0->0, 2->1, 3->2


def test_random_graph_determinism_and_density():
    g1 = random_graph(30, 0.4, np.random.default_rng(7))
    g2 = random_graph(30, 0.4, np.random.default_rng(7))
    assert g1 == g2
    assert abs(g1.m / (30 * 29 / 2) - 0.4) < 0.12
    assert random_graph(10, 0.0, np.random.default_rng(1)).m == 0
    assert random_graph(10, 1.0, np.random.default_rng(1)).m == 45
    with pytest.raises(ValueError):
        random_graph(5, 1.5, np.random.default_rng(1))


# -- extremal family --------------------------------------------------------

def test_gnk_params_validation():
    GnkParams(9, 2)
    with pytest.raises(ValueError):
        GnkParams(5, 2)  # below 3k
    with pytest.raises(ValueError):
        GnkParams(9, 0)


def test_gnk_blocks_partition():
    dom, ind, cli = gnk_blocks(10, 2)
    assert list(dom) == [0, 1]
    assert list(ind) == [2, 3, 4]
    assert list(cli) == [5, 6, 7, 8, 9]


def test_build_gnk_small_by_hand():
    g = build_gnk(7, 2)
    # K_2 join (empty 3-block + K_2 clique), one attachment edge
    assert g.degrees() == (6, 6, 3, 2, 2, 4, 3)
    assert g.m == 13
    assert g.has_edge(2, 5)      # the attachment
    assert not g.has_edge(2, 3)  # independent block stays independent


def test_build_gnk_against_frozen_degree_table():
    table = json.loads((FIXTURES / "gnk_degree_sequences.json").read_text())
    for key, expect in table.items():
        n, k = map(int, key.split(","))
        g = build_gnk(n, k)
        assert g.m == expect["edges"], (n, k)
        assert sorted(g.degrees()) == expect["degrees"], (n, k)


@given(st.integers(1, 6), st.integers(0, 40))
def test_build_gnk_degree_formula(k, extra):
    n = 3 * k + extra
    g = build_gnk(n, k)
    assert sorted(g.degrees()) == gnk_degree_multiset(n, k)
    assert g.m == gnk_edge_count(n, k)
    assert g.min_degree() == k


def test_build_base_family_member_patterns():
    # attachments name (independent vertex, clique target) pairs
    g_ref = build_base_family_member(16, 3, [(0, 0), (0, 1)])
    assert g_ref == build_gnk(16, 3)
    g_alt = build_base_family_member(16, 3, [(0, 0), (1, 1)])
    assert g_alt != g_ref
    assert sorted(g_alt.degrees()) != sorted(g_ref.degrees())
    with pytest.raises(ValueError):
        build_base_family_member(16, 3, [(0, 0)])  # needs exactly k-1
    with pytest.raises(ValueError):
        build_base_family_member(16, 3, [(0, 0), (0, 0)])  # duplicate target
    with pytest.raises(ValueError):
        build_base_family_member(16, 3, [(0, 0), (7, 1)])  # vertex out of block
