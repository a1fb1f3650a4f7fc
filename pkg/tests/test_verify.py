"""Theorem dispatch, structural recognition, and the campaign drivers."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kfs import (
    Verdict,
    add_edge,
    build_base_family_member,
    build_gnk,
    complete,
    disjoint_union,
    edge_addition_sweep,
    exhaustive_small_campaign,
    empty,
    from_edges,
    in_theorem_range,
    lemma1_monotonicity_suite,
    lemma2_rewiring_suite,
    lemma5_restricted_extremality,
    random_campaign,
    recognize_gnk,
    relabel,
    resolve_jobs,
    theorem_range_min,
    verify_theorem_on,
)
from kfs.report import report_json_bytes


# -- range and recognition --------------------------------------------------

def test_theorem_range_min_values():
    assert theorem_range_min(2) == 50   # max(4+12+7, 50)
    assert theorem_range_min(3) == 70   # max(9+18+7, 70)
    assert theorem_range_min(4) == 90
    assert theorem_range_min(7) == max(49 + 42 + 7, 150)
    assert in_theorem_range(50, 2) and not in_theorem_range(49, 2)
    assert not in_theorem_range(71, 3)  # kn odd
    assert in_theorem_range(70, 3)


def test_recognize_gnk_positive():
    for (n, k) in [(7, 2), (9, 2), (16, 3), (24, 4), (12, 1)]:
        assert recognize_gnk(build_gnk(n, k), k), (n, k)


def test_recognize_gnk_relabeled():
    rng = np.random.default_rng(3)
    g = build_gnk(13, 2)
    for _ in range(25):
        perm = rng.permutation(13).tolist()
        assert recognize_gnk(relabel(g, perm), 2)


def test_recognize_gnk_negative():
    assert not recognize_gnk(complete(9), 2)
    assert not recognize_gnk(build_gnk(9, 2), 3)
    assert not recognize_gnk(empty(9), 2)
    # perturbed member: an extra edge inside the independent block
    g = build_gnk(12, 2)
    h = add_edge(g, 3, 4)
    assert not recognize_gnk(h, 2)
    # non-reference family member: attachment split across two vertices
    alt = build_base_family_member(16, 3, [(0, 0), (1, 1)])
    assert not recognize_gnk(alt, 3)


@given(st.integers(1, 4), st.integers(0, 12), st.integers(0, 2**32 - 1))
@settings(max_examples=60)
def test_recognize_gnk_permutation_invariant(k, extra, seed):
    n = 3 * k + extra
    g = build_gnk(n, k)
    perm = np.random.default_rng(seed).permutation(n).tolist()
    assert recognize_gnk(relabel(g, perm), k)


# -- single-graph dispatch --------------------------------------------------

def test_verify_theorem_on_complete():
    chk = verify_theorem_on(complete(10), 2)
    assert chk.verdict is Verdict.FACTOR_FOUND
    assert chk.evidence["factor"]["exists"]
    assert chk.evidence["comparison"] == "Greater"


def test_verify_theorem_on_vacuous_parity():
    chk = verify_theorem_on(complete(9), 3)  # kn odd
    assert chk.verdict is Verdict.VACUOUS_HYPOTHESIS
    assert not chk.evidence["kn_even"]


def test_verify_theorem_on_vacuous_degree():
    g = from_edges(10, [(0, 1)] + [(i, i + 1) for i in range(1, 9)])
    chk = verify_theorem_on(g, 2)
    assert chk.verdict is Verdict.VACUOUS_HYPOTHESIS
    assert chk.evidence["min_degree"] < 2


def test_verify_theorem_on_vacuous_small_radius():
    # connected, min degree 2, but rho far below the reference
    cycle = from_edges(12, [(i, (i + 1) % 12) for i in range(12)])
    chk = verify_theorem_on(cycle, 2)
    assert chk.verdict is Verdict.VACUOUS_HYPOTHESIS
    assert chk.evidence["comparison"] == "Less"


def test_verify_theorem_on_extremal_itself():
    chk = verify_theorem_on(build_gnk(12, 2), 2)
    assert chk.verdict is Verdict.EXTREMAL_EQUALITY
    assert chk.evidence["isomorphic_to_reference"]


def test_verify_theorem_on_small_order_vacuous():
    chk = verify_theorem_on(complete(5), 2)  # below 3k
    assert chk.verdict is Verdict.VACUOUS_HYPOTHESIS


def test_verify_theorem_on_rejects_k1():
    with pytest.raises(ValueError):
        verify_theorem_on(complete(4), 1)


def test_verify_theorem_on_reference_mismatch():
    with pytest.raises(ValueError):
        verify_theorem_on(complete(10), 2, reference=build_gnk(12, 2))


def test_verify_theorem_complement_bound_evidence():
    chk = verify_theorem_on(complete(12), 2)
    cb = chk.evidence["complement_bound"]
    assert cb["ok"] and cb["complement_edges"] == 0


# -- campaigns --------------------------------------------------------------

def test_edge_addition_sweep_forced_small():
    rep = edge_addition_sweep(12, 2, force=True)
    assert rep.passed
    assert rep.counters["FactorFound"] == rep.counters["edges_swept"] > 0
    assert rep.campaign == "edge-addition-sweep"
    assert {"edge_u", "edge_v", "verdict", "rho_lo", "rho_hi", "margin"} <= set(rep.details[0])


def test_edge_addition_sweep_validation():
    with pytest.raises(ValueError):
        edge_addition_sweep(13, 3)  # kn odd: no augmentation can have a 3-factor
    with pytest.raises(ValueError):
        edge_addition_sweep(12, 2)  # below range without force


def test_lemma5_validation_and_force():
    with pytest.raises(ValueError):
        lemma5_restricted_extremality(30, 5)  # k out of supported range
    with pytest.raises(ValueError):
        lemma5_restricted_extremality(10, 3)  # below floor without force
    rep = lemma5_restricted_extremality(13, 3, force=True)
    assert rep.params["force"] is True


def test_lemma5_16_3_has_nontrivial_classes():
    rep = lemma5_restricted_extremality(16, 3)
    assert rep.passed
    assert rep.counters["classes_total"] >= 3
    assert rep.counters["classes_nonreference"] >= 2
    assert rep.counters["degree_class_members"] == rep.counters["classes_total"]
    margins = [d["margin"] for d in rep.details if not d["is_reference"]]
    assert margins and min(margins) > 0


def test_exhaustive_labeled_n5():
    rep = exhaustive_small_campaign(2, n=5)
    assert rep.passed
    assert rep.counters["graphs_checked"] == 1024
    assert rep.counters["equivalence_checked"] == 1024
    assert rep.counters["oracle_disagreements"] == 0
    assert rep.counters["parity_violations"] == 0


def test_exhaustive_validation():
    with pytest.raises(ValueError):
        exhaustive_small_campaign(2)  # neither n nor source
    with pytest.raises(ValueError):
        exhaustive_small_campaign(2, n=5, source="x.g6")  # both
    with pytest.raises(ValueError):
        exhaustive_small_campaign(2, n=7)  # labeled enumeration capped at 6
    with pytest.raises(ValueError):
        exhaustive_small_campaign(1, n=4)


def test_exhaustive_stream_from_atlas(atlas_path):
    rep = exhaustive_small_campaign(2, source=str(atlas_path))
    assert rep.passed
    assert rep.counters["graphs_checked"] == 1252
    assert rep.counters["malformed_lines"] == 0
    assert rep.params["mode"] == "stream"
    # one graph in the atlas is the n=7 extremal graph itself
    assert rep.counters["ExtremalEquality"] >= 1


def test_exhaustive_stream_records_bad_lines(tmp_path):
    p = tmp_path / "mixed.g6"
    p.write_text("Bw\nnot graph6 ~~~\nC~\n")
    rep = exhaustive_small_campaign(2, source=str(p))
    assert not rep.passed
    assert rep.counters["malformed_lines"] == 1
    assert rep.counters["graphs_checked"] == 2
    assert any("malformed" in f.detail["reason"] for f in rep.failures)


def test_exhaustive_stream_order_cap(tmp_path):
    from kfs import encode

    p = tmp_path / "big.g6"
    p.write_text(encode(complete(12)) + "\n")
    rep = exhaustive_small_campaign(2, source=str(p))
    assert not rep.passed
    assert rep.counters["graphs_checked"] == 0


def test_random_campaign_counts_and_determinism():
    rep1 = random_campaign(12, 2, trials=30, seed=5)
    rep2 = random_campaign(12, 2, trials=30, seed=5)
    assert rep1.counters == rep2.counters
    assert report_json_bytes(rep1) == report_json_bytes(rep2)
    assert rep1.counters["graphs_checked"] == 30
    assert len(rep1.details) == 30
    rep3 = random_campaign(12, 2, trials=30, seed=6)
    assert report_json_bytes(rep3) != report_json_bytes(rep1)


def test_random_campaign_jobs_do_not_change_bytes():
    a = random_campaign(11, 2, trials=24, seed=9, jobs=1)
    b = random_campaign(11, 2, trials=24, seed=9, jobs=3)
    assert report_json_bytes(a) == report_json_bytes(b)


def test_random_campaign_validation():
    with pytest.raises(ValueError):
        random_campaign(12, 2, trials=0, seed=1)
    with pytest.raises(ValueError):
        random_campaign(12, 2, trials=5, seed=1, density=1.5)
    with pytest.raises(ValueError):
        random_campaign(12, 1, trials=5, seed=1)


def test_resolve_jobs_env(monkeypatch):
    monkeypatch.delenv("KFS_JOBS", raising=False)
    assert resolve_jobs(None) == 1
    assert resolve_jobs(4) == 4
    monkeypatch.setenv("KFS_JOBS", "3")
    assert resolve_jobs(None) == 3
    assert resolve_jobs(2) == 2  # explicit wins
    monkeypatch.setenv("KFS_JOBS", "zero")
    with pytest.raises(ValueError):
        resolve_jobs(None)
    monkeypatch.setenv("KFS_JOBS", "-1")
    with pytest.raises(ValueError):
        resolve_jobs(None)
    with pytest.raises(ValueError):
        resolve_jobs(0)


# -- property suites (small budgets; acceptance runs the full 1000) ---------

def test_lemma1_suite_small():
    rep = lemma1_monotonicity_suite(trials=60, seed=2)
    assert rep.passed
    assert rep.counters["passed"] + rep.counters["skipped"] == 60
    assert rep.counters["skipped"] <= 3


def test_lemma2_suite_small():
    rep = lemma2_rewiring_suite(trials=60, seed=2)
    assert rep.passed
    assert rep.counters["passed"] + rep.counters["skipped"] == 60
    assert rep.counters["skipped"] <= 3
    assert all(d["margin"] > 0 for d in rep.details)


def test_report_passed_reflects_failures():
    rep = random_campaign(10, 2, trials=5, seed=3)
    assert rep.passed == (not rep.failures)
    d = rep.to_dict()
    assert d["passed"] == rep.passed
    assert "runtime" not in d and "runtime_seconds" not in d
