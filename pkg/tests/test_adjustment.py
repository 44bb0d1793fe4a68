"""Sufficient adjustment sets: eligibility, minimality, common sets."""

import numpy as np
import pytest

from helpers import brute_minimal_sets, random_did_graph
from ptgraph import fixtures
from ptgraph.adjustment import (
    asymmetric_subset_witness,
    common_sufficient_set,
    common_sufficient_sets_for_lemma,
    eligible_nodes,
    is_sufficient,
    minimal_sufficient_sets,
)
from ptgraph.completion import enumerate_completions
from ptgraph.dsl import parse
from ptgraph.errors import InvalidCandidate
from ptgraph.swig import build_swig


def swig_of(name):
    return build_swig(parse(fixtures.load(name)))


def test_eligibility_excludes_treatment_side():
    s = swig_of("fig2")
    pool = eligible_nodes(s)
    assert "A" not in pool and "Y1" not in pool  # treatment + its descendant
    assert set(pool) == {"U1", "U2", "U3", "U4", "Y0"}
    assert "Y0" not in eligible_nodes(s, period=0)


def test_synthetic_latents_not_eligible():
    g = parse(fixtures.load("fig4"))
    lat = [completed for c, completed in enumerate_completions(g)][2]
    s = build_swig(lat)
    assert "L_U1_U2" not in eligible_nodes(s)
    with pytest.raises(InvalidCandidate):
        is_sufficient(s, {"L_U1_U2"}, 1)


def test_invalid_candidates_rejected():
    s = swig_of("fig2")
    with pytest.raises(InvalidCandidate):
        is_sufficient(s, {"A"}, 1)
    with pytest.raises(InvalidCandidate):
        is_sufficient(s, {"Y1"}, 1)
    with pytest.raises(InvalidCandidate):
        is_sufficient(s, {"Y0"}, 0)


def test_fig2_families():
    s = swig_of("fig2")
    assert minimal_sufficient_sets(s, 0).sets == (("U1", "U3"),)
    assert minimal_sufficient_sets(s, 1).sets == (("U1", "U4"),)
    assert common_sufficient_set(s) == ("U1", "U3", "U4")


def test_fig2_asymmetric_witness():
    s = swig_of("fig2")
    witness = asymmetric_subset_witness(s, ("U1", "U3", "U4"))
    assert witness == (("U1", "U3"), 0, 1)


def test_fig3_families_per_completion():
    g = parse(fixtures.load("fig3"))
    for _, completed in enumerate_completions(g):
        s = build_swig(completed)
        assert minimal_sufficient_sets(s, 0).sets == (("U1", "U3", "U4"),)
        assert minimal_sufficient_sets(s, 1).sets == (
            ("U1", "U2", "U4"),
            ("U1", "U3", "U4"),
        )


def test_fig3_witness_needs_wider_common_set():
    """The smallest common set has no asymmetric subset; the union-form
    common set {U1, U2, U3, U4} exposes one. The lemma search must look
    beyond the smallest set."""
    g = parse(fixtures.load("fig3"))
    _, completed = next(enumerate_completions(g))
    s = build_swig(completed)
    assert common_sufficient_set(s) == ("U1", "U3", "U4")
    assert asymmetric_subset_witness(s, ("U1", "U3", "U4")) is None
    searched = common_sufficient_sets_for_lemma(s)
    assert ("U1", "U2", "U3", "U4") in searched
    hits = [asymmetric_subset_witness(s, m) for m in searched]
    assert any(h is not None for h in hits)
    witness = next(h for h in hits if h is not None)
    assert witness == (("U1", "U2", "U4"), 1, 0)


def test_fig4_common_set():
    g = parse(fixtures.load("fig4"))
    for _, completed in enumerate_completions(g):
        s = build_swig(completed)
        assert common_sufficient_set(s) == ("U1",)
        assert asymmetric_subset_witness(s, ("U1",)) is None


def test_minimality_certificates():
    """Every reported set is sufficient and loses sufficiency when any
    single member is dropped."""
    _, completed = next(enumerate_completions(parse(fixtures.load("fig3"))))
    s = build_swig(completed)
    for period in (0, 1):
        for members in minimal_sufficient_sets(s, period).sets:
            assert is_sufficient(s, members, period)
            for drop in members:
                rest = tuple(m for m in members if m != drop)
                assert not is_sufficient(s, rest, period)


def test_families_match_brute_force_on_random_graphs():
    rng = np.random.default_rng(314)
    checked = 0
    while checked < 40:
        g = random_did_graph(rng, n_covariates=int(rng.integers(2, 5)))
        if g.validate():
            continue
        s = build_swig(g)
        for period in (0, 1):
            fast = list(minimal_sufficient_sets(s, period).sets)
            slow = brute_minimal_sets(s, period, eligible_nodes(s, period))
            assert fast == slow, (g.edges, period)
        checked += 1


def test_parents_of_treatment_always_common_when_no_y0_edge():
    """With no pre-period-outcome -> treatment edge, the treatment's parents
    block every backdoor path for both periods."""
    rng = np.random.default_rng(2718)
    for _ in range(60):
        g = random_did_graph(rng, n_covariates=3, allow_y0_to_a=False)
        if g.validate():
            continue
        s = build_swig(g)
        pa = g.parents("A")
        assert _sufficient(s, pa)
        assert common_sufficient_set(s) is not None


def _sufficient(s, members):
    return is_sufficient(s, members, 0) and is_sufficient(s, members, 1)
