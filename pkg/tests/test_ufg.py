"""Union-free generic detection, certificates, filters and enumerators."""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from ufgkit import (
    CombinatorialBudgetExceeded,
    GroundSet,
    MixedGroundSets,
    candidate_filter,
    canonical_family,
    default_max_family_size,
    empty_poset,
    enumerate_all_posets,
    enumerate_ufg_connected,
    enumerate_ufg_exhaustive,
    explain_not_ufg,
    family_key,
    gamma_interval,
    is_generic,
    is_ufg,
    is_ufg_by_distinguishing,
    is_union_free,
    is_union_free_bruteforce,
    is_witness,
    iter_witnesses,
    make_poset,
)


# --- the generic condition -------------------------------------------------------


def test_singletons_are_not_generic(corr):
    _, p1, _, _, _ = corr
    assert not is_generic([p1])


def test_counterexample_family_is_generic(corr):
    _, p1, p2, p3, _ = corr
    assert is_generic([p1, p2, p3])


def test_interval_closed_families_are_not_generic(g3, pool3):
    # take every order inside some closure: the closure adds nothing new
    rng = random.Random(41)
    for _ in range(20):
        fam = rng.sample(pool3, 2)
        closed = tuple(gamma_interval(fam).posets())
        assert not is_generic(closed)


# --- the union-free condition ------------------------------------------------------


def test_counterexample_family_is_union_free(corr):
    _, p1, p2, p3, _ = corr
    assert is_union_free([p1, p2, p3], debug=True)


def test_redundant_member_breaks_union_freeness(corr):
    # any member of the closure of the others is covered by a proper subset
    ground, p1, p2, _, _ = corr
    r = empty_poset(ground)  # the intersection, inside gamma({p1, p2})
    assert gamma_interval([p1, p2]).contains(r)
    assert not is_union_free([p1, p2, r], debug=True)


def test_singleton_union_free_vacuously(corr):
    _, p1, _, _, _ = corr
    assert is_union_free([p1])
    assert is_ufg([p1]) is None  # still not ufg: the generic condition fails


def test_reduction_matches_bruteforce(pool3):
    rng = random.Random(43)
    for _ in range(150):
        fam = rng.sample(pool3, rng.randint(2, 4))
        assert is_union_free(fam) == is_union_free_bruteforce(fam)


# --- witnesses and certificates -------------------------------------------------------


def test_counterexample_certificate(corr):
    ground, p1, p2, p3, q = corr
    cert = is_ufg([p1, p2, p3])
    assert cert is not None
    cert.validate()
    # canonical enumeration meets {(a1,b1),(a1,c1),(b1,c1)} before q itself
    assert set(cert.witness.label_pairs()) == {
        ("a1", "b1"),
        ("a1", "c1"),
        ("b1", "c1"),
    }
    assert is_witness([p1, p2, p3], q)
    witnesses = list(iter_witnesses([p1, p2, p3]))
    assert witnesses == [cert.witness, q]
    for member, d in cert.per_member.items():
        assert d.attributes, member


def test_two_member_counterexample_subfamily(corr):
    ground, p1, p2, _, _ = corr
    cert = is_ufg([p1, p2])
    assert cert is not None
    assert cert.witness.bits == 0  # the empty order comes first canonically
    other = make_poset(ground, [("a", "b"), ("a1", "b1")])
    assert is_witness([p1, p2], other)


def test_duplicates_collapse_to_singleton(corr):
    _, p1, _, _, _ = corr
    assert is_ufg([p1, p1]) is None


def test_incomparable_pairs_are_ufg(pool3):
    rng = random.Random(47)
    for _ in range(60):
        a, b = rng.sample(pool3, 2)
        nested = a.is_subset_of(b) or b.is_subset_of(a)
        cert = is_ufg([a, b])
        if not nested:
            assert cert is not None
        if cert is not None:
            cert.validate()


def test_witness_requires_same_ground(corr, g2):
    _, p1, p2, _, _ = corr
    with pytest.raises(MixedGroundSets):
        is_witness([p1, p2], empty_poset(g2))


# --- decider agreement -----------------------------------------------------------------


def test_three_deciders_agree_on_samples(pool3):
    rng = random.Random(53)
    for _ in range(200):
        fam = rng.sample(pool3, rng.randint(2, 4))
        by_witness = is_ufg(fam) is not None
        by_attributes = is_ufg_by_distinguishing(fam) is not None
        by_conditions = is_generic(fam) and is_union_free(fam)
        assert by_witness == by_attributes == by_conditions


def test_deciders_agree_exhaustively_on_two_items(g2):
    pool = tuple(enumerate_all_posets(g2))
    for size in (2, 3):
        for fam in combinations(pool, size):
            assert (is_ufg(fam) is not None) == (
                is_ufg_by_distinguishing(fam) is not None
            )


# --- enumerators ------------------------------------------------------------------------


def test_two_item_catalog_is_the_pair_of_reversed_chains(g2):
    catalog = enumerate_ufg_exhaustive(g2)
    assert catalog.count_by_size() == {2: 1}
    (cert,) = catalog.certificates()
    assert {m.label_pairs()[0] for m in cert.family} == {("x1", "x2"), ("x2", "x1")}
    assert cert.witness.bits == 0
    assert enumerate_ufg_connected(g2).same_families(catalog)


def test_three_item_catalog_regression(catalog3):
    # frozen from the exhaustive run, cross-checked by the connected strategy
    assert catalog3.count_by_size() == {2: 141, 3: 140}
    assert len(catalog3) == 281
    # empirical report on the structural size bound: far from tight here
    observed_max = max(c.size for c in catalog3.certificates())
    assert observed_max == 3 < default_max_family_size(catalog3.ground)


def test_single_item_ground_has_no_families():
    g1 = GroundSet.numbered(1)
    assert len(enumerate_ufg_exhaustive(g1)) == 0
    assert len(enumerate_ufg_connected(g1)) == 0


def test_connected_equals_exhaustive_on_three_items(g3, catalog3):
    connected = enumerate_ufg_connected(g3)
    assert connected.same_families(catalog3)


def test_counterexample_pool_catalogs(corr):
    ground, p1, p2, p3, _ = corr
    pool = (p1, p2, p3)
    exhaustive = enumerate_ufg_exhaustive(ground, premises=pool)
    assert exhaustive.count_by_size() == {2: 3, 3: 1}
    assert exhaustive.get([p1, p2, p3]) is not None
    connected = enumerate_ufg_connected(ground, premises=pool)
    assert connected.same_families(exhaustive)
    assert connected.get([p1, p2]) is not None  # the size-2 seed it grew from


def test_max_size_one_gives_empty_catalog(g2):
    assert len(enumerate_ufg_exhaustive(g2, max_size=1)) == 0
    assert len(enumerate_ufg_connected(g2, max_size=1)) == 0


def test_identical_premises_give_empty_catalog(corr):
    ground, p1, _, _, _ = corr
    assert len(enumerate_ufg_connected(ground, premises=[p1, p1, p1])) == 0


def test_budget_is_enforced(g3):
    with pytest.raises(CombinatorialBudgetExceeded):
        enumerate_ufg_exhaustive(g3, budget=10)
    with pytest.raises(CombinatorialBudgetExceeded):
        enumerate_ufg_connected(g3, budget=10)


def test_premises_must_share_the_ground(g2, g3):
    with pytest.raises(MixedGroundSets):
        enumerate_ufg_exhaustive(g3, premises=[empty_poset(g2)])


def test_default_max_family_size_is_the_attribute_count(g3):
    assert default_max_family_size(g3) == 12


def test_catalog_keys_are_sorted_tuples(catalog3):
    for cert in catalog3.certificates():
        key = family_key(cert.family)
        assert list(key) == sorted(key)
        assert len(set(key)) == len(key)


# --- candidate filter ----------------------------------------------------------------


def test_filter_rejects_closure_members(corr):
    _, p1, p2, p3, q = corr
    assert not candidate_filter([p1, p2, p3], q)


def test_filter_rejects_duplicate_rows(corr):
    ground, p1, p2, _, _ = corr
    twin = make_poset(ground, [("a", "b"), ("a1", "c1")])  # same row as p1
    assert not candidate_filter([p1, p2], twin)


def test_filter_keeps_the_real_extension(corr):
    _, p1, p2, p3, _ = corr
    assert candidate_filter([p1, p2], p3)


def test_filter_soundness_sampled(catalog3, pool3):
    rng = random.Random(59)
    certs = catalog3.certificates()
    for _ in range(300):
        cert = rng.choice(certs)
        p = rng.choice(pool3)
        if any(p.bits == m.bits for m in cert.family):
            continue
        if not candidate_filter(cert.family, p):
            assert is_ufg(cert.family + (p,)) is None


# --- monotonicity does not hold in either direction -------------------------------------


def test_ufg_family_with_non_ufg_superset(g3):
    s1 = empty_poset(g3)
    s2 = make_poset(g3, [("x3", "x1"), ("x3", "x2")])
    extra = make_poset(g3, [("x3", "x2")])
    assert is_ufg([s1, s2]) is not None
    assert is_ufg([s1, s2, extra]) is None


def test_non_ufg_family_with_ufg_superset(g3):
    # singletons are never ufg, their incomparable extensions are
    chain = make_poset(g3, [("x1", "x2")])
    other = make_poset(g3, [("x2", "x1")])
    assert is_ufg([chain]) is None
    assert is_ufg([chain, other]) is not None


def test_every_pair_inside_an_ufg_triple_is_ufg(catalog3):
    # on three items the only non-ufg subfamilies of ufg families are
    # singletons: frozen empirical fact from the exhaustive catalog
    keys = catalog3.keys()
    for cert in catalog3.certificates():
        if cert.size != 3:
            continue
        for sub in combinations(cert.family, 2):
            assert family_key(sub) in keys


# --- failure explanations ----------------------------------------------------------------


def test_explanations_name_the_failure(corr):
    ground, p1, p2, _, _ = corr
    single = explain_not_ufg([p1])
    assert "single order" in single["reason"]
    r = empty_poset(ground)
    covered = explain_not_ufg([p1, p2, r])
    assert "union-free" in covered["reason"]
    assert covered["blockers"]
    for entry in covered["blockers"]:
        fam = [p1, p2, r]
        rest = [m for m in canonical_family(fam) if m != entry["covered_without"]]
        assert gamma_interval(rest).contains(entry["candidate"])
