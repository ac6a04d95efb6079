"""Detection and enumeration of union-free generic families of orders.

A family S is *generic* when its closure holds some order outside S,
and *union-free* when no collection of proper-subset closures covers
the closure of S.  Both together are equivalent to the existence of a
witness order q in the closure of S that escapes every leave-one-out
closure: isotony dominates any covering collection of proper subsets
by the collection {S minus one member}, so those are the only subsets
that ever need checking.  ``is_ufg`` runs that witness scan;
``is_ufg_by_distinguishing`` decides the same question through
per-member distinguishing attributes and exists as a cross-check.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from collections.abc import Iterable, Iterator
from itertools import combinations
from math import comb

from .context import (
    DistinguishingSet,
    _distinguishing_masks,
    _loo_and_or,
    distinguishing,
    gamma_interval,
)
from .errors import (
    CombinatorialBudgetExceeded,
    EmptyFamily,
    MixedGroundSets,
)
from .orders import (
    GroundSet,
    Poset,
    canonical_family,
    canonical_key,
    enumerate_all_posets,
)

DEFAULT_SUBSET_BUDGET = 2_000_000


def default_max_family_size(ground: GroundSet) -> int:
    """Structural bound on ufg family size: the attribute count.

    Every member needs its own distinguishing attribute and two members
    cannot share one, so a family can never have more members than the
    context has attributes.
    """
    return 2 * ground.size * (ground.size - 1)


def family_key(S: Iterable[Poset]) -> tuple[bytes, ...]:
    """Canonical, order-insensitive identity of a family."""
    return tuple(canonical_key(m) for m in canonical_family(S))


def _loo_bounds(members: tuple[Poset, ...]) -> list[tuple[int, int]]:
    """(lower, upper) interval bits of every leave-one-out subfamily."""
    bits_list = [m.bits for m in members]
    full = members[0].ground.full_bits
    others_and, others_or = _loo_and_or(bits_list, full)
    return list(zip(others_and, others_or))


def is_generic(S: Iterable[Poset]) -> bool:
    """Whether the closure of S strictly exceeds S."""
    members = canonical_family(S)
    member_bits = {m.bits for m in members}
    for q in gamma_interval(members).posets():
        if q.bits not in member_bits:
            return True
    return False


def is_union_free(S: Iterable[Poset], debug: bool = False) -> bool:
    """Whether no family of proper-subset closures covers the closure of S.

    Decided through the leave-one-out reduction; ``debug`` additionally
    runs the naive check over every family of proper subsets (tiny
    families only) and asserts agreement.
    """
    members = canonical_family(S)
    if len(members) == 1:
        result = True  # proper subsets of a singleton carry no orders
    else:
        loo = _loo_bounds(members)
        result = False
        for q in gamma_interval(members).posets():
            qb = q.bits
            if all((lo & ~qb) or (qb & ~up) for lo, up in loo):
                result = True
                break
    if debug:
        assert result == is_union_free_bruteforce(members), (
            "leave-one-out reduction disagrees with the naive family check"
        )
    return result


def is_union_free_bruteforce(S: Iterable[Poset]) -> bool:
    """Naive oracle: materialize every proper-subset closure and test cover.

    The union over all nonempty proper subsets dominates every candidate
    family, so covering is possible iff that single union already covers.
    Exponential in the family size; debugging aid only.
    """
    members = canonical_family(S)
    if len(members) == 1:
        return True
    target = {q.bits for q in gamma_interval(members).posets()}
    covered: set[int] = set()
    for size in range(1, len(members)):
        for sub in combinations(members, size):
            covered.update(q.bits for q in gamma_interval(sub).posets())
    return not (target <= covered)


def is_witness(S: Iterable[Poset], q: Poset) -> bool:
    """Whether q certifies S: inside the closure, outside S and outside
    every leave-one-out closure."""
    members = canonical_family(S)
    if q.ground != members[0].ground:
        raise MixedGroundSets("witness candidate on a different ground set")
    iv = gamma_interval(members)
    if not iv.contains(q) or any(q.bits == m.bits for m in members):
        return False
    return all((lo & ~q.bits) or (q.bits & ~up) for lo, up in _loo_bounds(members))


def iter_witnesses(S: Iterable[Poset]) -> Iterator[Poset]:
    """All witness orders for S, in canonical order."""
    members = canonical_family(S)
    if len(members) < 2:
        return
    member_bits = {m.bits for m in members}
    loo = _loo_bounds(members)
    for q in gamma_interval(members).posets():
        qb = q.bits
        if qb in member_bits:
            continue
        if all((lo & ~qb) or (qb & ~up) for lo, up in loo):
            yield q


@dataclass
class UfgCertificate:
    """Witnessed proof that a family is union-free generic.

    ``family`` is canonically ordered; ``per_member`` maps each member to
    its nonempty distinguishing set restricted to the witness.
    """

    family: tuple[Poset, ...]
    witness: Poset
    per_member: dict[Poset, DistinguishingSet]

    @property
    def size(self) -> int:
        return len(self.family)

    def validate(self) -> None:
        """Re-derive every claim; raises AssertionError on any breach."""
        members = canonical_family(self.family)
        assert members == self.family, "family is not in canonical order"
        assert is_witness(members, self.witness), "witness fails re-validation"
        for m in members:
            d = self.per_member[m]
            assert d.attributes, f"empty distinguishing set for {m!r}"
            fresh = distinguishing(m, members, self.witness)
            assert fresh.attributes == d.attributes, "distinguishing set drifted"


def _certificate(members: tuple[Poset, ...], witness: Poset) -> UfgCertificate:
    per_member = {}
    for m in members:
        d = distinguishing(m, members, witness)
        # every member of a witnessed family must be distinguishable
        assert d.attributes, "witness scan and distinguishing sets disagree"
        per_member[m] = d
    return UfgCertificate(members, witness, per_member)


def _is_ufg_sorted(members: tuple[Poset, ...]) -> UfgCertificate | None:
    """Witness scan over a canonical family; None when no witness exists."""
    if len(members) < 2:
        return None
    ground = members[0].ground
    full = ground.full_bits
    bits_list = [m.bits for m in members]
    others_and, others_or = _loo_and_or(bits_list, full)
    # a member with no unrestricted distinguishing attribute sinks the family
    for i, b in enumerate(bits_list):
        leq, nleq = _distinguishing_masks(b, others_and[i], others_or[i], None, full)
        if not leq and not nleq:
            return None
    loo = list(zip(others_and, others_or))
    member_bits = set(bits_list)
    for q in gamma_interval(members).posets():
        qb = q.bits
        if qb in member_bits:
            continue
        if all((lo & ~qb) or (qb & ~up) for lo, up in loo):
            return _certificate(members, q)
    return None


def is_ufg(S: Iterable[Poset]) -> UfgCertificate | None:
    """Certificate for a union-free generic family, or None.

    Families of fewer than two distinct orders are never union-free
    generic and yield None without error.  The witness is the first
    qualifying order in canonical enumeration order.
    """
    try:
        members = canonical_family(S)
    except EmptyFamily:
        return None
    return _is_ufg_sorted(members)


def is_ufg_by_distinguishing(S: Iterable[Poset]) -> Poset | None:
    """Independent decider: first closure member giving every family
    member a nonempty restricted distinguishing set."""
    try:
        members = canonical_family(S)
    except EmptyFamily:
        return None
    if len(members) < 2:
        return None
    for q in gamma_interval(members).posets():
        if all(
            distinguishing(x, members, q).attributes for x in members
        ):
            return q
    return None


def candidate_filter(Q: Iterable[Poset], p: Poset) -> bool:
    """Whether p is worth testing as an extension of the ufg family Q.

    Rejects orders inside the closure of Q (their addition leaves the
    closure unchanged, so some proper subset covers it) and orders whose
    addition strips every distinguishing attribute from some existing
    member.  Both rejections are sound: a rejected extension is provably
    not union-free generic.
    """
    members = canonical_family(Q)
    if p.ground != members[0].ground:
        raise MixedGroundSets("extension candidate on a different ground set")
    if any(p.bits == m.bits for m in members):
        return False
    if gamma_interval(members).contains(p):
        return False
    merged = canonical_family(members + (p,))
    bits_list = [m.bits for m in merged]
    full = p.ground.full_bits
    others_and, others_or = _loo_and_or(bits_list, full)
    existing = {m.bits for m in members}
    for i, b in enumerate(bits_list):
        if b not in existing:
            continue
        leq, nleq = _distinguishing_masks(b, others_and[i], others_or[i], None, full)
        if not leq and not nleq:
            return False
    return True


class UfgCatalog:
    """All union-free generic families found by one enumeration run."""

    def __init__(self, ground: GroundSet, strategy: str, max_size: int):
        self.ground = ground
        self.strategy = strategy
        self.max_size = max_size
        self._families: dict[tuple[bytes, ...], UfgCertificate] = {}
        self.stats: dict[str, object] = {
            "strategy": strategy,
            "families_tested": 0,
            "filter_rejections": 0,
            "pool_size": 0,
            "elapsed_seconds": 0.0,
        }

    def add(self, cert: UfgCertificate) -> None:
        self._families[family_key(cert.family)] = cert

    def __len__(self) -> int:
        return len(self._families)

    def __contains__(self, family) -> bool:
        if isinstance(family, tuple) and family and isinstance(family[0], bytes):
            return family in self._families  # already a key
        return family_key(family) in self._families

    def get(self, family) -> UfgCertificate | None:
        return self._families.get(family_key(family))

    def keys(self) -> frozenset[tuple[bytes, ...]]:
        return frozenset(self._families)

    def certificates(self) -> list[UfgCertificate]:
        return [
            self._families[k]
            for k in sorted(self._families, key=lambda k: (len(k), k))
        ]

    def count_by_size(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for k in self._families:
            out[len(k)] = out.get(len(k), 0) + 1
        return out

    def same_families(self, other: "UfgCatalog") -> bool:
        return self.keys() == other.keys()


def _resolve_pool(
    ground: GroundSet,
    premises: Iterable[Poset] | None,
    cap: int | None,
) -> tuple[Poset, ...]:
    if premises is None:
        return tuple(enumerate_all_posets(ground, cap))
    pool = canonical_family(premises)
    if pool[0].ground != ground:
        raise MixedGroundSets("premise pool lives on a different ground set")
    return pool


def enumerate_ufg_exhaustive(
    ground: GroundSet,
    max_size: int | None = None,
    premises: Iterable[Poset] | None = None,
    budget: int = DEFAULT_SUBSET_BUDGET,
    cap: int | None = None,
) -> UfgCatalog:
    """Test every subset of the premise pool; the enumeration oracle."""
    pool = _resolve_pool(ground, premises, cap)
    if max_size is None:
        max_size = default_max_family_size(ground)
    max_size = min(max_size, len(pool))
    planned = sum(comb(len(pool), k) for k in range(2, max_size + 1))
    if planned > budget:
        raise CombinatorialBudgetExceeded(
            f"{planned} subsets to test exceed the budget {budget}"
        )
    catalog = UfgCatalog(ground, "exhaustive", max_size)
    catalog.stats["pool_size"] = len(pool)
    tested = 0
    start = time.perf_counter()
    for size in range(2, max_size + 1):
        for combo in combinations(pool, size):
            tested += 1
            cert = _is_ufg_sorted(combo)
            if cert is not None:
                catalog.add(cert)
    catalog.stats["families_tested"] = tested
    catalog.stats["elapsed_seconds"] = time.perf_counter() - start
    return catalog


def enumerate_ufg_connected(
    ground: GroundSet,
    max_size: int | None = None,
    premises: Iterable[Poset] | None = None,
    budget: int = DEFAULT_SUBSET_BUDGET,
    cap: int | None = None,
) -> UfgCatalog:
    """Grow families from two-element seeds, one order at a time.

    Every cataloged family is extended by each pool order that survives
    :func:`candidate_filter`; results are deduplicated through the
    canonical family key, so no family is tested twice.  Completeness
    rests on the connectedness property of ufg families, which this
    package verifies rather than assumes; run the exhaustive strategy
    next to it when the guarantee matters.
    """
    pool = _resolve_pool(ground, premises, cap)
    if max_size is None:
        max_size = default_max_family_size(ground)
    max_size = min(max_size, len(pool))
    catalog = UfgCatalog(ground, "connected", max_size)
    catalog.stats["pool_size"] = len(pool)
    tested = 0
    rejected = 0
    start = time.perf_counter()
    visited: set[tuple[bytes, ...]] = set()
    frontier: list[UfgCertificate] = []
    if max_size >= 2:
        for combo in combinations(pool, 2):
            tested += 1
            if tested > budget:
                raise CombinatorialBudgetExceeded(
                    f"extension tests exceed the budget {budget}"
                )
            visited.add(family_key(combo))
            cert = _is_ufg_sorted(combo)
            if cert is not None:
                catalog.add(cert)
                frontier.append(cert)
    while frontier:
        next_frontier: list[UfgCertificate] = []
        for cert in frontier:
            if cert.size >= max_size:
                continue
            current = set(m.bits for m in cert.family)
            for p in pool:
                if p.bits in current:
                    continue
                merged = canonical_family(cert.family + (p,))
                key = family_key(merged)
                if key in visited:
                    continue
                visited.add(key)
                if not candidate_filter(cert.family, p):
                    rejected += 1
                    continue
                tested += 1
                if tested > budget:
                    raise CombinatorialBudgetExceeded(
                        f"extension tests exceed the budget {budget}"
                    )
                grown = _is_ufg_sorted(merged)
                if grown is not None:
                    catalog.add(grown)
                    next_frontier.append(grown)
        frontier = next_frontier
    catalog.stats["families_tested"] = tested
    catalog.stats["filter_rejections"] = rejected
    catalog.stats["elapsed_seconds"] = time.perf_counter() - start
    return catalog


def explain_not_ufg(S: Iterable[Poset]) -> dict:
    """Re-checkable account of why a family is not union-free generic.

    Returns a dict whose values may contain Poset objects; the JSON
    layer renders them.
    """
    members = canonical_family(S)
    if len(members) < 2:
        return {
            "ufg": False,
            "reason": "a single order is closed already: the closure adds nothing",
        }
    iv = gamma_interval(members)
    member_bits = {m.bits for m in members}
    outside = [q for q in iv.posets() if q.bits not in member_bits]
    if not outside:
        return {
            "ufg": False,
            "reason": "not generic: the closure holds no order beyond the family",
        }
    loo = _loo_bounds(members)
    blockers = []
    for q in outside:
        qb = q.bits
        for i, (lo, up) in enumerate(loo):
            if not (lo & ~qb) and not (qb & ~up):
                blockers.append({"candidate": q, "covered_without": members[i]})
                break
    return {
        "ufg": False,
        "reason": (
            "not union-free: every closure order outside the family already "
            "lies in a leave-one-out closure"
        ),
        "blockers": blockers,
    }
