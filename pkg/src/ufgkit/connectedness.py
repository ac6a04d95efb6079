"""Connectedness of union-free generic families: verify, reproduce, stress.

The connectedness claim says every ufg family of size m >= 3 contains an
ufg subfamily of size m-1.  Its original removal argument is broken; the
scenario in :func:`run_corrigendum` replays the known counterexample to
that argument while confirming the claim itself survives.  Nothing here
assumes connectedness: it is checked exhaustively where feasible and
stress-tested with seeded random pools beyond that.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from collections.abc import Iterable, Sequence
from itertools import combinations

from .context import NLEQ, Attribute, gamma_interval, partition_distinguishing
from .errors import FamilyTooSmall, NotUfgInput, UfgkitError
from .orders import (
    BinaryRelation,
    GroundSet,
    Poset,
    canonical_family,
    make_poset,
    transitive_closure,
)
from .ufg import (
    UfgCertificate,
    _is_ufg_sorted,
    candidate_filter,
    enumerate_ufg_exhaustive,
    explain_not_ufg,
    is_ufg,
    is_witness,
    default_max_family_size,
)


def has_predecessor(
    S: Iterable[Poset],
) -> tuple[tuple[Poset, ...], UfgCertificate] | None:
    """First ufg leave-one-out subfamily, removing members in canonical order.

    None means the connectedness claim fails for this family.
    """
    members = canonical_family(S)
    if len(members) < 3:
        raise FamilyTooSmall("predecessors are defined for families of size >= 3")
    if _is_ufg_sorted(members) is None:
        raise NotUfgInput("the input family is not union-free generic")
    for removed in members:
        rest = tuple(m for m in members if m.bits != removed.bits)
        cert = _is_ufg_sorted(rest)
        if cert is not None:
            return rest, cert
    return None


@dataclass
class ConnectednessViolation:
    """A family contradicting connectedness, with a re-checkable trail."""

    family: tuple[Poset, ...]
    certificate: UfgCertificate
    leave_one_out: list[dict]  # one not-ufg analysis per removed member


def _violation(members: tuple[Poset, ...], cert: UfgCertificate) -> ConnectednessViolation:
    failures = []
    for removed in members:
        rest = tuple(m for m in members if m.bits != removed.bits)
        failures.append(
            {"removed": removed, "members": rest, "analysis": explain_not_ufg(rest)}
        )
    return ConnectednessViolation(members, cert, failures)


@dataclass
class ConnectednessReport:
    """Outcome of checking predecessors for every cataloged family."""

    ground: GroundSet
    max_size: int
    checked: int
    connected: int
    violations: list[ConnectednessViolation]
    predecessors: list[dict]  # family, predecessor, witness


def verify_connectedness(
    ground: GroundSet,
    max_size: int | None = None,
    premises: Iterable[Poset] | None = None,
    budget: int | None = None,
    cap: int | None = None,
) -> ConnectednessReport:
    """Exhaustively enumerate ufg families and check each of size >= 3."""
    kwargs = {} if budget is None else {"budget": budget}
    catalog = enumerate_ufg_exhaustive(
        ground, max_size=max_size, premises=premises, cap=cap, **kwargs
    )
    checked = 0
    violations: list[ConnectednessViolation] = []
    predecessors: list[dict] = []
    for cert in catalog.certificates():
        if cert.size < 3:
            continue
        checked += 1
        found = has_predecessor(cert.family)
        if found is None:
            violations.append(_violation(cert.family, cert))
        else:
            subset, sub_cert = found
            predecessors.append(
                {
                    "family": cert.family,
                    "predecessor": subset,
                    "witness": sub_cert.witness,
                }
            )
    return ConnectednessReport(
        ground=ground,
        max_size=catalog.max_size,
        checked=checked,
        connected=checked - len(violations),
        violations=violations,
        predecessors=predecessors,
    )


# --- the golden counterexample scenario ------------------------------------

CORRIGENDUM_LABELS = ("a", "b", "a1", "b1", "c1")


def corrigendum_inputs() -> tuple[GroundSet, Poset, Poset, Poset, Poset]:
    """The fixed five-item ground set and the four literal orders."""
    ground = GroundSet(CORRIGENDUM_LABELS)
    p1 = make_poset(ground, [("a", "b"), ("a1", "c1")])
    p2 = make_poset(ground, [("a1", "b1")])
    p3 = make_poset(ground, [("b1", "c1")])
    q = make_poset(ground, [("a", "b"), ("a1", "b1"), ("b1", "c1"), ("a1", "c1")])
    return ground, p1, p2, p3, q


@dataclass
class ScenarioCheck:
    name: str
    passed: bool
    detail: str


@dataclass
class CorrigendumScenario:
    """Literal data and assertion outcomes of the counterexample scenario."""

    ground: GroundSet
    p1: Poset
    p2: Poset
    p3: Poset
    q: Poset
    checks: list[ScenarioCheck]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _check_posets_valid(ground, p1, p2, p3, q):
    try:
        for p in (p1, p2, p3, q):
            Poset(ground, p.bits)  # re-validate transitivity and asymmetry
    except UfgkitError:
        return False, "some literal fails poset validation"
    return True, "p1, p2, p3 and q validate as strict partial orders"


def _check_family_ufg(ground, p1, p2, p3, q):
    family = (p1, p2, p3)
    ok = is_ufg(family) is not None and is_witness(family, q)
    return ok, (
        "the three-order family is union-free generic and q is one of its witnesses"
    )


def _check_q_inside(ground, p1, p2, p3, q):
    ok = gamma_interval((p1, p2, p3)).contains(q)
    return ok, "q lies between the intersection and the union of the family"


def _check_q_outside_subsets(ground, p1, p2, p3, q):
    family = (p1, p2, p3)
    subsets = [T for size in (1, 2) for T in combinations(family, size)]
    ok = all(not gamma_interval(T).contains(q) for T in subsets)
    return ok, (
        f"q avoids the closures of all {len(subsets)} proper nonempty subfamilies"
    )


def _check_removal_blocked(ground, p1, p2, p3, q):
    _, d_nleq = partition_distinguishing((p1, p2, p3), q)
    ab = Attribute(NLEQ, ground.index("a"), ground.index("b"))
    ok = ab in d_nleq and not gamma_interval((p2, p3)).contains(q)
    return ok, (
        "the pair (a,b) is a distinguishing non-pair of p1, yet dropping p1 "
        "loses (a,b) and (a1,c1) from the union, so q leaves the closure"
    )


def _check_predecessor(ground, p1, p2, p3, q):
    ok = has_predecessor((p1, p2, p3)) is not None
    return ok, (
        "some two-member subfamily is union-free generic, so connectedness holds here"
    )


SCENARIO_CHECKS = {
    "posets-valid": _check_posets_valid,
    "family-is-ufg-with-witness-q": _check_family_ufg,
    "q-inside-closure": _check_q_inside,
    "q-outside-proper-subsets": _check_q_outside_subsets,
    "removal-of-p1-impossible": _check_removal_blocked,
    "predecessor-exists": _check_predecessor,
}

SCENARIO_CHECK_ORDER = tuple(SCENARIO_CHECKS)


def run_corrigendum(order: Sequence[str] | None = None) -> CorrigendumScenario:
    """Replay the counterexample scenario and record every assertion.

    The checks are independent facts; ``order`` only changes when each
    one is evaluated, never its outcome, and the recorded list always
    follows the canonical order.
    """
    ground, p1, p2, p3, q = corrigendum_inputs()
    results = {}
    for name in order if order is not None else SCENARIO_CHECK_ORDER:
        results[name] = SCENARIO_CHECKS[name](ground, p1, p2, p3, q)
    checks = [
        ScenarioCheck(name, *results[name]) for name in SCENARIO_CHECK_ORDER
    ]
    return CorrigendumScenario(ground, p1, p2, p3, q, checks)


# --- seeded falsification beyond the exhaustive range -----------------------


def random_poset(ground: GroundSet, rng: random.Random, max_tries: int = 200) -> Poset:
    """Random order via rejection: random strict pairs, transitively closed,
    kept when the closure stays asymmetric.  Not uniform over all orders;
    good enough for stress trials."""
    density = rng.uniform(0.1, 0.5)
    for _ in range(max_tries):
        bits = 0
        for k in range(ground.pair_count):
            if rng.random() < density:
                bits |= 1 << k
        closed = transitive_closure(BinaryRelation(ground, bits))
        cb = closed.bits
        ok = True
        for i in range(ground.size):
            for j in range(i + 1, ground.size):
                if (cb >> ground.pair_index(i, j)) & 1 and (
                    cb >> ground.pair_index(j, i)
                ) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return Poset(ground, cb, check=False)
    return Poset(ground, 0, check=False)


def random_pool(ground: GroundSet, rng: random.Random, size: int) -> tuple[Poset, ...]:
    return canonical_family(random_poset(ground, rng) for _ in range(size))


@dataclass
class FalsificationReport:
    """Deterministic record of a stress run against connectedness."""

    n_range: tuple[int, ...]
    budget: int
    seed: int
    pool_size: int
    trials: int
    families_checked: int
    violation: ConnectednessViolation | None


def _run_trial(
    n: int, seed: int, trial: int, pool_size: int
) -> tuple[int, ConnectednessViolation | None]:
    rng = random.Random(f"{seed}:{trial}")
    ground = GroundSet.numbered(n)
    pool = random_pool(ground, rng, pool_size)
    if len(pool) < 3:
        return 0, None
    checked = 0
    indices = list(range(len(pool)))
    pairs = [(i, j) for i in indices for j in indices[i + 1:]]
    rng.shuffle(pairs)
    family: set[Poset] = set()
    for i, j in pairs[:30]:
        if _is_ufg_sorted(canonical_family((pool[i], pool[j]))) is not None:
            family = {pool[i], pool[j]}
            break
    if not family:
        return 0, None
    limit = min(len(pool), default_max_family_size(ground))
    while len(family) < limit:
        members = canonical_family(family)
        candidates = [p for p in pool if p not in family]
        rng.shuffle(candidates)
        grown = False
        for p in candidates:
            if not candidate_filter(members, p):
                continue
            merged = canonical_family(members + (p,))
            cert = _is_ufg_sorted(merged)
            if cert is None:
                continue
            family.add(p)
            grown = True
            if len(family) >= 3:
                checked += 1
                if has_predecessor(merged) is None:
                    return checked, _violation(merged, cert)
            break
        if not grown:
            break
    return checked, None


def falsification_search(
    n_range: Sequence[int],
    budget: int,
    seed: int,
    pool_size: int = 8,
    threads: int = 1,
) -> FalsificationReport:
    """Run seeded random growth trials; report the first violation if any.

    Trials derive their randomness from (seed, trial index) alone, so the
    thread count can never change the report.
    """
    if budget < 1:
        raise ValueError("the trial budget must be at least 1")
    if not n_range:
        raise ValueError("n_range must name at least one ground size")
    sizes = tuple(n_range)

    def trial(t: int) -> tuple[int, ConnectednessViolation | None]:
        return _run_trial(sizes[t % len(sizes)], seed, t, pool_size)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(trial, range(budget)))
    else:
        outcomes = [trial(t) for t in range(budget)]

    families_checked = sum(c for c, _ in outcomes)
    violation = next((v for _, v in outcomes if v is not None), None)
    return FalsificationReport(
        n_range=sizes,
        budget=budget,
        seed=seed,
        pool_size=pool_size,
        trials=budget,
        families_checked=families_checked,
        violation=violation,
    )
