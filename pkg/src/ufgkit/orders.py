"""Finite strict partial orders as packed bit relations.

A relation on a ground set of ``N`` labelled items is stored by its
strict part only: bit ``k`` of an integer says whether the ordered pair
at row-major off-diagonal position ``k`` is present.  Reflexive pairs
are implicit everywhere, which turns antisymmetry into asymmetry and
makes subset tests, intersections and unions single integer operations.
"""

from __future__ import annotations

import os
from collections.abc import Iterable, Iterator

from .errors import (
    DuplicateLabel,
    EmptyFamily,
    EmptyGroundSet,
    GroundSetTooLarge,
    IndexOutOfRange,
    MixedGroundSets,
    NotAntisymmetric,
    NotTransitive,
    ReflexivePairRejected,
    UnknownLabel,
)

DEFAULT_GROUND_CAP = 6
CAP_ENV_VAR = "UFGKIT_CAP"


def resolve_cap(override: int | None = None) -> int:
    """Effective ground-set size cap for full-space enumeration."""
    if override is not None:
        return override
    env = os.environ.get(CAP_ENV_VAR)
    if env:
        return int(env)
    return DEFAULT_GROUND_CAP


class GroundSet:
    """Ordered universe of distinct item labels underlying every relation."""

    __slots__ = ("labels", "_index")

    def __init__(self, labels: Iterable[str]):
        labels = tuple(labels)
        if not labels:
            raise EmptyGroundSet("a ground set needs at least one item")
        index: dict[str, int] = {}
        for pos, name in enumerate(labels):
            if name in index:
                raise DuplicateLabel(f"label {name!r} appears twice")
            index[name] = pos
        self.labels = labels
        self._index = index

    @classmethod
    def numbered(cls, n: int, prefix: str = "x") -> "GroundSet":
        if n < 1:
            raise EmptyGroundSet("a ground set needs at least one item")
        return cls(f"{prefix}{i}" for i in range(1, n + 1))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def pair_count(self) -> int:
        n = len(self.labels)
        return n * (n - 1)

    @property
    def full_bits(self) -> int:
        """Mask of the complete off-diagonal relation."""
        return (1 << self.pair_count) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"label {label!r} is not in the ground set") from None

    def label(self, i: int) -> str:
        return self.labels[i]

    def pair_index(self, i: int, j: int) -> int:
        """Row-major position of the ordered pair (i, j), i != j."""
        return i * (len(self.labels) - 1) + (j if j < i else j - 1)

    def pair_at(self, k: int) -> tuple[int, int]:
        n1 = len(self.labels) - 1
        i, r = divmod(k, n1)
        return i, (r if r < i else r + 1)

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroundSet) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"GroundSet({list(self.labels)!r})"


def _iter_bits(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def _bits_to_rows(ground: GroundSet, bits: int) -> list[int]:
    """Unpack pair-position bits into per-row successor masks."""
    rows = [0] * ground.size
    for k in _iter_bits(bits):
        i, j = ground.pair_at(k)
        rows[i] |= 1 << j
    return rows


def _rows_to_bits(ground: GroundSet, rows: list[int]) -> int:
    bits = 0
    for i, row in enumerate(rows):
        row &= ~(1 << i)  # diagonal stays implicit
        for j in _iter_bits(row):
            bits |= 1 << ground.pair_index(i, j)
    return bits


def _close_rows(rows: list[int]) -> list[int]:
    """Floyd-Warshall reachability on successor masks."""
    rows = rows[:]
    n = len(rows)
    for k in range(n):
        mask = 1 << k
        row_k = rows[k]
        for i in range(n):
            if rows[i] & mask:
                rows[i] |= row_k
    return rows


class BinaryRelation:
    """Arbitrary set of ordered pairs (strict part) on a ground set."""

    __slots__ = ("ground", "bits", "_key")

    def __init__(self, ground: GroundSet, bits: int):
        if bits < 0 or bits >> ground.pair_count:
            raise IndexOutOfRange("relation bits exceed the ground set")
        self.ground = ground
        self.bits = bits
        self._key: bytes | None = None

    @classmethod
    def from_pairs(cls, ground: GroundSet, pairs: Iterable[tuple[int, int]]):
        n = ground.size
        bits = 0
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise IndexOutOfRange(f"pair ({i},{j}) is out of range for size {n}")
            if i == j:
                raise ReflexivePairRejected(
                    f"pair ({ground.label(i)},{ground.label(i)}) is reflexive"
                )
            bits |= 1 << ground.pair_index(i, j)
        return cls(ground, bits)

    @classmethod
    def from_labels(cls, ground: GroundSet, pairs: Iterable[tuple[str, str]]):
        return cls.from_pairs(
            ground, ((ground.index(a), ground.index(b)) for a, b in pairs)
        )

    @property
    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.ground.pair_at(k) for k in _iter_bits(self.bits))

    def label_pairs(self) -> list[tuple[str, str]]:
        """Pairs as labels, ordered by packed position."""
        g = self.ground
        out = []
        for k in _iter_bits(self.bits):
            i, j = g.pair_at(k)
            out.append((k, (g.label(i), g.label(j))))
        return [p for _, p in sorted(out)]

    def has_pair(self, i: int, j: int) -> bool:
        return bool((self.bits >> self.ground.pair_index(i, j)) & 1)

    def is_subset_of(self, other: "BinaryRelation") -> bool:
        if self.ground != other.ground:
            raise MixedGroundSets("relations live on different ground sets")
        return not (self.bits & ~other.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BinaryRelation)
            and self.ground == other.ground
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.ground, self.bits))

    def __repr__(self) -> str:
        body = ", ".join(f"{a}<{b}" for a, b in self.label_pairs())
        return f"{type(self).__name__}({{{body}}})"


class Poset(BinaryRelation):
    """Strict part of a partial order: transitive and asymmetric."""

    __slots__ = ()

    def __init__(self, ground: GroundSet, bits: int, check: bool = True):
        super().__init__(ground, bits)
        if check:
            _validate_poset(ground, bits)


def _validate_poset(ground: GroundSet, bits: int) -> None:
    positions = sorted(_iter_bits(bits))
    pairs = [ground.pair_at(k) for k in positions]
    succ: dict[int, list[int]] = {}
    for i, j in pairs:
        succ.setdefault(i, []).append(j)
    for i, j in pairs:
        for k in succ.get(j, ()):
            if k != i and not ((bits >> ground.pair_index(i, k)) & 1):
                raise NotTransitive(ground.label(i), ground.label(j), ground.label(k))
    for i, j in pairs:
        if i < j and (bits >> ground.pair_index(j, i)) & 1:
            raise NotAntisymmetric(ground.label(i), ground.label(j))


def make_poset(ground: GroundSet, pairs: Iterable[tuple[str, str]]) -> Poset:
    """Validate label pairs as the strict part of a partial order.

    Non-transitive input is rejected, not repaired; callers who want the
    repair should apply :func:`transitive_closure` first, explicitly.
    """
    rel = BinaryRelation.from_labels(ground, pairs)
    return Poset(ground, rel.bits)


def empty_poset(ground: GroundSet) -> Poset:
    return Poset(ground, 0, check=False)


def complete_relation(ground: GroundSet) -> BinaryRelation:
    return BinaryRelation(ground, ground.full_bits)


def transitive_closure(rel: BinaryRelation) -> BinaryRelation:
    """Smallest transitive superset of the strict pairs.

    Implied diagonal pairs (from 2-cycles) stay implicit, so the result
    of closing ``{(a,b),(b,a)}`` is the same two pairs; downstream poset
    validation is what rejects the antisymmetry breach.
    """
    rows = _close_rows(_bits_to_rows(rel.ground, rel.bits))
    return BinaryRelation(rel.ground, _rows_to_bits(rel.ground, rows))


def canonical_key(rel: BinaryRelation) -> bytes:
    """Injective byte encoding: pair bits in row-major order, MSB first."""
    key = rel._key
    if key is None:
        total = rel.ground.pair_count
        acc = 0
        bits = rel.bits
        for k in range(total):
            acc = (acc << 1) | ((bits >> k) & 1)
        acc <<= (-total) % 8
        key = acc.to_bytes((total + 7) // 8 or 1, "big")
        rel._key = key
    return key


def canonical_family(posets: Iterable[Poset]) -> tuple[Poset, ...]:
    """Deduplicate and sort a family of posets into canonical order."""
    seq = list(posets)
    if not seq:
        raise EmptyFamily("the family has no members")
    ground = seq[0].ground
    by_key: dict[bytes, Poset] = {}
    for p in seq:
        if p.ground != ground:
            raise MixedGroundSets("family members live on different ground sets")
        by_key[canonical_key(p)] = p
    return tuple(by_key[k] for k in sorted(by_key))


def intersect_family(family: Iterable[Poset]) -> Poset:
    """Pairwise intersection of a nonempty family; always a valid poset."""
    members = canonical_family(family)
    bits = members[0].bits
    for m in members[1:]:
        bits &= m.bits
    return Poset(members[0].ground, bits)


def union_family(family: Iterable[Poset]) -> BinaryRelation:
    """Pairwise union of a nonempty family; not validated as a poset."""
    members = canonical_family(family)
    bits = 0
    for m in members:
        bits |= m.bits
    return BinaryRelation(members[0].ground, bits)


class PosetInterval:
    """All posets between a lower poset and an upper relation.

    Membership of a poset ``q`` means ``lower.pairs <= q.pairs <= upper.pairs``.
    """

    __slots__ = ("lower", "upper")

    def __init__(self, lower: Poset, upper: BinaryRelation):
        if lower.ground != upper.ground:
            raise MixedGroundSets("interval bounds live on different ground sets")
        if lower.bits & ~upper.bits:
            raise ValueError("interval lower bound is not contained in the upper bound")
        self.lower = lower
        self.upper = upper

    def contains(self, q: Poset) -> bool:
        if q.ground != self.lower.ground:
            raise MixedGroundSets("query poset lives on a different ground set")
        return not (self.lower.bits & ~q.bits) and not (q.bits & ~self.upper.bits)

    def posets(self) -> Iterator[Poset]:
        return _interval_dfs(self.lower.ground, self.lower.bits, self.upper.bits)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PosetInterval)
            and self.lower == other.lower
            and self.upper == other.upper
        )

    def __hash__(self) -> int:
        return hash((self.lower, self.upper))

    def __repr__(self) -> str:
        return f"PosetInterval(lower={self.lower!r}, upper={self.upper!r})"


def interval_contains(iv: PosetInterval, q: Poset) -> bool:
    return iv.contains(q)


def _rows_add_edge(
    rows: list[int], i: int, j: int, allowed: list[int]
) -> list[int] | None:
    """Close ``rows`` (already transitive) with the extra edge (i, j).

    Returns None when the edge would close a cycle or the closure would
    leave ``allowed``.  Every item below i inherits everything reachable
    from j, which keeps the update linear in the ground size.
    """
    if (rows[j] >> i) & 1:
        return None  # j already reaches i: adding (i, j) creates a cycle
    add = rows[j] | (1 << j)
    out = rows[:]
    new_i = out[i] | add
    if new_i & ~allowed[i]:
        return None
    out[i] = new_i
    for x in range(len(rows)):
        if (rows[x] >> i) & 1:
            new_x = out[x] | add
            if new_x & ~allowed[x]:
                return None
            out[x] = new_x
    return out


def _interval_dfs(ground: GroundSet, lower_bits: int, upper_bits: int) -> Iterator[Poset]:
    """Yield every poset in [lower, upper], in canonical-key order.

    Depth-first over the free pair positions in row-major order,
    exclude-branch first, maintaining the transitive closure of the
    chosen pairs incrementally.  A branch dies as soon as the closure
    needs an excluded pair or would break asymmetry, so leaves are
    exactly the valid posets and are emitted without duplicates.
    """
    free = [ground.pair_at(k) for k in sorted(_iter_bits(upper_bits & ~lower_bits))]
    closed = _bits_to_rows(ground, lower_bits)
    allowed = _bits_to_rows(ground, upper_bits)

    def rec(idx: int, rows: list[int], allowed: list[int]) -> Iterator[Poset]:
        if idx == len(free):
            yield Poset(ground, _rows_to_bits(ground, rows), check=False)
            return
        i, j = free[idx]
        if not (rows[i] >> j) & 1:  # closure does not force (i, j): may exclude
            shrunk = allowed[:]
            shrunk[i] &= ~(1 << j)
            yield from rec(idx + 1, rows, shrunk)
        grown = _rows_add_edge(rows, i, j, allowed)
        if grown is not None:
            yield from rec(idx + 1, grown, allowed)

    return rec(0, closed, allowed)


def enumerate_interval_posets(iv: PosetInterval) -> Iterator[Poset]:
    """Stream the members of an interval; the lower bound comes first."""
    return iv.posets()


def enumerate_all_posets(ground: GroundSet, cap: int | None = None) -> Iterator[Poset]:
    """Stream every partial order on the ground set, canonically ordered."""
    limit = resolve_cap(cap)
    if ground.size > limit:
        raise GroundSetTooLarge(
            f"ground set of size {ground.size} exceeds the cap {limit}; "
            f"raise it explicitly (env {CAP_ENV_VAR} or the override flag)"
        )
    return PosetInterval(empty_poset(ground), complete_relation(ground)).posets()
