"""Exception types shared across the package."""


class UfgkitError(Exception):
    """Base class for every error raised by this package."""


class InvalidFormat(UfgkitError):
    """Malformed JSON input: wrong shape, duplicate entry, bad field."""


class EmptyGroundSet(UfgkitError):
    """A ground set needs at least one item."""


class DuplicateLabel(UfgkitError):
    """Ground-set labels must be pairwise distinct."""


class UnknownLabel(UfgkitError):
    """A label does not belong to the ground set."""


class IndexOutOfRange(UfgkitError):
    """An item index or packed relation does not fit the ground set."""


class ReflexivePairRejected(UfgkitError):
    """Diagonal pairs are implicit everywhere and may not be stored."""


class NotTransitive(UfgkitError):
    """A stored relation misses a pair implied by transitivity.

    ``triple`` holds the witnessing labels (a, b, c): (a,b) and (b,c)
    are present while (a,c) is not.
    """

    def __init__(self, a: str, b: str, c: str):
        self.triple = (a, b, c)
        super().__init__(
            f"({a},{b}) and ({b},{c}) are present but ({a},{c}) is missing"
        )


class NotAntisymmetric(UfgkitError):
    """A strict relation contains an ordered pair in both directions."""

    def __init__(self, a: str, b: str):
        self.pair = (a, b)
        super().__init__(f"both ({a},{b}) and ({b},{a}) are present")


class EmptyFamily(UfgkitError):
    """An operation on a family of orders received no members."""


class MixedGroundSets(UfgkitError):
    """Operands live on different ground sets."""


class GroundSetTooLarge(UfgkitError):
    """Full enumeration was requested beyond the configured size cap."""


class ObjectNotInContext(UfgkitError):
    """A derivation was asked about an order outside the context objects."""


class InconsistentAttributes(UfgkitError):
    """LEQ and NLEQ constraints demand and forbid the same pair."""


class MemberNotInFamily(UfgkitError):
    """The distinguished element must belong to the family."""


class FamilyTooSmall(UfgkitError):
    """The operation needs a larger family than it was given."""


class NotUfgInput(UfgkitError):
    """The operation requires a union-free generic family as input."""


class CombinatorialBudgetExceeded(UfgkitError):
    """Planned subset enumeration exceeds the configured budget."""
