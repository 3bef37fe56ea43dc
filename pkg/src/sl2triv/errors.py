"""Shared exception types."""


class NotRational(ValueError):
    """Raised when a cyclotomic number has no rational value."""


class InvalidQ(ValueError):
    """q is not an odd prime power (or is otherwise outside the domain)."""


class UnsupportedRegime(ValueError):
    """(q, ell) is not one of the covered regimes.

    Covered: ell odd dividing q-1 or q+1, or ell = 2 with q = +-3 mod 8.
    """


class GroupMismatch(ValueError):
    """Characters from different ambient groups were combined."""


class NotCyclicDefect(ValueError):
    """The block carries a decomposition matrix, not a Brauer tree."""


class NoCorrespondentNeeded(ValueError):
    """Defect-zero blocks have no Brauer correspondent in N."""


class TooLarge(ValueError):
    """The group order exceeds the enumeration budget."""


class SingularTable(ValueError):
    """A trivial source table failed to be invertible (verification failure)."""
