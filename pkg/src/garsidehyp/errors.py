"""Exception hierarchy shared by all modules."""


class GarsideHypError(Exception):
    """Base class for all library errors."""


# --- Coxeter / group construction -----------------------------------------

class UnknownFamily(GarsideHypError):
    """Group spec token does not match any supported family."""


class RankOutOfRange(GarsideHypError):
    """Family is known but the rank is outside its legal range (e.g. D3)."""


class NonSpherical(GarsideHypError):
    """The diagram does not define a finite Coxeter group."""


class OrderOverflow(GarsideHypError):
    """|W| exceeds the configured enumeration cap."""


class GroupMismatch(GarsideHypError):
    """Operands belong to different groups."""


class UnknownGenerator(GarsideHypError):
    """A word references a generator absent from the group."""


class EmptySubset(GarsideHypError):
    """An operation requires a nonempty generator subset."""


# --- Parabolic calculus -----------------------------------------------------

class ReducibleSubset(GarsideHypError):
    """Subset induces a disconnected sub-diagram where irreducibility is required."""


class ImproperSubset(GarsideHypError):
    """Subset equals the whole generator set where a proper one is required."""


class SameVertex(GarsideHypError):
    """Two parabolic-subgroup arguments coincide."""


class PreconditionViolated(GarsideHypError):
    """A documented precondition of the operation does not hold."""


class CapExceeded(GarsideHypError):
    """A bounded search hit its cap; the answer is inconclusive, not 'no'."""


# --- Absorbable lab ----------------------------------------------------------

class IdentityInput(GarsideHypError):
    """The identity element is not accepted here."""


class NotAnAbsorptionPair(GarsideHypError):
    """The inf/sup equalities of an absorption pair fail."""


class ZeroLength(GarsideHypError):
    """A triangle of canonical length zero is degenerate."""


# --- Metric graphs -----------------------------------------------------------

class UniverseTooSmall(GarsideHypError):
    """The truncation universe cannot contain the requested construction."""


class DisconnectedInput(GarsideHypError):
    """Graph is disconnected and per-component mode is off."""


class RepresentativeMissing(GarsideHypError):
    """An orbit or edge representative is not a vertex of the supplied graph."""


# --- Braid topology ----------------------------------------------------------

class RankTooSmall(GarsideHypError):
    """Strand parameter too small for the construction."""


class IndexOutOfRange(GarsideHypError):
    """Puncture / generator index outside its legal range."""


class NotPureAtStrandOne(GarsideHypError):
    """The distinguished strand does not return to its starting position."""


class NotFoundWithinSearch(GarsideHypError):
    """Bounded search exhausted without a certificate."""
