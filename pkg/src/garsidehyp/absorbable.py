"""
Absorbable elements, the dihedral census, and fat triangles.

An element y is absorbable when inf(y) = 0 or sup(y) = 0 and some witness x
of the same canonical length L satisfies inf(x) = inf(xy) = 0 and
sup(x) = sup(xy) = L.  (For sup(y) = 0 the test is applied to y^-1, whose
inf is 0.)  The oracle is exact relative to this inf/sup formulation; see
the package docs for why the census below can rely on it.

The witness search enumerates positive normal forms of length exactly L in
index order (shortlex).  It is exhaustive up to `witness_bound` candidates
and answers `unknown` when truncated before a witness appears.

The census uses that absorbability is inherited by normal-form prefixes:
if x absorbs y then the last j factors of x absorb y_1..y_j with the same
inf/sup equalities.  Absorbable elements of length l + 1 therefore extend
absorbable elements of length l, so the enumeration grows level by level and
stops at the first empty level (or at sup_bound).  For dihedral groups the
census is exact and finite; elsewhere it is an explicitly bounded census.
"""

from __future__ import annotations

import dataclasses
from typing import Iterator

from . import garside as gd
from .coxeter import CoxeterGraph
from .errors import IdentityInput, NotAnAbsorptionPair, ZeroLength
from .garside import GarsideElement

WITNESS_ENUM_FULL_LIMIT = 10_000_000
WITNESS_ENUM_TRUNCATED = 1_000_000


@dataclasses.dataclass(frozen=True)
class AbsorbResult:
    status: str  # "yes" | "no" | "unknown"
    witness: GarsideElement | None = None
    inverted: bool = False  # the test ran on y^-1 (sup(y) = 0 case)

    def __bool__(self) -> bool:
        return self.status == "yes"


def _default_witness_bound(group: CoxeterGraph, length: int) -> int:
    if group.table().size ** length <= WITNESS_ENUM_FULL_LIMIT:
        return WITNESS_ENUM_FULL_LIMIT
    return WITNESS_ENUM_TRUNCATED


def is_absorbable(y: GarsideElement, witness_bound: int | None = None) -> AbsorbResult:
    """Decide absorbability of y by exhaustive same-length witness search."""
    if y.is_identity:
        raise IdentityInput("the identity is not eligible")
    if y.sup == 0:
        inner = is_absorbable(gd.invert(y), witness_bound)
        return AbsorbResult(inner.status, inner.witness, inverted=True)
    if y.inf != 0:
        return AbsorbResult("no")
    ell = y.canonical_length
    bound = witness_bound if witness_bound is not None else \
        _default_witness_bound(y.group, ell)
    seen = 0
    for tup in gd.iter_positive_factor_tuples(y.group, ell):
        if seen >= bound:
            return AbsorbResult("unknown")
        seen += 1
        x = GarsideElement(y.group, 0, tup)
        xy = gd.multiply(x, y)
        if xy.inf == 0 and xy.sup == ell:
            return AbsorbResult("yes", witness=x)
    return AbsorbResult("no")


def enumerate_absorbable(group: CoxeterGraph, sup_bound: int,
                         witness_bound: int | None = None) -> list[GarsideElement]:
    """All absorbable elements of canonical length <= sup_bound.

    Both the inf = 0 family and its inverses (the sup = 0 family) are
    returned, in deterministic order.  Levels extend absorbable prefixes
    only; the enumeration stops early once a level is empty.
    """
    tab = group.table()
    positives: list[GarsideElement] = []
    level: list[tuple[int, ...]] = []
    for x in range(1, tab.size):
        if x == tab.w0:
            continue
        el = GarsideElement(group, 0, (x,))
        if is_absorbable(el, witness_bound):
            level.append((x,))
            positives.append(el)
    ell = 1
    while level and ell < sup_bound:
        nxt = []
        for tup in level:
            for x in tab.follows(tup[-1]):
                cand = tup + (x,)
                el = GarsideElement(group, 0, cand)
                if is_absorbable(el, witness_bound):
                    nxt.append(cand)
                    positives.append(el)
        level = nxt
        ell += 1
    out = list(positives) + [gd.invert(el) for el in positives]
    out.sort(key=lambda e: e.sort_key())
    return out


@dataclasses.dataclass(frozen=True)
class CensusSummary:
    m: int
    count: int
    expected: int
    elements: tuple[str, ...]


def dihedral_census(group: CoxeterGraph, sup_bound: int) -> CensusSummary:
    """Census of absorbable elements in a dihedral group, against 4m - 8."""
    if not group.is_dihedral:
        raise ZeroLength("dihedral census needs a rank-2 group")
    m = group.matrix[0][1]
    elems = enumerate_absorbable(group, sup_bound)
    return CensusSummary(m, len(elems), 4 * m - 8,
                         tuple(e.render() for e in elems))


# ---------------------------------------------------------------------------
# Fat triangles
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class FatTriangle:
    """Equilateral triangle on corners 1, x, xy with common inf 0 and sup L.

    Sides are vertex sequences of length L + 1: normal-form prefixes of x,
    the x-translates of prefixes of y, and prefixes of xy.
    """

    group: CoxeterGraph
    x: GarsideElement
    y: GarsideElement
    xy: GarsideElement
    length: int
    side_x: tuple[GarsideElement, ...]      # 1 .. x
    side_top: tuple[GarsideElement, ...]    # x .. xy
    side_xy: tuple[GarsideElement, ...]     # 1 .. xy

    def corners(self) -> tuple[GarsideElement, GarsideElement, GarsideElement]:
        return (gd.identity_element(self.group), self.x, self.xy)


def _prefixes(g: GarsideElement) -> list[GarsideElement]:
    return [GarsideElement(g.group, 0, g.factors[:i])
            for i in range(len(g.factors) + 1)]


def absorption_equalities_hold(x: GarsideElement, y: GarsideElement) -> bool:
    """The four equalities inf(x)=inf(xy)=0, sup(x)=sup(xy)=L with L = len(y)."""
    if y.inf != 0:
        return False
    ell = y.canonical_length
    if x.inf != 0 or x.sup != ell:
        return False
    xy = gd.multiply(x, y)
    return xy.inf == 0 and xy.sup == ell


def build_fat_triangle(x: GarsideElement, y: GarsideElement) -> FatTriangle:
    """Triangle certificate for an absorption pair (x absorbs y)."""
    gd._check_group(x, y)
    if not absorption_equalities_hold(x, y):
        raise NotAnAbsorptionPair("inf/sup equalities fail for (x, y)")
    ell = y.canonical_length
    if ell == 0:
        raise ZeroLength("triangle needs canonical length >= 1")
    xy = gd.multiply(x, y)
    side_x = tuple(_prefixes(x))
    side_top = tuple(gd.multiply(x, p) for p in _prefixes(y))
    side_xy = tuple(_prefixes(xy))
    return FatTriangle(x.group, x, y, xy, ell, side_x, side_top, side_xy)


@dataclasses.dataclass(frozen=True)
class SymmetryReport:
    pair2: tuple[GarsideElement, GarsideElement]
    pair3: tuple[GarsideElement, GarsideElement]
    both_verified: bool


def absorption_symmetry(x: GarsideElement, y: GarsideElement) -> SymmetryReport:
    """The two derived absorption pairs of a fat triangle.

    From x absorbing y: y absorbs (xy)^-1 D^L, and D^L (xy)^-1 absorbs x.
    Both derived pairs are re-verified through the inf/sup equalities.
    """
    gd._check_group(x, y)
    if not absorption_equalities_hold(x, y):
        raise NotAnAbsorptionPair("inf/sup equalities fail for (x, y)")
    ell = y.canonical_length
    dl = gd.delta_pow(x.group, ell)
    xy_inv = gd.invert(gd.multiply(x, y))
    v2 = gd.multiply(xy_inv, dl)
    v3 = gd.multiply(dl, xy_inv)
    ok2 = absorption_equalities_hold(y, v2)
    ok3 = absorption_equalities_hold(v3, x)
    return SymmetryReport((y, v2), (v3, x), ok2 and ok3)


def absorption_pairs_from_census(group: CoxeterGraph, sup_bound: int) \
        -> Iterator[tuple[GarsideElement, GarsideElement]]:
    """(witness, absorbed) pairs for the positive census elements."""
    for y in enumerate_absorbable(group, sup_bound):
        if y.inf == 0 and y.sup > 0:
            res = is_absorbable(y)
            if res.status == "yes":
                yield res.witness, y
