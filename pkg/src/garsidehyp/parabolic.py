"""
Irreducible parabolic subgroups and their canonical keys.

A parabolic subgroup P = a^-1 A_T a is represented by the normal form of its
minimal central element Omega_P = a^-1 Omega_T a, which depends only on P.
Equality of subgroups is equality of these keys.

Membership in a standard parabolic A_T is decided by clearing denominators:
find the least m >= 0 with Delta_T^m g positive.  Standard parabolic
submonoids are closed under the greedy factorization, so once the product is
positive, g lies in A_T exactly when every greedy factor is supported in T.
If g never becomes positive within the cap the test raises CapExceeded
rather than guessing; the cap (total factor length plus |inf| times the
length of Delta) is a documented heuristic validated against brute-force
enumeration in the tests.
"""

from __future__ import annotations

import dataclasses
import itertools
from typing import Iterable, Iterator, Sequence

from . import garside as gd
from .coxeter import CoxeterGraph
from .errors import (
    CapExceeded,
    EmptySubset,
    GroupMismatch,
    ImproperSubset,
    PreconditionViolated,
    ReducibleSubset,
    SameVertex,
)
from .garside import GarsideElement


@dataclasses.dataclass(frozen=True)
class ParabolicSubgroup:
    """An irreducible proper parabolic subgroup, keyed by Omega_P."""

    group: CoxeterGraph
    omega: GarsideElement
    witness_conj: GarsideElement = dataclasses.field(compare=False)
    witness_subset: tuple[str, ...] = dataclasses.field(compare=False)

    @property
    def rank(self) -> int:
        return len(self.witness_subset)

    def key(self) -> str:
        return self.omega.render()

    def render(self) -> str:
        return f"P[{self.key()}]"


def subset_labels(group: CoxeterGraph, subset: Iterable[str]) -> tuple[str, ...]:
    labels = tuple(subset)
    if not labels:
        raise EmptySubset("empty generator subset")
    group.gen_indices(labels)
    return labels


def _require_irreducible(group: CoxeterGraph, labels: Sequence[str]):
    if not group.is_connected_subset(group.gen_indices(labels)):
        raise ReducibleSubset(f"subset {tuple(labels)} induces a disconnected diagram")


def proper_irreducible_subsets(group: CoxeterGraph) -> list[tuple[str, ...]]:
    """All nonempty proper generator subsets with connected induced diagram."""
    out = []
    n = group.rank
    for r in range(1, n):
        for combo in itertools.combinations(range(n), r):
            if group.is_connected_subset(combo):
                out.append(tuple(group.generators[i] for i in combo))
    return out


def standard_membership(g: GarsideElement, subset: Iterable[str]) -> bool:
    """Whether g lies in the standard parabolic A_T."""
    labels = subset_labels(g.group, subset)
    tab = g.group.table()
    tmask = tab.mask_of(g.group.gen_indices(labels))
    delta_t = gd.delta_of(g.group, labels)
    cap = sum(tab.length[x] for x in g.factors) + abs(g.power) * tab.length[tab.w0]
    h = g
    for _ in range(cap + 1):
        if h.power >= 0:
            prefix = [tab.w0] * h.power
            return all(tab.support[x] & ~tmask == 0 for x in
                       itertools.chain(prefix, h.factors))
        h = gd.multiply(delta_t, h)
    raise CapExceeded(
        f"membership in A_{tuple(labels)} undecided within cap {cap}")


def normalizer_membership(g: GarsideElement, subset: Iterable[str]) -> bool:
    """Whether g normalizes A_T, tested as commutation with Omega_T."""
    labels = subset_labels(g.group, subset)
    _require_irreducible(g.group, labels)
    return gd.commute(g, gd.omega_of(g.group, labels).element)


def parabolic_from_conjugate(a: GarsideElement,
                             subset: Iterable[str]) -> ParabolicSubgroup:
    """The subgroup a^-1 A_T a with its canonical Omega key."""
    labels = subset_labels(a.group, subset)
    if len(labels) == a.group.rank:
        raise ImproperSubset("T must be a proper subset")
    _require_irreducible(a.group, labels)
    omega_t = gd.omega_of(a.group, labels).element
    omega = gd.multiply(gd.multiply(gd.invert(a), omega_t), a)
    return ParabolicSubgroup(a.group, omega, a, labels)


def standard_parabolic(group: CoxeterGraph,
                       subset: Iterable[str]) -> ParabolicSubgroup:
    return parabolic_from_conjugate(gd.identity_element(group), subset)


def omega_commute_edge(p: ParabolicSubgroup, q: ParabolicSubgroup) -> bool:
    """C_parab adjacency: the minimal central elements commute."""
    if p.group != q.group:
        raise GroupMismatch("parabolic subgroups of different groups")
    if p.omega == q.omega:
        raise SameVertex("adjacency needs two distinct subgroups")
    return gd.commute(p.omega, q.omega)


def standard_omega_index(group: CoxeterGraph) -> dict[tuple[int, tuple[int, ...]], tuple[str, ...]]:
    """Map from Omega normal-form keys of standard subgroups to their subsets."""
    out = {}
    for labels in proper_irreducible_subsets(group):
        om = gd.omega_of(group, labels).element
        out[(om.power, om.factors)] = labels
    return out


def _standardization_candidates(group: CoxeterGraph,
                                radius: int) -> Iterator[GarsideElement]:
    """Conjugator search ball: D^k times positives of canonical length <= radius.

    Multiplying by a power of D does not change canonical length, and D^2 is
    central, so the twists k in {0, 1} exhaust the D-coset of each positive.
    """
    for twist in (0, 1):
        yield gd.delta_pow(group, twist)
    for ell in range(1, radius + 1):
        for tup in gd.iter_positive_factor_tuples(group, ell):
            for twist in (0, 1):
                yield gd._make(group, twist, tup)


def simultaneous_standardize(p: ParabolicSubgroup, q: ParabolicSubgroup,
                             radius: int):
    """Search for g with g^-1 P g and g^-1 Q g both standard.

    Returns (g, T1, T2) or None when nothing is found within the radius;
    None means "not found within radius", never "nonexistent" (existence is
    guaranteed whenever the Omegas commute).
    """
    if not omega_commute_edge(p, q):
        raise PreconditionViolated("Omega_P and Omega_Q do not commute")
    index = standard_omega_index(p.group)
    for g in _standardization_candidates(p.group, radius):
        ginv = gd.invert(g)
        op = gd.multiply(gd.multiply(ginv, p.omega), g)
        t1 = index.get((op.power, op.factors))
        if t1 is None:
            continue
        oq = gd.multiply(gd.multiply(ginv, q.omega), g)
        t2 = index.get((oq.power, oq.factors))
        if t2 is None:
            continue
        return g, t1, t2
    return None
