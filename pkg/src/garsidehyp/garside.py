"""
Exact Garside arithmetic in spherical Artin-Tits groups.

Every group element is kept in left-greedy normal form D^p x_1 ... x_l,
stored as the integer `power` p (the infimum) and the tuple `factors` of
simple-table indices.  The factors are nonidentity, different from w0, and
every adjacent pair is left-weighted: the right descent set of x_i contains
the left descent set of x_{i+1}.  Uniqueness of this form solves the word
problem; sup = p + l and the canonical length is l.

Normalization is the local sliding pass: while some generator s lies in
L(x_{i+1}) but not in R(x_i), replace (x_i, x_{i+1}) by (x_i s, s x_{i+1}),
combing backwards after each change.  Sliding preserves the monoid product of
the positive lifts, so the result represents the same group element.  The
per-pair slides are memoized in the group's SimpleTable.

Words compose left to right.  A negative letter s^-1 enters as
D^-1 (w0 s^-1), using that the positive lifts satisfy
lift(w0) = lift(w0 x^-1) lift(x); the D^-1 is commuted to the front through
the tau automorphism x -> w0 x w0 (conjugation by the Garside element, an
involution on simples because D^2 is central).

The canonical text rendering is "D^p | w1 | w2 | ..." where wi is the
lexicographically least reduced word of the i-th factor.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable, Iterator, Sequence

from .coxeter import CoxeterGraph, SimpleElement, SimpleTable
from .errors import (
    EmptySubset,
    GroupMismatch,
    ReducibleSubset,
    UnknownGenerator,
)


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class LetterWord:
    """A word in the generators: pairs (generator index, nonzero exponent)."""

    group: CoxeterGraph
    letters: tuple[tuple[int, int], ...]

    def signed_letter_count(self) -> int:
        return sum(e for _, e in self.letters)

    def render(self) -> str:
        parts = []
        for s, e in self.letters:
            lab = self.group.generators[s]
            parts.append(lab if e == 1 else f"{lab}^{e}")
        return " ".join(parts)


def parse_word(group: CoxeterGraph, text: str) -> LetterWord:
    """Parse whitespace-separated tokens `gen`, `gen^k` or `gen^-k`."""
    letters = []
    for tok in text.split():
        if "^" in tok:
            base, _, exp = tok.partition("^")
            try:
                e = int(exp)
            except ValueError:
                raise UnknownGenerator(f"bad exponent in token {tok!r}") from None
        else:
            base, e = tok, 1
        if e == 0:
            continue
        letters.append((group.gen_index(base), e))
    return LetterWord(group, tuple(letters))


# ---------------------------------------------------------------------------
# Normal forms
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class GarsideElement:
    """A group element in left-greedy normal form D^power factors."""

    group: CoxeterGraph
    power: int
    factors: tuple[int, ...]

    def __post_init__(self):
        tab = self.group.table()
        assert all(0 < f < tab.w0 for f in self.factors), "factor out of range"
        assert all(tab.is_left_weighted(self.factors[i], self.factors[i + 1])
                   for i in range(len(self.factors) - 1)), "factors not left-weighted"

    @property
    def inf(self) -> int:
        return self.power

    @property
    def sup(self) -> int:
        return self.power + len(self.factors)

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    @property
    def is_identity(self) -> bool:
        return self.power == 0 and not self.factors

    def factor_elements(self) -> tuple[SimpleElement, ...]:
        return tuple(SimpleElement(self.group, f) for f in self.factors)

    def render(self) -> str:
        parts = [f"D^{self.power}"]
        tab = self.group.table()
        for f in self.factors:
            parts.append("".join(self.group.generators[s] for s in tab.word[f]))
        return " | ".join(parts)

    def sort_key(self):
        return (len(self.factors), self.power, self.factors)


def _normalise(tab: SimpleTable, seq: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Slide an arbitrary factor sequence into normal form.

    Returns (d, factors): d is the number of leading w0 factors absorbed into
    the Garside power; identity factors are dropped.
    """
    fs = [f for f in seq if f != 0]
    i = 0
    while i < len(fs) - 1:
        a, b = tab.renorm(fs[i], fs[i + 1])
        if (a, b) == (fs[i], fs[i + 1]):
            i += 1
            continue
        if b == 0:
            fs[i] = a
            del fs[i + 1]
        else:
            fs[i], fs[i + 1] = a, b
        i = max(0, i - 1)
    d = 0
    while fs and fs[0] == tab.w0:
        d += 1
        fs.pop(0)
    while fs and fs[-1] == 0:
        fs.pop()
    return d, tuple(fs)


def _mul_normal(tab: SimpleTable, left: Sequence[int],
                right: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Product of two already-normal factor sequences (junction comb).

    Slides start at the junction and move forward, combing backwards after
    every change; identity factors ride the forward wave to the end.  The
    rare case of an interior identity left behind by a backward comb falls
    back to the general pass.
    """
    if not left or not right or tab.is_left_weighted(left[-1], right[0]):
        return 0, tuple(left) + tuple(right)
    fs = list(left) + list(right)
    for i in range(len(left) - 1, len(fs) - 1):
        a, b = tab.renorm(fs[i], fs[i + 1])
        if a == fs[i]:
            break
        fs[i], fs[i + 1] = a, b
        for j in range(i - 1, -1, -1):
            a, b = tab.renorm(fs[j], fs[j + 1])
            if a == fs[j]:
                break
            fs[j], fs[j + 1] = a, b
    d = 0
    while fs and fs[0] == tab.w0:
        d += 1
        fs.pop(0)
    while fs and fs[-1] == 0:
        fs.pop()
    if 0 in fs or tab.w0 in fs or any(
            not tab.is_left_weighted(fs[k], fs[k + 1]) for k in range(len(fs) - 1)):
        d2, tail = _normalise(tab, fs)
        return d + d2, tail
    return d, tuple(fs)


def _make(group: CoxeterGraph, power: int, seq: Sequence[int]) -> GarsideElement:
    d, fs = _normalise(group.table(), seq)
    return GarsideElement(group, power + d, fs)


def identity_element(group: CoxeterGraph) -> GarsideElement:
    return GarsideElement(group, 0, ())


def generator_element(group: CoxeterGraph, label: str) -> GarsideElement:
    return _make(group, 0, (group.table().rmult[0][group.gen_index(label)],))


def positive_lift(simple: SimpleElement) -> GarsideElement:
    """The canonical positive braid lift of an element of W."""
    return _make(simple.group, 0, (simple.index,))


def delta(group: CoxeterGraph) -> GarsideElement:
    return GarsideElement(group, 1, ())


def delta_pow(group: CoxeterGraph, k: int) -> GarsideElement:
    return GarsideElement(group, k, ())


def _gen_inverse(group: CoxeterGraph, gen_idx: int) -> GarsideElement:
    tab = group.table()
    s = tab.rmult[0][gen_idx]
    return _make(group, -1, (tab.left_comp[s],))


def normal_form(word: LetterWord) -> GarsideElement:
    """Normal form of the element represented by a letter word."""
    group = word.group
    acc = identity_element(group)
    for gen_idx, exp in word.letters:
        if exp > 0:
            step = generator_element(group, group.generators[gen_idx])
        else:
            step = _gen_inverse(group, gen_idx)
        step_pow = power(step, abs(exp))
        acc = multiply(acc, step_pow)
    return acc


def _check_group(g: GarsideElement, h: GarsideElement):
    if g.group != h.group:
        raise GroupMismatch("elements live in different groups")


def multiply(g: GarsideElement, h: GarsideElement) -> GarsideElement:
    """Normal form of gh; inf is superadditive, sup subadditive."""
    _check_group(g, h)
    tab = g.group.table()
    if h.power % 2:
        gf: tuple[int, ...] = tuple(tab.tau[x] for x in g.factors)
    else:
        gf = g.factors
    d, fs = _mul_normal(tab, gf, h.factors)
    return GarsideElement(g.group, g.power + h.power + d, fs)


def invert(g: GarsideElement) -> GarsideElement:
    """Normal form of g^-1."""
    tab = g.group.table()
    p, fs = g.power, g.factors
    ell = len(fs)
    ys = []
    for i in range(1, ell + 1):
        c = tab.left_comp[fs[ell - i]]
        if (p + ell - i) % 2:
            c = tab.tau[c]
        ys.append(c)
    return _make(g.group, -(p + ell), ys)


def power(g: GarsideElement, k: int) -> GarsideElement:
    acc = identity_element(g.group)
    base = g if k >= 0 else invert(g)
    k = abs(k)
    while k:
        if k & 1:
            acc = multiply(acc, base)
        base = multiply(base, base)
        k >>= 1
    return acc


def are_equal(g: GarsideElement, h: GarsideElement) -> bool:
    """The word problem: equality of normal forms."""
    _check_group(g, h)
    return g.power == h.power and g.factors == h.factors


def commute(g: GarsideElement, h: GarsideElement) -> bool:
    return are_equal(multiply(g, h), multiply(h, g))


def exponent_sum(g: GarsideElement) -> int:
    """Image under the homomorphism sending every generator to 1."""
    tab = g.group.table()
    return g.power * tab.length[tab.w0] + sum(tab.length[x] for x in g.factors)


def tau_twist(g: GarsideElement) -> GarsideElement:
    """Conjugation D^-1 g D; an automorphism, trivial when D is central."""
    tab = g.group.table()
    return _make(g.group, g.power, tuple(tab.tau[x] for x in g.factors))


# ---------------------------------------------------------------------------
# Garside elements of standard parabolic subgroups
# ---------------------------------------------------------------------------

def delta_of(group: CoxeterGraph, subset: Iterable[str]) -> GarsideElement:
    """Positive lift of the longest element of W_T."""
    labels = tuple(subset)
    if not labels:
        raise EmptySubset("delta_of needs a nonempty subset")
    tab = group.table()
    w0t = tab.longest_in(tab.mask_of(group.gen_indices(labels)))
    return _make(group, 0, (w0t,))


@dataclasses.dataclass(frozen=True)
class OmegaResult:
    element: GarsideElement
    is_delta: bool


def omega_of(group: CoxeterGraph, subset: Iterable[str]) -> OmegaResult:
    """Minimal central element of A_T: Delta_T when central in A_T, else its square.

    Centrality is checked on generators: Delta_T s = s Delta_T for all s in T.
    """
    labels = tuple(subset)
    if not labels:
        raise EmptySubset("omega_of needs a nonempty subset")
    if not group.is_connected_subset(group.gen_indices(labels)):
        raise ReducibleSubset(f"subset {labels} induces a disconnected diagram")
    d = delta_of(group, labels)
    central = all(commute(d, generator_element(group, lab)) for lab in labels)
    return OmegaResult(d if central else multiply(d, d), central)


# ---------------------------------------------------------------------------
# Enumeration of positive normal forms
# ---------------------------------------------------------------------------

def iter_positive_factor_tuples(group: CoxeterGraph, length: int,
                                after: int | None = None) -> Iterator[tuple[int, ...]]:
    """All left-weighted factor tuples of the given length, in index order.

    With `after`, only tuples that may follow that simple are produced.
    """
    tab = group.table()
    if length == 0:
        yield ()
        return
    first = tab.follows(after) if after is not None else \
        tuple(x for x in range(1, tab.size) if x != tab.w0)
    buf = [0] * length

    def rec(depth: int, options):
        for x in options:
            buf[depth] = x
            if depth + 1 == length:
                yield tuple(buf)
            else:
                yield from rec(depth + 1, tab.follows(x))

    yield from rec(0, first)


def count_positive_nf(group: CoxeterGraph, length: int) -> int:
    """Number of positive normal forms of exactly this canonical length."""
    tab = group.table()
    if length == 0:
        return 1
    counts = {x: 1 for x in range(1, tab.size) if x != tab.w0}
    for _ in range(length - 1):
        nxt: dict[int, int] = {}
        for x, c in counts.items():
            for y in tab.follows(x):
                nxt[y] = nxt.get(y, 0) + c
        counts = nxt
    return sum(counts.values())


def iter_positive_elements(group: CoxeterGraph, max_len: int) -> Iterator[GarsideElement]:
    """Positive elements (inf 0) of canonical length 1..max_len, level by level."""
    for ell in range(1, max_len + 1):
        for tup in iter_positive_factor_tuples(group, ell):
            yield GarsideElement(group, 0, tup)
