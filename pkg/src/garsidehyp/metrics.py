"""
Generating-set oracles and truncated metric graphs.

The infinite generating sets are represented by membership predicates plus
bounded enumerators.  Throughout, the truncation universe for group elements
is the box |inf| <= bound and canonical length <= bound; enumerators list
every member inside the box (central powers D^2k appear through their normal
forms D^2k with zero factors).  Graph distances computed inside a truncation
are upper bounds for the true distances; results carry their truncation
parameters and an exact/upper tag, and nothing is reported as exact without
a certificate.

Certificates used for word lengths: distance 0 and 1 are decided by the
membership predicate alone; distance 2 is exact when the predicate rejects
the target (no single generator reaches it); larger distances are exact only
for step-local oracles (each generator changes the box coordinates by at
most one, e.g. the simple generators) when the breadth-first search never
touched the universe boundary.
"""

from __future__ import annotations

import dataclasses
import itertools
import random as _random
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from . import absorbable as ab
from . import garside as gd
from . import parabolic as pb
from .coxeter import CoxeterGraph
from .errors import (
    CapExceeded,
    DisconnectedInput,
    GroupMismatch,
    RepresentativeMissing,
    UniverseTooSmall,
)
from .garside import GarsideElement
from .parabolic import ParabolicSubgroup

KIND_XP = "XP"
KIND_XNP = "XNP"
KIND_XABS = "Xabs"
KIND_SIMPLES = "Simples"
KIND_FINITE = "FiniteS_plus_Delta2"
KINDS = (KIND_XP, KIND_XNP, KIND_XABS, KIND_SIMPLES, KIND_FINITE)


def _nf_key(g: GarsideElement) -> tuple[int, tuple[int, ...]]:
    return (g.power, g.factors)


def in_universe(g: GarsideElement, bound: int) -> bool:
    return abs(g.power) <= bound and g.canonical_length <= bound


def is_central_even_delta_power(g: GarsideElement) -> bool:
    return not g.factors and g.power % 2 == 0


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------

@dataclasses.dataclass
class GeneratingSetOracle:
    """Membership predicate and bounded enumerator for one generating set."""

    group: CoxeterGraph
    kind: str
    membership: Callable[[GarsideElement], bool]
    enumerate_up_to: Callable[[int], list[GarsideElement]]
    step_local: bool
    notes: str = ""


def genset_oracle(group: CoxeterGraph, kind: str,
                  witness_bound: int | None = None) -> GeneratingSetOracle:
    if kind == KIND_XP:
        return _xp_oracle(group)
    if kind == KIND_XNP:
        return _xnp_oracle(group)
    if kind == KIND_XABS:
        return _xabs_oracle(group, witness_bound)
    if kind == KIND_SIMPLES:
        return _simples_oracle(group)
    if kind == KIND_FINITE:
        return _finite_oracle(group)
    raise ValueError(f"unknown generating-set kind {kind!r}")


def _delta_even_powers(group: CoxeterGraph, bound: int) -> list[GarsideElement]:
    out = []
    for k in range(-bound, bound + 1):
        if k and k % 2 == 0:
            out.append(gd.delta_pow(group, k))
    return out


def _subgroup_members(group: CoxeterGraph, labels: Sequence[str],
                      bound: int) -> Iterator[GarsideElement]:
    """Elements of the standard parabolic A_T inside the universe box.

    Enumerates the subgroup's own normal forms D_T^p x_1..x_k with
    |p| <= 2*bound + 2 and k <= 2*bound + 2 and filters by the ambient box;
    tests validate this inner margin against direct enumeration.
    """
    indices = group.gen_indices(labels)
    if len(indices) == group.rank:
        raise GroupMismatch("proper subsets only")
    inner = 2 * bound + 2
    if len(indices) == 1:
        s = gd.generator_element(group, labels[0])
        for j in range(-bound, bound + 1):
            if j:
                el = gd.power(s, j)
                if in_universe(el, bound):
                    yield el
        return
    sub = group.subgraph(indices)
    subtab = sub.table()
    delta_t = gd.delta_of(group, labels)
    # Ambient simple index for each subgroup simple, via its reduced word.
    tab = group.table()
    amb = []
    for f in range(subtab.size):
        x = 0
        for s_local in subtab.word[f]:
            x = tab.rmult[x][group.gen_index(sub.generators[s_local])]
        amb.append(x)
    for p in range(-inner, inner + 1):
        base = gd.power(delta_t, p)
        for k in range(0, inner + 1):
            if k == 0:
                if not base.is_identity and in_universe(base, bound):
                    yield base
                continue
            for tup in _sub_factor_tuples(subtab, k):
                el = base
                for f in tup:
                    el = gd.multiply(el, gd.GarsideElement(group, 0, (amb[f],)))
                if in_universe(el, bound):
                    yield el


def _sub_factor_tuples(subtab, length: int):
    first = tuple(x for x in range(1, subtab.size) if x != subtab.w0)
    buf = [0] * length

    def rec(depth, options):
        for x in options:
            buf[depth] = x
            if depth + 1 == length:
                yield tuple(buf)
            else:
                yield from rec(depth + 1, subtab.follows(x))

    yield from rec(0, first)


def _xp_oracle(group: CoxeterGraph) -> GeneratingSetOracle:
    subsets = pb.proper_irreducible_subsets(group)

    def membership(g: GarsideElement) -> bool:
        if is_central_even_delta_power(g):
            return True
        for labels in subsets:
            try:
                if pb.standard_membership(g, labels):
                    return True
            except CapExceeded:
                continue
        return False

    def enumerate_up_to(bound: int) -> list[GarsideElement]:
        seen: dict = {}
        for labels in subsets:
            for el in _subgroup_members(group, labels, bound):
                seen.setdefault(_nf_key(el), el)
        for el in _delta_even_powers(group, bound):
            seen.setdefault(_nf_key(el), el)
        return sorted(seen.values(), key=lambda e: e.sort_key())

    return GeneratingSetOracle(group, KIND_XP, membership, enumerate_up_to,
                               step_local=False)


def _universe_elements(group: CoxeterGraph, bound: int) -> Iterator[GarsideElement]:
    for p in range(-bound, bound + 1):
        if p:
            yield gd.delta_pow(group, p)
    for ell in range(1, bound + 1):
        for tup in gd.iter_positive_factor_tuples(group, ell):
            for p in range(-bound, bound + 1):
                yield gd.GarsideElement(group, p, tup)


def _xnp_oracle(group: CoxeterGraph) -> GeneratingSetOracle:
    subsets = pb.proper_irreducible_subsets(group)
    omegas = [gd.omega_of(group, labels).element for labels in subsets]

    def membership(g: GarsideElement) -> bool:
        return any(gd.commute(g, om) for om in omegas)

    def enumerate_up_to(bound: int) -> list[GarsideElement]:
        out = [el for el in _universe_elements(group, bound) if membership(el)]
        out.sort(key=lambda e: e.sort_key())
        return out

    return GeneratingSetOracle(group, KIND_XNP, membership, enumerate_up_to,
                               step_local=False)


def _xabs_oracle(group: CoxeterGraph,
                 witness_bound: int | None) -> GeneratingSetOracle:
    dihedral = group.is_dihedral

    def membership(g: GarsideElement) -> bool:
        if g.is_identity:
            return False
        if dihedral and is_central_even_delta_power(g):
            return True
        return ab.is_absorbable(g, witness_bound).status == "yes"

    def enumerate_up_to(bound: int) -> list[GarsideElement]:
        out = list(ab.enumerate_absorbable(group, bound, witness_bound))
        if dihedral:
            out.extend(_delta_even_powers(group, bound))
        out.sort(key=lambda e: e.sort_key())
        return out

    notes = "absorbable membership uses the bounded witness search; " \
            "graphs built from it are lower approximations"
    return GeneratingSetOracle(group, KIND_XABS, membership, enumerate_up_to,
                               step_local=False, notes=notes)


def _simples_oracle(group: CoxeterGraph) -> GeneratingSetOracle:
    def membership(g: GarsideElement) -> bool:
        ell = g.canonical_length
        if g.power == 0 and ell == 1:
            return True
        if g.power == 1 and ell == 0:
            return True
        if g.power == -1 and ell <= 1:
            return True
        return False

    def enumerate_up_to(bound: int) -> list[GarsideElement]:
        tab = group.table()
        out = [gd.delta(group), gd.delta_pow(group, -1)]
        for x in range(1, tab.size):
            if x == tab.w0:
                continue
            el = gd.GarsideElement(group, 0, (x,))
            out.append(el)
            out.append(gd.invert(el))
        out = [el for el in out if in_universe(el, bound)]
        out.sort(key=lambda e: e.sort_key())
        return out

    return GeneratingSetOracle(group, KIND_SIMPLES, membership, enumerate_up_to,
                               step_local=True)


def _finite_oracle(group: CoxeterGraph) -> GeneratingSetOracle:
    gens = [gd.generator_element(group, lab) for lab in group.generators]
    keyset = {_nf_key(e) for e in gens} | {_nf_key(gd.invert(e)) for e in gens}

    def membership(g: GarsideElement) -> bool:
        return _nf_key(g) in keyset or is_central_even_delta_power(g)

    def enumerate_up_to(bound: int) -> list[GarsideElement]:
        out = [e for e in gens] + [gd.invert(e) for e in gens]
        out = [e for e in out if in_universe(e, bound)]
        out.extend(_delta_even_powers(group, bound))
        out.sort(key=lambda e: e.sort_key())
        return out

    return GeneratingSetOracle(group, KIND_FINITE, membership, enumerate_up_to,
                               step_local=False)


def enumerate_genset(oracle: GeneratingSetOracle, len_bound: int) -> list[GarsideElement]:
    """All members inside the universe box of the given bound, shortlex order."""
    return oracle.enumerate_up_to(len_bound)


# ---------------------------------------------------------------------------
# Metric graphs
# ---------------------------------------------------------------------------

@dataclasses.dataclass
class MetricGraph:
    """Finite truncation of one of the infinite graphs.

    Vertices are canonical text keys; edges are index pairs (i < j) into the
    sorted vertex tuple.  Provenance records group, construction and
    truncation parameters.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    provenance: dict

    def __post_init__(self):
        n = len(self.vertices)
        assert len(set(self.vertices)) == n, "duplicate vertex keys"
        for i, j in self.edges:
            assert 0 <= i < j < n, "edge endpoints must be valid and distinct"
        assert len(set(self.edges)) == len(self.edges), "duplicate edges"
        self._index = {k: i for i, k in enumerate(self.vertices)}
        self._adj: list[list[int]] | None = None

    def index_of(self, key: str) -> int:
        if key not in self._index:
            raise RepresentativeMissing(f"vertex {key!r} not in graph")
        return self._index[key]

    def has_vertex(self, key: str) -> bool:
        return key in self._index

    def adjacency(self) -> list[list[int]]:
        if self._adj is None:
            adj: list[list[int]] = [[] for _ in self.vertices]
            for i, j in self.edges:
                adj[i].append(j)
                adj[j].append(i)
            self._adj = adj
        return self._adj

    def bfs_distances(self, source: int, cutoff: int | None = None) -> dict[int, int]:
        adj = self.adjacency()
        dist = {source: 0}
        frontier = [source]
        d = 0
        while frontier and (cutoff is None or d < cutoff):
            d += 1
            nxt = []
            for v in frontier:
                for w in adj[v]:
                    if w not in dist:
                        dist[w] = d
                        nxt.append(w)
            frontier = nxt
        return dist

    def distance(self, key_a: str, key_b: str) -> int | None:
        da = self.bfs_distances(self.index_of(key_a))
        return da.get(self.index_of(key_b))

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        return len(self.bfs_distances(0)) == len(self.vertices)


def _build_graph(keys: Iterable[str], key_edges: Iterable[tuple[str, str]],
                 provenance: dict) -> MetricGraph:
    vertices = tuple(sorted(set(keys)))
    index = {k: i for i, k in enumerate(vertices)}
    edges = set()
    for a, b in key_edges:
        i, j = index[a], index[b]
        if i == j:
            continue
        edges.add((min(i, j), max(i, j)))
    return MetricGraph(vertices, tuple(sorted(edges)), provenance)


def element_key(g: GarsideElement) -> str:
    return g.render()


def coset_rep(g: GarsideElement) -> GarsideElement:
    """Canonical inf-0 representative of the coset g<D>.

    Multiplying by D twists the factors by tau, so a coset has up to two
    inf-0 normal forms; the factor-tuple minimum of the two is the key.
    """
    tab = g.group.table()
    twisted = tuple(tab.tau[x] for x in g.factors)
    factors = min(g.factors, twisted)
    return gd.GarsideElement(g.group, 0, factors)


def coset_key(g: GarsideElement) -> str:
    return coset_rep(g).render()


# ---------------------------------------------------------------------------
# Balls and word lengths
# ---------------------------------------------------------------------------

def bounded_ball_graph(oracle: GeneratingSetOracle, radius: int,
                       universe_len: int) -> MetricGraph:
    """Ball of the word metric d_X around the identity, inside the universe.

    Vertices are the elements reachable within `radius` steps without leaving
    the box; edges join every vertex pair differing by a generating-set
    member.  Distances in the result are upper bounds for d_X.
    """
    if radius < 0:
        raise UniverseTooSmall("radius must be >= 0")
    group = oracle.group
    start = gd.identity_element(group)
    elems = {_nf_key(start): start}
    if radius > 0:
        gens = oracle.enumerate_up_to(3 * universe_len)
        clipped = False
        frontier = [start]
        for _ in range(radius):
            nxt = []
            for g in frontier:
                for u in gens:
                    h = gd.multiply(g, u)
                    if not in_universe(h, universe_len):
                        clipped = True
                        continue
                    k = _nf_key(h)
                    if k not in elems:
                        elems[k] = h
                        nxt.append(h)
            if not nxt and clipped and _ < radius - 1:
                raise UniverseTooSmall(
                    f"ball expansion stalled at radius {_ + 1} < {radius}")
            frontier = nxt
        key_edges = []
        elist = list(elems.values())
        eset = set(elems)
        for g in elist:
            for u in gens:
                h = gd.multiply(g, u)
                k = _nf_key(h)
                if k in eset and k != _nf_key(g):
                    key_edges.append((element_key(g), element_key(h)))
    else:
        key_edges = []
    prov = {"group": group.family, "construction": f"ball[{oracle.kind}]",
            "radius": radius, "universe_len": universe_len}
    if oracle.notes:
        prov["notes"] = oracle.notes
    return _build_graph((element_key(g) for g in elems.values()), key_edges, prov)


@dataclasses.dataclass(frozen=True)
class WordLengthResult:
    kind: str  # "exact" | "upper" | "unknown"
    value: int | None
    universe_len: int

    def render(self) -> str:
        if self.value is None:
            return f"unknown (universe {self.universe_len})"
        return f"{self.kind} {self.value}"


def word_length_bound(g: GarsideElement, oracle: GeneratingSetOracle,
                      universe_len: int) -> WordLengthResult:
    """BFS word length of g in the oracle's metric, within the universe."""
    if g.is_identity:
        return WordLengthResult("exact", 0, universe_len)
    if oracle.membership(g):
        return WordLengthResult("exact", 1, universe_len)
    gens = oracle.enumerate_up_to(3 * universe_len)
    target = _nf_key(g)
    dist = {_nf_key(gd.identity_element(oracle.group)): 0}
    frontier = [gd.identity_element(oracle.group)]
    d = 0
    clipped = False
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for u in gens:
                h = gd.multiply(v, u)
                k = _nf_key(h)
                if k == target:
                    if d <= 2:
                        return WordLengthResult("exact", d, universe_len)
                    exact = oracle.step_local and not clipped
                    return WordLengthResult("exact" if exact else "upper",
                                            d, universe_len)
                if not in_universe(h, universe_len):
                    clipped = True
                    continue
                if k not in dist:
                    dist[k] = d
                    nxt.append(h)
        frontier = nxt
    return WordLengthResult("unknown", None, universe_len)


# ---------------------------------------------------------------------------
# Quotient Cayley graph Cay(A)/<D> and the additional-length graph
# ---------------------------------------------------------------------------

class QuotientCayleyUniverse:
    """Lazy <D>-coset graph, with simple-step edges.

    Cosets are keyed by their canonical inf-0 factor tuple (the tau-minimum
    of the two inf-0 normal forms).  The D step never connects distinct
    cosets, so right multiplication by nontrivial simples and their inverses
    exhausts the edge relation; the step set is tau-closed, which makes
    neighbor generation from the canonical representative complete.  One
    step changes the canonical length by at most one, so breadth-first balls
    that never touch the length bound are exact.
    """

    def __init__(self, group: CoxeterGraph, len_bound: int):
        self.group = group
        self.len_bound = len_bound
        tab = group.table()
        self.tab = tab
        # Steps as (tau-parity, factor tuple): a simple x contributes
        # (0, (x,)), its inverse D^-1 lift(w0 x^-1) contributes (1, (c,)).
        self._steps: list[tuple[int, tuple[int, ...]]] = []
        for x in range(1, tab.size):
            if x != tab.w0:
                self._steps.append((0, (x,)))
                c = tab.left_comp[x]
                self._steps.append((1, (c,) if c else ()))
        self.provenance = {"group": group.family,
                           "construction": "quotient-cayley(lazy)",
                           "len_bound": len_bound}

    def canon(self, factors: tuple[int, ...]) -> tuple[int, ...]:
        tau = self.tab.tau
        return min(factors, tuple(tau[x] for x in factors))

    def contains(self, rep: GarsideElement) -> bool:
        return rep.canonical_length <= self.len_bound

    def key_of(self, g: GarsideElement) -> tuple[int, ...]:
        return self.canon(g.factors)

    def neighbor_keys(self, fs: tuple[int, ...]) -> list[tuple[int, ...]]:
        tab = self.tab
        tau = tab.tau
        out = []
        seen = {fs}
        twisted = tuple(tau[x] for x in fs)
        for parity, sf in self._steps:
            base = twisted if parity else fs
            _, res = gd._mul_normal(tab, base, sf)
            if len(res) > self.len_bound:
                continue
            k = self.canon(res)
            if k not in seen:
                seen.add(k)
                out.append(k)
        return out

    def bfs(self, source: GarsideElement, cutoff: int | None = None,
            targets: set[tuple[int, ...]] | None = None) -> dict[tuple[int, ...], int]:
        """Distances from a coset to everything reachable, by canonical key.

        Stops early once all target keys are resolved or the cutoff is hit.
        """
        if source.canonical_length > self.len_bound:
            raise UniverseTooSmall("source outside the universe")
        src = self.key_of(source)
        dist = {src: 0}
        frontier = [src]
        d = 0
        remaining = set(targets) - set(dist) if targets is not None else None
        while frontier and (cutoff is None or d < cutoff) and \
                (remaining is None or remaining):
            d += 1
            nxt = []
            for v in frontier:
                for w in self.neighbor_keys(v):
                    if w not in dist:
                        dist[w] = d
                        nxt.append(w)
                        if remaining is not None:
                            remaining.discard(w)
            frontier = nxt
        return dist


def _render_factors(group: CoxeterGraph, fs: tuple[int, ...]) -> str:
    return gd.GarsideElement(group, 0, fs).render()


def quotient_cayley_graph(group: CoxeterGraph, len_bound: int) -> MetricGraph:
    """Materialized Cay(A)/<D> truncation: cosets of canonical length <= bound,
    edges between cosets differing by one nontrivial simple."""
    universe = QuotientCayleyUniverse(group, len_bound)
    keys = {universe.canon(())}
    for ell in range(1, len_bound + 1):
        for tup in gd.iter_positive_factor_tuples(group, ell):
            keys.add(universe.canon(tup))
    key_edges = []
    for fs in keys:
        a = _render_factors(group, fs)
        for w in universe.neighbor_keys(fs):
            key_edges.append((a, _render_factors(group, w)))
    prov = {"group": group.family, "construction": "quotient-cayley",
            "len_bound": len_bound}
    return _build_graph((_render_factors(group, fs) for fs in keys),
                        key_edges, prov)


def build_cal_graph(group: CoxeterGraph, len_bound: int,
                    abs_sup_bound: int | None = None,
                    witness_bound: int | None = None) -> MetricGraph:
    """Additional-length graph truncation: <D>-cosets with simple-or-absorbable
    edges.  Absorbable steps come from the bounded census, so missing edges
    only make distances larger (a lower approximation of the true graph)."""
    abs_bound = len_bound if abs_sup_bound is None else abs_sup_bound
    steps: dict = {}
    tab = group.table()
    for x in range(1, tab.size):
        if x != tab.w0:
            el = gd.GarsideElement(group, 0, (x,))
            steps[_nf_key(el)] = el
            steps[_nf_key(gd.invert(el))] = gd.invert(el)
    for el in ab.enumerate_absorbable(group, abs_bound, witness_bound):
        steps.setdefault(_nf_key(el), el)
    reps = [gd.identity_element(group)]
    for ell in range(1, len_bound + 1):
        for tup in gd.iter_positive_factor_tuples(group, ell):
            reps.append(gd.GarsideElement(group, 0, tup))
    keys = {coset_key(r) for r in reps}
    key_edges = []
    for rep in reps:
        a = coset_key(rep)
        for u in steps.values():
            b = coset_key(gd.multiply(rep, u))
            if b != a and b in keys:
                key_edges.append((a, b))
    prov = {"group": group.family, "construction": "additional-length",
            "len_bound": len_bound, "abs_sup_bound": abs_bound,
            "notes": "absorbable edges from bounded census (lower approximation)"}
    return _build_graph(keys, key_edges, prov)


# ---------------------------------------------------------------------------
# The parabolic graph
# ---------------------------------------------------------------------------

def build_cparab_neighborhood(p0: ParabolicSubgroup, conj_len: int,
                              hops: int) -> MetricGraph:
    """Neighborhood of P0 in the graph of irreducible parabolic subgroups.

    Vertices: conjugates g^-1 A_T g for proper irreducible standard T and
    positive g of canonical length <= conj_len (conjugation by D-twists is
    covered because tau permutes the standard subsets), restricted to the
    hops-ball around P0.  Edges: commuting minimal central elements.
    """
    group = p0.group
    verts: dict[str, ParabolicSubgroup] = {p0.key(): p0}
    conjugators = [gd.identity_element(group)]
    for ell in range(1, conj_len + 1):
        for tup in gd.iter_positive_factor_tuples(group, ell):
            conjugators.append(gd.GarsideElement(group, 0, tup))
    for labels in pb.proper_irreducible_subsets(group):
        std = pb.standard_parabolic(group, labels)
        for g in conjugators:
            cand = pb.parabolic_from_conjugate(g, labels) if not g.is_identity else std
            verts.setdefault(cand.key(), cand)
    # Hops-restricted BFS from P0 over commutation edges.
    commute_memo: dict[tuple[str, str], bool] = {}

    def adjacent(a: ParabolicSubgroup, b: ParabolicSubgroup) -> bool:
        ka, kb = a.key(), b.key()
        if ka == kb:
            return False
        mk = (ka, kb) if ka < kb else (kb, ka)
        got = commute_memo.get(mk)
        if got is None:
            got = pb.omega_commute_edge(a, b)
            commute_memo[mk] = got
        return got

    kept = {p0.key(): p0}
    frontier = [p0]
    for _ in range(hops):
        nxt = []
        for v in frontier:
            for cand in verts.values():
                if cand.key() not in kept and adjacent(v, cand):
                    kept[cand.key()] = cand
                    nxt.append(cand)
        frontier = nxt
    key_edges = []
    kept_list = list(kept.values())
    for i, a in enumerate(kept_list):
        for b in kept_list[i + 1:]:
            if adjacent(a, b):
                key_edges.append((a.key(), b.key()))
    prov = {"group": group.family, "construction": "cparab",
            "p0": p0.key(), "conj_len": conj_len, "hops": hops}
    return _build_graph(kept.keys(), key_edges, prov)


# ---------------------------------------------------------------------------
# Fat-triangle geometry
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class TrianglePairCheck:
    side_a: str
    side_b: str
    d1: int
    d2: int
    expected: int
    measured: int | None

    @property
    def ok(self) -> bool:
        return self.measured == self.expected


@dataclasses.dataclass(frozen=True)
class FatTriangleReport:
    length: int
    pair_checks: tuple[TrianglePairCheck, ...]
    corner_checks: tuple[TrianglePairCheck, ...]
    all_pass: bool


def fat_triangle_distances(triangle: ab.FatTriangle, universe) -> FatTriangleReport:
    """Verify the cross-side distance law max(d1, d2) and the corner law.

    `universe` is a QuotientCayleyUniverse (or materialized graph wrapped in
    one); its bound must cover the triangle with margin 2.
    """
    if isinstance(universe, MetricGraph):
        raise TypeError("pass a QuotientCayleyUniverse for fat-triangle checks")
    L = triangle.length
    sides = {
        "1-x": triangle.side_x,
        "x-xy": triangle.side_top,
        "1-xy": triangle.side_xy,
    }
    for verts in sides.values():
        for v in verts:
            if coset_rep(v).canonical_length + 2 > universe.len_bound:
                raise UniverseTooSmall("universe must cover the triangle plus margin 2")
    # distances from the shared corner along a side are index distances
    shared = {
        ("1-x", "x-xy"): (lambda i: L - i, lambda i: i),
        ("x-xy", "1-xy"): (lambda i: L - i, lambda i: L - i),
        ("1-x", "1-xy"): (lambda i: i, lambda i: i),
    }
    all_keys = {universe.key_of(v)
                for verts in sides.values() for v in verts}
    dist_cache: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
    cap = L + 1  # every claim expects <= L; one step of margin detects excess

    def coset_distance(u: GarsideElement, v: GarsideElement) -> int | None:
        ku, kv = universe.key_of(u), universe.key_of(v)
        if ku in dist_cache:
            return dist_cache[ku].get(kv)
        if kv in dist_cache:
            return dist_cache[kv].get(ku)
        dist = universe.bfs(u, cutoff=cap, targets=all_keys)
        dist_cache[ku] = dist
        return dist.get(kv)

    pair_checks = []
    for (na, nb), (fa, fb) in shared.items():
        va, vb = sides[na], sides[nb]
        for i, u in enumerate(va):
            for j, v in enumerate(vb):
                d1, d2 = fa(i), fb(j)
                expected = max(d1, d2)
                measured = coset_distance(u, v)
                pair_checks.append(TrianglePairCheck(na, nb, d1, d2, expected, measured))
    corner_checks = []
    corner_opposite = {
        "1-x": triangle.xy,
        "x-xy": gd.identity_element(triangle.group),
        "1-xy": triangle.x,
    }
    for name, verts in sides.items():
        corner = corner_opposite[name]
        for v in verts:
            measured = coset_distance(corner, v)
            corner_checks.append(TrianglePairCheck(name, "corner", L, L, L, measured))
    all_pass = all(c.ok for c in pair_checks) and all(c.ok for c in corner_checks)
    return FatTriangleReport(L, tuple(pair_checks), tuple(corner_checks), all_pass)


@dataclasses.dataclass(frozen=True)
class ImageDiameterReport:
    diameter: int | None  # None: some pair unreachable within the truncation
    vertex_count: int
    conj_len: int

    def render(self) -> str:
        d = "unreachable-within-truncation" if self.diameter is None else str(self.diameter)
        return f"diameter<= {d} over {self.vertex_count} projected vertices " \
               f"(conj_len {self.conj_len})"


def cparab_image_diameter(triangle: ab.FatTriangle, conj_len: int) -> ImageDiameterReport:
    """Upper bound for the diameter of the triangle's parabolic projection.

    Projection: every triangle vertex v maps to the subgroups v A_T v^-1 over
    proper irreducible standard T (a <D>-coset invariant family).  The
    diameter is measured inside a conj_len truncation of the parabolic graph,
    so it is an upper bound carrying its truncation parameters.
    """
    group = triangle.group
    projected: dict[str, ParabolicSubgroup] = {}
    vertices = set()
    for side in (triangle.side_x, triangle.side_top, triangle.side_xy):
        vertices.update(side)
    for v in vertices:
        vinv = gd.invert(v)
        for labels in pb.proper_irreducible_subsets(group):
            sub = pb.parabolic_from_conjugate(vinv, labels)  # v A_T v^-1
            projected.setdefault(sub.key(), sub)
    projs = list(projected.values())
    if len(projs) <= 1:
        return ImageDiameterReport(0, len(projs), conj_len)
    base = projs[0]
    graph = build_cparab_neighborhood(base, conj_len, hops=2 * conj_len + 4)
    diam = 0
    for i, a in enumerate(projs):
        if not graph.has_vertex(a.key()):
            return ImageDiameterReport(None, len(projs), conj_len)
        dists = graph.bfs_distances(graph.index_of(a.key()))
        for b in projs[i + 1:]:
            if not graph.has_vertex(b.key()):
                return ImageDiameterReport(None, len(projs), conj_len)
            got = dists.get(graph.index_of(b.key()))
            if got is None:
                return ImageDiameterReport(None, len(projs), conj_len)
            diam = max(diam, got)
    return ImageDiameterReport(diam, len(projs), conj_len)


# ---------------------------------------------------------------------------
# Hyperbolicity estimate
# ---------------------------------------------------------------------------

def estimate_delta(graph: MetricGraph, sample: int, seed: int = 0,
                   per_component: bool = False) -> Fraction:
    """Four-point-condition defect, maximized over sampled 4-tuples.

    Exact when `sample` is at least the number of 4-subsets.  The sampler is
    seeded and recorded by callers in provenance.
    """
    n = len(graph.vertices)
    if n == 0:
        return Fraction(0)
    if not graph.is_connected():
        if not per_component:
            raise DisconnectedInput("graph is disconnected")
    dist_rows: dict[int, dict[int, int]] = {}

    def dist(i: int, j: int) -> int | None:
        if i not in dist_rows:
            dist_rows[i] = graph.bfs_distances(i)
        return dist_rows[i].get(j)

    def defect(a, b, c, d) -> Fraction:
        pairs = [(dist(a, b), dist(c, d)), (dist(a, c), dist(b, d)),
                 (dist(a, d), dist(b, c))]
        if any(x is None or y is None for x, y in pairs):
            return Fraction(0)  # different components; skip
        sums = sorted(x + y for x, y in pairs)
        return Fraction(sums[2] - sums[1], 2)

    best = Fraction(0)
    total = n * (n - 1) * (n - 2) * (n - 3) // 24 if n >= 4 else 0
    if total and sample >= total:
        for quad in itertools.combinations(range(n), 4):
            best = max(best, defect(*quad))
        return best
    rng = _random.Random(seed)
    if n < 4:
        return Fraction(0)
    for _ in range(sample):
        quad = rng.sample(range(n), 4)
        best = max(best, defect(*quad))
    return best


# ---------------------------------------------------------------------------
# Quasi-isometry constants of the cocompact-action lemma
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class QiConstants:
    m1: int
    m2: int
    m3: int
    m1_exact: bool


def qi_constants(graph: MetricGraph, orbit_reps: Sequence[str],
                 edge_reps: Sequence[tuple[str, str]],
                 mover_bounds: dict[str, int] | None = None,
                 edge_mover_bounds: dict[tuple[str, str], tuple[int, int]] | None = None
                 ) -> QiConstants:
    """Constants (M1, M2, M3) of the cocompact-action argument.

    M1 is the diameter of the representative set inside the supplied graph
    truncation; a distance-2 value is certified exact because missing edges
    are decided by the (exact) adjacency predicate used to build the graph.
    M2 and M3 take the supplied word-length bounds for the moving elements
    g_a (per vertex representative) and alpha_i, beta_i (per edge
    representative); identity movers cost 0.
    """
    for key in orbit_reps:
        if not graph.has_vertex(key):
            raise RepresentativeMissing(f"orbit representative {key!r} missing")
    for a, b in edge_reps:
        if not graph.has_vertex(a) or not graph.has_vertex(b):
            raise RepresentativeMissing("edge representative endpoint missing")
    m1 = 0
    exact = True
    for key in orbit_reps:
        dists = graph.bfs_distances(graph.index_of(key))
        for other in orbit_reps:
            got = dists.get(graph.index_of(other))
            if got is None:
                raise RepresentativeMissing(
                    "representatives are disconnected inside the truncation")
            m1 = max(m1, got)
            if got > 2:
                exact = False  # only an upper bound within this truncation
    m2 = max(mover_bounds.values(), default=0) if mover_bounds else 0
    m3 = 0
    if edge_mover_bounds:
        for pa, pbnd in edge_mover_bounds.values():
            m3 = max(m3, pa, pbnd)
    return QiConstants(m1, m2, m3, exact)


@dataclasses.dataclass(frozen=True)
class LipschitzReport:
    samples: int
    failures: int
    m1: int

    @property
    def all_pass(self) -> bool:
        return self.failures == 0


def _standard_paths(group: CoxeterGraph) -> dict[tuple[str, str], list[ParabolicSubgroup]]:
    """Paths of length <= 2 between standard parabolics, via commute edges."""
    stds = [pb.standard_parabolic(group, labels)
            for labels in pb.proper_irreducible_subsets(group)]
    paths: dict[tuple[str, str], list[ParabolicSubgroup]] = {}
    for a in stds:
        for b in stds:
            if a.key() == b.key():
                paths[(a.key(), b.key())] = [a]
            elif pb.omega_commute_edge(a, b):
                paths[(a.key(), b.key())] = [a, b]
    for a in stds:
        for b in stds:
            if (a.key(), b.key()) in paths:
                continue
            for mid in stds:
                if (a.key(), mid.key()) in paths and len(paths[(a.key(), mid.key())]) == 2 \
                        and (mid.key(), b.key()) in paths and len(paths[(mid.key(), b.key())]) == 2:
                    paths[(a.key(), b.key())] = [a, mid, b]
                    break
    return paths


def lipschitz_path_check(group: CoxeterGraph, base: ParabolicSubgroup,
                         samples: int, seed: int = 0,
                         max_steps: int = 3) -> LipschitzReport:
    """Certify d_X(psi(g), psi(h)) <= 2 M1 d_T(g, h) on sampled pairs.

    h = g t_1 .. t_j with each t_i in the normalizer of a random standard
    parabolic, so d_T(g, h) <= j.  For each step the explicit path
    u P u^-1 .. u A_T u^-1 .. u t P t^-1 u^-1 of length <= 2 M1 is built from
    the precomputed standard paths, and every consecutive pair is verified by
    the commutation predicate.  A failure of any edge check counts as a
    Lipschitz failure (none are expected).
    """
    rng = _random.Random(seed)
    subsets = pb.proper_irreducible_subsets(group)
    paths = _standard_paths(group)
    m1 = max(len(p) - 1 for p in paths.values())
    failures = 0
    for _ in range(samples):
        j = rng.randint(1, max_steps)
        u = gd.identity_element(group)
        ok = True
        for _step in range(j):
            labels = rng.choice(subsets)
            # A normalizer element of A_T: a short A_T word times a central power.
            word_len = rng.randint(0, 2)
            t = gd.identity_element(group)
            for _w in range(word_len):
                lab = rng.choice(labels)
                t = gd.multiply(t, gd.generator_element(group, lab))
            if rng.random() < 0.3:
                t = gd.multiply(t, gd.delta_pow(group, 2 * rng.choice([-1, 1])))
            if rng.random() < 0.3:
                t = gd.multiply(t, gd.omega_of(group, labels).element)
            # Path from u P u^-1 to (ut) P (ut)^-1 through u A_T u^-1.
            std_t = pb.standard_parabolic(group, labels)
            leg1 = paths.get((base.key(), std_t.key()))
            if leg1 is None:
                ok = False
                break
            uinv = gd.invert(u)
            ut = gd.multiply(u, t)
            utinv = gd.invert(ut)
            verts: list[ParabolicSubgroup] = []
            for p in leg1:
                verts.append(_conjugate_parabolic(p, uinv))
            for p in reversed(leg1[:-1]):
                verts.append(_conjugate_parabolic(p, utinv))
            # Verify consecutive edges (equal keys are fine: zero-length hop).
            for a, b in zip(verts, verts[1:]):
                if a.key() == b.key():
                    continue
                if not pb.omega_commute_edge(a, b):
                    ok = False
                    break
            if not ok:
                break
            if len(verts) - 1 > 2 * m1:
                ok = False
                break
            u = ut
        if not ok:
            failures += 1
    return LipschitzReport(samples, failures, m1)


def _conjugate_parabolic(p: ParabolicSubgroup, by_inv: GarsideElement) -> ParabolicSubgroup:
    """The subgroup g P g^-1 where by_inv = g^-1."""
    omega = gd.multiply(gd.multiply(gd.invert(by_inv), p.omega), by_inv)
    return ParabolicSubgroup(p.group, omega,
                             gd.multiply(p.witness_conj, by_inv), p.witness_subset)
