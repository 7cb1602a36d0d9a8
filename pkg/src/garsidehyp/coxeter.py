"""
Exact arithmetic in finite Coxeter groups.

A group is described by a `CoxeterGraph` (generator labels plus the symmetric
matrix of orders m_{s,t}).  Elements of the finite Coxeter group W are kept in
per-family combinatorial models:

- rank 1           : the two-element group,
- rank 2           : dihedral rotation/reflection pairs (k, eps),
- A_n  (n >= 3)    : permutations of n+1 points in one-line notation,
- B_n  (n >= 3)    : signed permutations,
- D_n  (n >= 4)    : even-signed permutations,
- E6/E7/E8, F4,
  H3/H4            : matrices of the reflection representation, with entries
                     in Z or in Z[phi] (phi^2 = phi + 1) when an edge label 5
                     is present,
- reducible input  : the direct product of the component models.

A model only has to provide an identity key, generator keys and an exact
multiplication of keys.  Everything else (lengths, descent sets, reduced
words, inverses, the longest element) is derived once per group by a
breadth-first enumeration of W stored in a `SimpleTable`.  Element indices in
the table are assigned in shortlex order of the lexicographically least
reduced word, so index equality is element equality and index 0 is the
identity.

Enumeration refuses to run past a configured cap on |W| (default 52 000,
large enough for E6) and raises OrderOverflow instead of silently grinding.
"""

from __future__ import annotations

import dataclasses
import math
import re
from typing import Iterable, Sequence

from .errors import (
    EmptySubset,
    GroupMismatch,
    NonSpherical,
    OrderOverflow,
    RankOutOfRange,
    UnknownFamily,
    UnknownGenerator,
)

DEFAULT_ORDER_CAP = 52_000

LEFT = "left"
RIGHT = "right"


# ---------------------------------------------------------------------------
# Diagrams
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class CoxeterGraph:
    """A spherical-type diagram: generator labels and the order matrix.

    The matrix stores m_{s,t} with m_{s,s} = 1; off-diagonal entries are
    finite integers >= 2 (infinite labels are rejected as non-spherical).
    `family` is a human-readable tag such as "A3", "I2(7)" or "A1xA1".
    """

    generators: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]
    family: str

    def __post_init__(self):
        n = len(self.generators)
        if n == 0:
            raise EmptySubset("a Coxeter graph needs at least one generator")
        if len(set(self.generators)) != n:
            raise NonSpherical("duplicate generator labels")
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise NonSpherical("matrix shape does not match the generator count")
        for i in range(n):
            if self.matrix[i][i] != 1:
                raise NonSpherical("diagonal entries must be 1")
            for j in range(i + 1, n):
                m = self.matrix[i][j]
                if m != self.matrix[j][i]:
                    raise NonSpherical("matrix must be symmetric")
                if not isinstance(m, int) or m < 2:
                    raise NonSpherical("off-diagonal entries must be integers >= 2")
        # Verifies sphericity: every component must classify.
        component_families(self)

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def is_dihedral(self) -> bool:
        return self.rank == 2

    def m(self, i: int, j: int) -> int:
        return self.matrix[i][j]

    def gen_index(self, label: str) -> int:
        try:
            return self.generators.index(label)
        except ValueError:
            raise UnknownGenerator(f"unknown generator {label!r} in {self.family}") from None

    def gen_indices(self, labels: Iterable[str]) -> tuple[int, ...]:
        return tuple(self.gen_index(lab) for lab in labels)

    def edges(self) -> list[tuple[int, int, int]]:
        """Labeled diagram edges (i, j, m) with m >= 3."""
        out = []
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                if self.matrix[i][j] >= 3:
                    out.append((i, j, self.matrix[i][j]))
        return out

    def components(self) -> list[tuple[int, ...]]:
        """Connected components of the underlying labeled graph."""
        seen: set[int] = set()
        comps = []
        for start in range(self.rank):
            if start in seen:
                continue
            stack, comp = [start], set()
            while stack:
                v = stack.pop()
                if v in comp:
                    continue
                comp.add(v)
                stack.extend(w for w in range(self.rank)
                             if w != v and self.matrix[v][w] >= 3 and w not in comp)
            seen |= comp
            comps.append(tuple(sorted(comp)))
        return comps

    @property
    def irreducible(self) -> bool:
        return len(self.components()) == 1

    def is_connected_subset(self, subset: Sequence[int]) -> bool:
        """Whether the induced sub-diagram on the given indices is connected."""
        sub = set(subset)
        if not sub:
            return False
        stack, seen = [next(iter(sub))], set()
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(w for w in sub if w != v and self.matrix[v][w] >= 3 and w not in seen)
        return seen == sub

    def subgraph(self, subset: Sequence[int]) -> "CoxeterGraph":
        """The induced diagram on a generator subset, with the same labels."""
        idx = tuple(sorted(set(subset)))
        if not idx:
            raise EmptySubset("empty generator subset")
        gens = tuple(self.generators[i] for i in idx)
        mat = tuple(tuple(self.matrix[i][j] for j in idx) for i in idx)
        g = CoxeterGraph(gens, mat, "?")
        object.__setattr__(g, "family", "x".join(f for _, f in component_families(g)))
        return g

    def coxeter_order(self) -> int:
        """|W| via the classification's closed forms, component by component."""
        order = 1
        for _, fam in component_families(self):
            order *= _family_order(fam)
        return order

    def table(self, cap: int | None = None) -> "SimpleTable":
        return _table_for(self, DEFAULT_ORDER_CAP if cap is None else cap)


def _family_order(fam: str) -> int:
    letter, arg = _family_parts(fam)
    if letter == "A":
        return math.factorial(arg + 1)
    if letter == "B":
        return 2 ** arg * math.factorial(arg)
    if letter == "D":
        return 2 ** (arg - 1) * math.factorial(arg)
    if letter == "E":
        return {6: 51_840, 7: 2_903_040, 8: 696_729_600}[arg]
    if letter == "F":
        return 1152
    if letter == "H":
        return {3: 120, 4: 14_400}[arg]
    if letter == "I":
        return 2 * arg
    raise UnknownFamily(fam)


def _family_parts(fam: str) -> tuple[str, int]:
    m = re.fullmatch(r"I2\((\d+)\)", fam)
    if m:
        return "I", int(m.group(1))
    m = re.fullmatch(r"([ABDEFH])(\d+)", fam)
    if m:
        return m.group(1), int(m.group(2))
    raise UnknownFamily(fam)


def component_families(g: CoxeterGraph) -> list[tuple[tuple[int, ...], str]]:
    """Classify each connected component of the diagram; NonSpherical if any fails."""
    out = []
    for comp in g.components():
        out.append((comp, _classify_component(g, comp)))
    return out


def _classify_component(g: CoxeterGraph, comp: tuple[int, ...]) -> str:
    n = len(comp)
    if n == 1:
        return "A1"
    sub = {i: [j for j in comp if j != i and g.matrix[i][j] >= 3] for i in comp}
    labels = sorted(g.matrix[i][j] for a, i in enumerate(comp) for j in comp[a + 1:]
                    if g.matrix[i][j] >= 3)
    if n == 2:
        m = labels[0]
        if m == 3:
            return "A2"
        if m == 4:
            return "B2"
        return f"I2({m})"
    degs = sorted(len(v) for v in sub.values())
    if len(labels) != n - 1 or degs[0] != 1:
        raise NonSpherical("component is not a tree of the classified shapes")
    if degs[-1] == 2:
        # A path; inspect the multiset of labels and their position.
        big = [m for m in labels if m > 3]
        if not big:
            return f"A{n}"
        if len(big) > 1:
            raise NonSpherical("path with more than one higher label")
        ends = [i for i in comp if len(sub[i]) == 1]
        order = _path_order(sub, ends[0])
        lab_seq = [g.matrix[order[k]][order[k + 1]] for k in range(n - 1)]
        if big[0] == 4 and (lab_seq[0] == 4 or lab_seq[-1] == 4):
            return f"B{n}"
        if big[0] == 4 and n == 4 and lab_seq[1] == 4:
            return "F4"
        if big[0] == 5 and n in (3, 4) and (lab_seq[0] == 5 or lab_seq[-1] == 5):
            return f"H{n}"
        raise NonSpherical("unrecognized labeled path")
    if degs[-1] == 3 and degs.count(3) == 1 and all(m == 3 for m in labels):
        fork = next(i for i in comp if len(sub[i]) == 3)
        arms = sorted(_arm_length(sub, fork, first) for first in sub[fork])
        if arms[:2] == [1, 1]:
            return f"D{n}"
        if arms == [1, 2, n - 4] and n in (6, 7, 8):
            return f"E{n}"
        raise NonSpherical("unrecognized fork shape")
    raise NonSpherical("diagram is not of spherical type")


def _path_order(sub: dict[int, list[int]], start: int) -> list[int]:
    order, prev, cur = [start], None, start
    while True:
        nxt = [v for v in sub[cur] if v != prev]
        if not nxt:
            return order
        prev, cur = cur, nxt[0]
        order.append(cur)


def _arm_length(sub: dict[int, list[int]], fork: int, first: int) -> int:
    length, prev, cur = 1, fork, first
    while True:
        nxt = [v for v in sub[cur] if v != prev]
        if not nxt:
            return length
        prev, cur = cur, nxt[0]
        length += 1


# ---------------------------------------------------------------------------
# Group spec grammar
# ---------------------------------------------------------------------------

def parse_group_spec(spec: str) -> CoxeterGraph:
    """Parse a family token (A3, B4, D5, E6..E8, F4, H3, H4, I2(m)).

    I2(3) and I2(4) are aliases of A2 and B2.  Rank-2 groups use generator
    labels a, b; all others use s1..sn.
    """
    spec = spec.strip()
    m = re.fullmatch(r"I2\((\d+)\)", spec)
    if m:
        order = int(m.group(1))
        if order < 3:
            raise RankOutOfRange(f"I2(m) needs m >= 3, got {order}")
        return _dihedral_graph(order)
    m = re.fullmatch(r"([A-Z])(\d+)", spec)
    if not m:
        raise UnknownFamily(f"cannot parse group spec {spec!r}")
    letter, n = m.group(1), int(m.group(2))
    if letter == "A":
        if n < 1:
            raise RankOutOfRange("A_n needs n >= 1")
        if n == 1:
            return CoxeterGraph(("s1",), ((1,),), "A1")
        if n == 2:
            return _dihedral_graph(3)
        return _path_graph(n, [3] * (n - 1), f"A{n}")
    if letter == "B":
        if n < 2:
            raise RankOutOfRange("B_n needs n >= 2")
        if n == 2:
            return _dihedral_graph(4)
        return _path_graph(n, [3] * (n - 2) + [4], f"B{n}")
    if letter == "D":
        if n < 4:
            raise RankOutOfRange("D_n needs n >= 4")
        return _fork_graph(n, attach=n - 3, family=f"D{n}")
    if letter == "E":
        if n not in (6, 7, 8):
            raise RankOutOfRange("E_n needs n in {6, 7, 8}")
        return _fork_graph(n, attach=2, family=f"E{n}")
    if letter == "F":
        if n != 4:
            raise RankOutOfRange("only F4 exists")
        return _path_graph(4, [3, 4, 3], "F4")
    if letter == "H":
        if n not in (3, 4):
            raise RankOutOfRange("H_n needs n in {3, 4}")
        return _path_graph(n, [5] + [3] * (n - 2), f"H{n}")
    raise UnknownFamily(f"unknown family letter {letter!r}")


def _dihedral_graph(m: int) -> CoxeterGraph:
    fam = {3: "A2", 4: "B2"}.get(m, f"I2({m})")
    return CoxeterGraph(("a", "b"), ((1, m), (m, 1)), fam)


def _path_graph(n: int, labels: list[int], family: str) -> CoxeterGraph:
    gens = tuple(f"s{i}" for i in range(1, n + 1))
    mat = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for k, m in enumerate(labels):
        mat[k][k + 1] = mat[k + 1][k] = m
    return CoxeterGraph(gens, tuple(tuple(r) for r in mat), family)


def _fork_graph(n: int, attach: int, family: str) -> CoxeterGraph:
    # Path s1..s_{n-1} plus s_n attached (label 3) to s_{attach+1} (0-based `attach`).
    gens = tuple(f"s{i}" for i in range(1, n + 1))
    mat = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for k in range(n - 2):
        mat[k][k + 1] = mat[k + 1][k] = 3
    mat[attach][n - 1] = mat[n - 1][attach] = 3
    return CoxeterGraph(gens, tuple(tuple(r) for r in mat), family)


@dataclasses.dataclass(frozen=True)
class GraphProperties:
    irreducible: bool
    coxeter_order: int
    rank: int


def graph_properties(g: CoxeterGraph, cap: int | None = None) -> GraphProperties:
    """Connectivity, |W| (closed form per classified family) and rank.

    Raises OrderOverflow when |W| exceeds the cap; the cap is the same one that
    guards element enumeration, so a group whose order is reported here can
    also be tabulated.
    """
    cap = DEFAULT_ORDER_CAP if cap is None else cap
    order = g.coxeter_order()
    if order > cap:
        raise OrderOverflow(f"|W| = {order} exceeds cap {cap}")
    return GraphProperties(g.irreducible, order, g.rank)


# ---------------------------------------------------------------------------
# Element models (identity + generator keys + exact key multiplication)
# ---------------------------------------------------------------------------

class _Rank1Model:
    def identity(self):
        return 0

    def gens(self):
        return [1]

    def mult(self, u, v):
        return u ^ v


class _DihedralModel:
    """Keys (k, eps): rotation r^k for eps = 0, reflection r^k * a for eps = 1.

    With a = (0, 1) and b = (m-1, 1) the product ab is the rotation r.
    """

    def __init__(self, m: int):
        self.m = m

    def identity(self):
        return (0, 0)

    def gens(self):
        return [(0, 1), (self.m - 1, 1)]

    def mult(self, u, v):
        j, e1 = u
        k, e2 = v
        rot = (j + k) % self.m if e1 == 0 else (j - k) % self.m
        return (rot, e1 ^ e2)


class _PermModel:
    """S_n in one-line tuples; mult(u, v) maps x to v(u(x))."""

    def __init__(self, n: int):
        self.n = n

    def identity(self):
        return tuple(range(self.n))

    def gens(self):
        out = []
        for i in range(self.n - 1):
            t = list(range(self.n))
            t[i], t[i + 1] = t[i + 1], t[i]
            out.append(tuple(t))
        return out

    def mult(self, u, v):
        return tuple(v[x] for x in u)


class _SignedPermModel:
    """B_n as signed permutations: tuples of values in {+-1..+-n}.

    Generators: s_i (i < n) swaps the values i and i+1; s_n negates the
    value n.  mult(u, v) applies u first, then v.
    """

    def __init__(self, n: int):
        self.n = n

    def identity(self):
        return tuple(range(1, self.n + 1))

    def _apply(self, w, x):
        return w[x - 1] if x > 0 else -w[-x - 1]

    def gens(self):
        out = []
        for i in range(1, self.n):
            t = list(range(1, self.n + 1))
            t[i - 1], t[i] = t[i], t[i - 1]
            out.append(tuple(t))
        t = list(range(1, self.n + 1))
        t[self.n - 1] = -self.n
        out.append(tuple(t))
        return out

    def mult(self, u, v):
        return tuple(self._apply(v, x) for x in u)


class _EvenSignedPermModel(_SignedPermModel):
    """D_n: same keys, but the last generator is the negating swap of n-1, n."""

    def gens(self):
        out = []
        for i in range(1, self.n):
            t = list(range(1, self.n + 1))
            t[i - 1], t[i] = t[i], t[i - 1]
            out.append(tuple(t))
        t = list(range(1, self.n + 1))
        t[self.n - 2], t[self.n - 1] = -self.n, -(self.n - 1)
        out.append(tuple(t))
        return out


class _ReflectionModel:
    """Reflection representation with exact entries.

    Entries are plain ints for crystallographic diagrams and pairs (a, b)
    meaning a + b*phi when an edge label 5 is present.  Generator matrices
    send the basis vector alpha_j to alpha_j - A[i][j] alpha_i.
    """

    def __init__(self, g: CoxeterGraph):
        self.rank = g.rank
        self.golden = any(m == 5 for _, _, m in g.edges())
        if any(m not in (2, 3, 4, 5) for _, _, m in g.edges()):
            raise NonSpherical("matrix model supports edge labels up to 5")
        n = g.rank
        A = [[0] * n for _ in range(n)]
        for i in range(n):
            A[i][i] = 2
        for i, j, m in g.edges():
            if m == 3:
                A[i][j] = A[j][i] = -1
            elif m == 4:
                A[i][j], A[j][i] = -1, -2
            else:
                A[i][j] = A[j][i] = "phi"
        if self.golden:
            conv = lambda x: (-1, 0) if x == -1 else ((0, -1) if x == "phi" else (x, 0))
            self.one, self.zero = (1, 0), (0, 0)
            self.A = [[conv(x) for x in row] for row in A]
        else:
            self.one, self.zero = 1, 0
            self.A = A
        self._gens = [self._gen_matrix(i) for i in range(n)]

    def _radd(self, x, y):
        if self.golden:
            return (x[0] + y[0], x[1] + y[1])
        return x + y

    def _rmul(self, x, y):
        if self.golden:
            a, b = x
            c, d = y
            return (a * c + b * d, a * d + b * c + b * d)
        return x * y

    def _gen_matrix(self, i):
        n = self.rank
        rows = []
        for r in range(n):
            row = []
            for c in range(n):
                val = self.one if r == c else self.zero
                if r == i:
                    coeff = self.A[i][c]
                    neg = (-coeff[0], -coeff[1]) if self.golden else -coeff
                    val = self._radd(val, neg)
                row.append(val)
            rows.append(tuple(row))
        return tuple(rows)

    def identity(self):
        n = self.rank
        return tuple(tuple(self.one if r == c else self.zero for c in range(n))
                     for r in range(n))

    def gens(self):
        return list(self._gens)

    def mult(self, u, v):
        n = self.rank
        out = []
        for r in range(n):
            row = []
            for c in range(n):
                acc = self.zero
                for k in range(n):
                    acc = self._radd(acc, self._rmul(u[r][k], v[k][c]))
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)


class _ProductModel:
    """Direct product of component models; keys are tuples of component keys."""

    def __init__(self, models, comp_gen_index):
        # comp_gen_index maps a global generator index to (component, local index).
        self.models = models
        self.comp_gen_index = comp_gen_index

    def identity(self):
        return tuple(m.identity() for m in self.models)

    def gens(self):
        ids = [m.identity() for m in self.models]
        out = []
        for comp, local in self.comp_gen_index:
            key = list(ids)
            key[comp] = self.models[comp].gens()[local]
            out.append(tuple(key))
        return out

    def mult(self, u, v):
        return tuple(m.mult(a, b) for m, a, b in zip(self.models, u, v))


def _model_for(g: CoxeterGraph):
    comps = component_families(g)
    if len(comps) > 1:
        models, pos = [], {}
        for ci, (comp, fam) in enumerate(comps):
            sub = g.subgraph(comp)
            models.append(_model_for(sub))
            for local, global_idx in enumerate(comp):
                pos[global_idx] = (ci, local)
        return _ProductModel(models, [pos[i] for i in range(g.rank)])
    fam = comps[0][1]
    letter, n = _family_parts(fam)
    if g.rank == 1:
        return _Rank1Model()
    if g.rank == 2:
        return _DihedralModel(g.matrix[0][1])
    if letter == "A":
        return _PermModel(n + 1)
    if letter == "B":
        return _SignedPermModel(n)
    if letter == "D":
        # The fork generator is the last label; the model matches the parsed
        # layout (path s1..s_{n-1}, fork s_n on s_{n-2}).
        return _EvenSignedPermModel(n)
    return _ReflectionModel(g)


# ---------------------------------------------------------------------------
# The element table
# ---------------------------------------------------------------------------

class SimpleTable:
    """Indexed enumeration of W with the derived combinatorial data.

    Everything downstream (Garside normal forms, searches, graphs) works with
    integer indices into this table.  Lengths are breadth-first distances from
    the identity, descent sets are bitmasks over generators, and `word[x]` is
    the lexicographically least reduced word of x (tuple of generator
    indices).  Indices are shortlex-ordered: index 0 is the identity and the
    last index is the longest element w0.
    """

    def __init__(self, graph: CoxeterGraph, cap: int):
        model = _model_for(graph)
        ident = model.identity()
        gen_keys = model.gens()
        rank = graph.rank

        key_len: dict = {ident: 0}
        levels = [[ident]]
        while levels[-1]:
            nxt = []
            for key in levels[-1]:
                for s in range(rank):
                    prod = model.mult(key, gen_keys[s])
                    if prod not in key_len:
                        key_len[prod] = len(levels)
                        nxt.append(prod)
                        if len(key_len) > cap:
                            raise OrderOverflow(
                                f"|W| of {graph.family} exceeds cap {cap}")
            levels.append(nxt)

        # Lexicographically least reduced words, by increasing length.
        word: dict = {ident: ()}
        for level in levels[1:]:
            for key in level:
                best = None
                for s in range(rank):
                    left = model.mult(gen_keys[s], key)
                    if key_len[left] == key_len[key] - 1:
                        cand = (s,) + word[left]
                        if best is None or cand < best:
                            best = cand
                word[key] = best

        ordered = sorted(key_len, key=lambda k: (key_len[k], word[k]))
        index = {k: i for i, k in enumerate(ordered)}
        size = len(ordered)

        self.graph = graph
        self.size = size
        self.length = [key_len[k] for k in ordered]
        self.word = [word[k] for k in ordered]
        self.rmult = [[index[model.mult(k, gk)] for gk in gen_keys] for k in ordered]
        self.lmult = [[index[model.mult(gk, k)] for gk in gen_keys] for k in ordered]
        maxlen = self.length[-1]
        if self.length.count(maxlen) != 1:
            raise NonSpherical("longest element is not unique; model is broken")
        self.w0 = size - 1

        self.rdesc = [0] * size
        self.ldesc = [0] * size
        self.support = [0] * size
        for x in range(size):
            for s in range(rank):
                if self.length[self.rmult[x][s]] < self.length[x]:
                    self.rdesc[x] |= 1 << s
                if self.length[self.lmult[x][s]] < self.length[x]:
                    self.ldesc[x] |= 1 << s
            mask = 0
            for s in self.word[x]:
                mask |= 1 << s
            self.support[x] = mask

        self.inverse = [0] * size
        for x in range(size):
            acc = 0
            for s in reversed(self.word[x]):
                acc = self.rmult[acc][s]
            self.inverse[x] = acc

        # left_comp[x] = w0 x^{-1}  (the simple completing x to w0 on the left)
        # tau[x]       = w0 x w0    (conjugation by the Garside element)
        self.left_comp = [self._fold(self.w0, self.inverse[x]) for x in range(size)]
        self.tau = [self._fold(self._fold(self.w0, x), self.w0) for x in range(size)]

        self._mult_memo: dict[tuple[int, int], int] = {}
        self._renorm_memo: dict[tuple[int, int], tuple[int, int]] = {}
        self._follows_memo: dict[int, tuple[int, ...]] = {}

    def _fold(self, x: int, y: int) -> int:
        for s in self.word[y]:
            x = self.rmult[x][s]
        return x

    def mult(self, x: int, y: int) -> int:
        """Product in W (not the monoid product of lifts)."""
        key = (x, y)
        got = self._mult_memo.get(key)
        if got is None:
            got = self._fold(x, y)
            self._mult_memo[key] = got
        return got

    def is_left_weighted(self, x: int, y: int) -> bool:
        return self.ldesc[y] & ~self.rdesc[x] == 0

    def renorm(self, x: int, y: int) -> tuple[int, int]:
        """Slide letters left until (x, y) is left-weighted.

        Preserves the monoid product lift(x)lift(y); may return y = identity
        or x = w0.
        """
        key = (x, y)
        got = self._renorm_memo.get(key)
        if got is None:
            a, b = x, y
            while True:
                free = self.ldesc[b] & ~self.rdesc[a]
                if not free:
                    break
                s = (free & -free).bit_length() - 1
                a = self.rmult[a][s]
                b = self.lmult[b][s]
            got = (a, b)
            self._renorm_memo[key] = got
        return got

    def follows(self, x: int) -> tuple[int, ...]:
        """All y (nontrivial, not w0) with (x, y) left-weighted, index order."""
        mask = self.rdesc[x]
        got = self._follows_memo.get(mask)
        if got is None:
            got = tuple(y for y in range(1, self.size)
                        if y != self.w0 and self.ldesc[y] & ~mask == 0)
            self._follows_memo[mask] = got
        return got

    def nontrivial_simples(self) -> range:
        """Indices of simples excluding the identity; w0 is the last index."""
        return range(1, self.size)

    def mask_of(self, indices: Iterable[int]) -> int:
        mask = 0
        for s in indices:
            mask |= 1 << s
        return mask

    def longest_in(self, subset_mask: int) -> int:
        """w0 of the standard parabolic W_T, T given as a bitmask."""
        x = 0
        while True:
            free = subset_mask & ~self.rdesc[x]
            if not free:
                return x
            s = (free & -free).bit_length() - 1
            x = self.rmult[x][s]


_tables: dict[CoxeterGraph, SimpleTable] = {}


def _table_for(graph: CoxeterGraph, cap: int) -> SimpleTable:
    tab = _tables.get(graph)
    if tab is None:
        tab = SimpleTable(graph, cap)
        _tables[graph] = tab
    return tab


# ---------------------------------------------------------------------------
# Elements of W
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class SimpleElement:
    """An element of the finite Coxeter group W, canonical per (group, index)."""

    group: CoxeterGraph
    index: int

    @property
    def length(self) -> int:
        return self.group.table().length[self.index]

    @property
    def word(self) -> tuple[int, ...]:
        return self.group.table().word[self.index]

    @property
    def word_labels(self) -> tuple[str, ...]:
        return tuple(self.group.generators[s] for s in self.word)

    def render(self) -> str:
        return "".join(self.word_labels) if self.word else "e"

    @property
    def is_identity(self) -> bool:
        return self.index == 0

    @property
    def is_longest(self) -> bool:
        return self.index == self.group.table().w0


def identity_element(g: CoxeterGraph) -> SimpleElement:
    return SimpleElement(g, 0)


def generator_element(g: CoxeterGraph, label: str) -> SimpleElement:
    tab = g.table()
    return SimpleElement(g, tab.rmult[0][g.gen_index(label)])


def element_from_labels(g: CoxeterGraph, labels: Iterable[str]) -> SimpleElement:
    tab = g.table()
    x = 0
    for lab in labels:
        x = tab.rmult[x][g.gen_index(lab)]
    return SimpleElement(g, x)


def _check_same_group(u: SimpleElement, v: SimpleElement):
    if u.group != v.group:
        raise GroupMismatch("elements live in different groups")


def element_multiply(u: SimpleElement, v: SimpleElement) -> SimpleElement:
    _check_same_group(u, v)
    return SimpleElement(u.group, u.group.table().mult(u.index, v.index))


def element_inverse(u: SimpleElement) -> SimpleElement:
    return SimpleElement(u.group, u.group.table().inverse[u.index])


def descents(w: SimpleElement, side: str) -> frozenset[str]:
    """Generators s with l(sw) < l(w) (left) or l(ws) < l(w) (right)."""
    tab = w.group.table()
    mask = tab.ldesc[w.index] if side == LEFT else tab.rdesc[w.index]
    return frozenset(w.group.generators[s] for s in range(w.group.rank)
                     if mask >> s & 1)


def longest_element(g: CoxeterGraph, subset: Iterable[str]) -> SimpleElement:
    labels = tuple(subset)
    if not labels:
        raise EmptySubset("longest_element needs a nonempty subset")
    tab = g.table()
    return SimpleElement(g, tab.longest_in(tab.mask_of(g.gen_indices(labels))))


def weak_order_divides(u: SimpleElement, v: SimpleElement, side: str) -> bool:
    """Left: u is a prefix of v in the weak order; right: a suffix."""
    _check_same_group(u, v)
    tab = u.group.table()
    if side == LEFT:
        rest = tab.mult(tab.inverse[u.index], v.index)
    else:
        rest = tab.mult(v.index, tab.inverse[u.index])
    return u.length + tab.length[rest] == v.length
