"""Quantale multiplication tables over finite lattices.

On a finite lattice a multiplication preserves arbitrary joins in each
variable as soon as it preserves binary joins and annihilates the bottom,
so that is what :func:`validate_quantale` checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    BottomNotAnnihilating,
    ConditionsFail,
    GammaIsTop,
    NotAGroup,
    NotANucleus,
    NotAssociative,
    NotJoinPreserving,
    QuantaleError,
)
from .lattice import (
    Lattice,
    approximable,
    extend_lattice,
    is_nondistributive_triple,
    lattice_isomorphisms,
    sublattice,
    validate_lattice,
)

__all__ = [
    "Quantale",
    "QuantaleProfile",
    "UndWitness",
    "Nucleus",
    "validate_quantale",
    "quantale_from_names",
    "residuals",
    "find_unit",
    "quantale_profile",
    "check_extension_conditions",
    "extend_quantale",
    "unitally_nondistributive",
    "chain_reduce",
    "group_quantale",
    "cyclic_group",
    "validate_nucleus",
    "quotient_by_nucleus",
    "quantale_isomorphic",
    "restrict_quantale",
    "opposite",
    "trivial_quantale",
]


@dataclass(frozen=True, eq=False)
class Quantale:
    lattice: Lattice
    mul: tuple[tuple[int, ...], ...]
    label: str | None = None

    @property
    def n(self) -> int:
        return self.lattice.n

    def __call__(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def __eq__(self, other):
        return (isinstance(other, Quantale) and self.lattice == other.lattice
                and self.mul == other.mul)

    def __hash__(self):
        return hash((self.lattice, self.mul))

    def names_table(self) -> list[list[str]]:
        nm = self.lattice.names
        return [[nm[v] for v in row] for row in self.mul]


def validate_quantale(L: Lattice, mul: Sequence[Sequence[int]], label: str | None = None) -> Quantale:
    n = L.n
    if len(mul) != n or any(len(row) != n for row in mul):
        raise QuantaleError(f"multiplication table must be {n}x{n}")
    for row in mul:
        for v in row:
            if not isinstance(v, int) or not 0 <= v < n:
                raise QuantaleError(f"table entry {v!r} is not an element index")
    m = tuple(tuple(row) for row in mul)
    nm = L.names
    bot = L.bottom
    for z in L.elements:
        if m[bot][z] != bot:
            raise BottomNotAnnihilating(f"⊥∗{nm[z]} = {nm[m[bot][z]]}", witness=("left", nm[z]))
        if m[z][bot] != bot:
            raise BottomNotAnnihilating(f"{nm[z]}∗⊥ = {nm[m[z][bot]]}", witness=("right", nm[z]))
    j = L.join
    for x, y in itertools.combinations(L.elements, 2):
        xy = j(x, y)
        for z in L.elements:
            if m[xy][z] != j(m[x][z], m[y][z]):
                raise NotJoinPreserving(
                    f"({nm[x]}∨{nm[y]})∗{nm[z]} ≠ ({nm[x]}∗{nm[z]})∨({nm[y]}∗{nm[z]})",
                    witness=("left", nm[x], nm[y], nm[z]))
            if m[z][xy] != j(m[z][x], m[z][y]):
                raise NotJoinPreserving(
                    f"{nm[z]}∗({nm[x]}∨{nm[y]}) ≠ ({nm[z]}∗{nm[x]})∨({nm[z]}∗{nm[y]})",
                    witness=("right", nm[x], nm[y], nm[z]))
    for a, b, c in itertools.product(L.elements, repeat=3):
        if m[m[a][b]][c] != m[a][m[b][c]]:
            raise NotAssociative(f"({nm[a]}∗{nm[b]})∗{nm[c]} ≠ {nm[a]}∗({nm[b]}∗{nm[c]})",
                                 witness=(nm[a], nm[b], nm[c]))
    return Quantale(L, m, label)


def quantale_from_names(L: Lattice, table: Sequence[Sequence[str]], label: str | None = None) -> Quantale:
    return validate_quantale(L, [[L.index(v) for v in row] for row in table], label)


def trivial_quantale(L: Lattice) -> Quantale:
    return validate_quantale(L, [[L.bottom] * L.n for _ in L.elements])


def opposite(Q: Quantale) -> Quantale:
    n = Q.n
    return Quantale(Q.lattice, tuple(tuple(Q.mul[b][a] for b in range(n)) for a in range(n)), Q.label)


def residuals(Q: Quantale, a: int, b: int) -> tuple[int, int]:
    """(a↘b, b↙a): joins of all c with a∗c ≤ b, respectively c∗a ≤ b."""
    L, m = Q.lattice, Q.mul
    right = L.join_all(c for c in L.elements if L.le(m[a][c], b))
    left = L.join_all(c for c in L.elements if L.le(m[c][a], b))
    return right, left


def find_unit(Q: Quantale) -> int | None:
    m = Q.mul
    for e in Q.lattice.elements:
        if all(m[e][a] == a and m[a][e] == a for a in Q.lattice.elements):
            return e
    return None


@dataclass(frozen=True)
class QuantaleProfile:
    unit: int | None
    semi_unital: bool
    two_sided_elements: frozenset[int]
    two_sided: bool
    integral: bool
    commutative: bool
    dualizing: frozenset[int]
    meet_distributive_mul: bool

    def as_dict(self, L: Lattice) -> dict:
        nm = L.names
        return {
            "unit": None if self.unit is None else nm[self.unit],
            "semiUnital": self.semi_unital,
            "twoSidedElements": [nm[x] for x in sorted(self.two_sided_elements)],
            "twoSided": self.two_sided,
            "integral": self.integral,
            "commutative": self.commutative,
            "dualizing": [nm[x] for x in sorted(self.dualizing)],
            "meetDistributiveMul": self.meet_distributive_mul,
        }


def _is_dualizing(Q: Quantale, d: int) -> bool:
    for a in Q.lattice.elements:
        a_to_d, d_from_a = residuals(Q, a, d)
        if residuals(Q, a_to_d, d)[1] != a:  # d ↙ (a ↘ d)
            return False
        if residuals(Q, d_from_a, d)[0] != a:  # (d ↙ a) ↘ d
            return False
    return True


def quantale_profile(Q: Quantale) -> QuantaleProfile:
    L, m = Q.lattice, Q.mul
    top = L.top
    unit = find_unit(Q)
    semi = all(L.le(a, m[top][a]) and L.le(a, m[a][top]) for a in L.elements)
    two = frozenset(a for a in L.elements if L.le(m[top][a], a) and L.le(m[a][top], a))
    comm = all(m[a][b] == m[b][a] for a, b in itertools.combinations(L.elements, 2))
    dual = frozenset(d for d in L.elements if _is_dualizing(Q, d))
    mt = L.meet
    md = all(
        m[a][mt(b, c)] == mt(m[a][b], m[a][c]) and m[mt(b, c)][a] == mt(m[b][a], m[c][a])
        for a in L.elements for b, c in itertools.combinations(L.elements, 2)
    )
    return QuantaleProfile(
        unit=unit,
        semi_unital=semi,
        two_sided_elements=two,
        two_sided=len(two) == L.n,
        integral=unit is not None and unit == top,
        commutative=comm,
        dualizing=dual,
        meet_distributive_mul=md,
    )


# -- extension by an isolated unit -------------------------------------------

def _prop_a_witness(Q: Quantale, g: int):
    L, m = Q.lattice, Q.mul
    for a in L.elements:
        if not L.le(L.join(m[g][a], m[a][g]), a):
            return a
    return None


def _prop_aa_witness(Q: Quantale, g: int):
    L, m = Q.lattice, Q.mul
    top = L.top
    for a in L.elements:
        for b in L.elements:
            if L.le(b, g):
                continue
            if not L.le(m[top][a], L.join(m[b][a], a)):
                return ("left", a, b)
            if not L.le(m[a][top], L.join(m[a][b], a)):
                return ("right", a, b)
    return None


def check_extension_conditions(Q: Quantale, gamma: int) -> tuple[bool, bool, bool]:
    """Whether (γ∗α)∨(α∗γ) ≤ α for all α; whether ⊤∗α ≤ (β∗α)∨α and
    α∗⊤ ≤ (α∗β)∨α for all α and all β ≰ γ; whether γ sits in a
    nondistributive triple as the meet side."""
    L = Q.lattice
    if gamma == L.top:
        raise GammaIsTop("γ must differ from ⊤")
    prop_a = _prop_a_witness(Q, gamma) is None
    prop_aa = _prop_aa_witness(Q, gamma) is None
    prop_b = any(is_nondistributive_triple(L, a, b, gamma)
                 for a, b in itertools.combinations(L.elements, 2))
    return prop_a, prop_aa, prop_b


def extend_quantale(Q: Quantale, gamma: int, label: str | None = None) -> Quantale:
    """Unique quantale on the isolated-element extension with unit e containing Q.

    The new unit is element ``n`` and the new top ``n + 1``.
    """
    L, m = Q.lattice, Q.mul
    if gamma == L.top:
        raise GammaIsTop("γ must differ from ⊤")
    nm = L.names
    w = _prop_a_witness(Q, gamma)
    if w is not None:
        raise ConditionsFail(
            f"(γ∗{nm[w]})∨({nm[w]}∗γ) ≰ {nm[w]}", witness=("propA", nm[w]))
    w = _prop_aa_witness(Q, gamma)
    if w is not None:
        side, a, b = w
        msg = (f"⊤∗{nm[a]} ≰ ({nm[b]}∗{nm[a]})∨{nm[a]}" if side == "left"
               else f"{nm[a]}∗⊤ ≰ ({nm[a]}∗{nm[b]})∨{nm[a]}")
        raise ConditionsFail(msg, witness=("propAA", side, nm[a], nm[b]))
    ext, e, tb = extend_lattice(L, gamma)
    n = L.n
    top = L.top
    table = [[0] * (n + 2) for _ in range(n + 2)]
    for a in range(n):
        for b in range(n):
            table[a][b] = m[a][b]
        table[tb][a] = L.join(m[top][a], a)
        table[a][tb] = L.join(m[a][top], a)
    for x in range(n + 2):
        table[e][x] = x
        table[x][e] = x
    table[tb][tb] = tb
    return validate_quantale(ext, table, label)


@dataclass(frozen=True)
class UndWitness:
    subset: tuple[int, ...]
    pair: tuple[int, int]


def chain_reduce(L: Lattice, e: int, A: Sequence[int]) -> tuple[int, int] | None:
    """Reduce a subset violating e∧(⋁A) ≤ ⋁(e∧α) to a violating pair.

    With β_i = α_i ∨ ... ∨ α_n, returns (α_i, β_{i+1}) for the first i where
    e∧β_i ≰ (e∧α_i) ∨ (e∧β_{i+1}).
    """
    A = list(A)
    k = len(A)
    if k < 2:
        return None
    suffix = [L.bottom] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix[i] = L.join(A[i], suffix[i + 1])
    mt = L.meet
    for i in range(k - 1):
        if not L.le(mt(e, suffix[i]), L.join(mt(e, A[i]), mt(e, suffix[i + 1]))):
            return A[i], suffix[i + 1]
    return None


def unitally_nondistributive(Q: Quantale) -> UndWitness | None:
    """Witness that Q is unital, its unit is ◁-approximable and the unit fails
    to meet-distribute over some join; None otherwise.

    Finite lattices need only pairs, so the search runs over pairs in index
    order and the first violating pair is also the first violating subset.
    """
    L = Q.lattice
    e = find_unit(Q)
    if e is None or not approximable(L, e):
        return None
    for a, b in itertools.combinations(L.elements, 2):
        if is_nondistributive_triple(L, a, b, e):
            pair = chain_reduce(L, e, (a, b))
            return UndWitness((a, b), pair)
    return None


# -- group quantales ---------------------------------------------------------

def cyclic_group(k: int) -> list[list[int]]:
    return [[(i + j) % k for j in range(k)] for i in range(k)]


def group_quantale(cayley: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> Quantale:
    """G ∪ {⊥, ⊤} with G discretely ordered; ⊤ absorbs G and ⊥ annihilates."""
    k = len(cayley)
    if k < 1 or any(len(r) != k for r in cayley):
        raise NotAGroup("Cayley table must be a nonempty square")
    g = [list(r) for r in cayley]
    if any(not (isinstance(v, int) and 0 <= v < k) for r in g for v in r):
        raise NotAGroup("Cayley entries must be indices 0..k-1")
    for a, b, c in itertools.product(range(k), repeat=3):
        if g[g[a][b]][c] != g[a][g[b][c]]:
            raise NotAGroup("not associative", witness=(a, b, c))
    unit = next((e for e in range(k) if all(g[e][x] == x == g[x][e] for x in range(k))), None)
    if unit is None:
        raise NotAGroup("no unit")
    for a in range(k):
        if not any(g[a][b] == unit for b in range(k)):
            raise NotAGroup(f"element {a} has no inverse", witness=(a,))
    if names is None:
        names = ["e" if i == unit else f"g{i}" for i in range(k)]
    # ⊥ = 0, group elements 1..k, ⊤ = k + 1
    n = k + 2
    bot, top = 0, k + 1
    order = [[i == j or i == bot or j == top for j in range(n)] for i in range(n)]
    L = validate_lattice(order, ["⊥", *names, "⊤"])
    table = [[bot] * n for _ in range(n)]
    for a in range(1, n):
        for b in range(1, n):
            if a == top or b == top:
                table[a][b] = top
            else:
                table[a][b] = g[a - 1][b - 1] + 1
    return validate_quantale(L, table)


# -- nuclei and quotients ----------------------------------------------------

@dataclass(frozen=True)
class Nucleus:
    map: tuple[int, ...]


def validate_nucleus(Q: Quantale, c: Sequence[int] | Nucleus) -> Nucleus:
    L, m = Q.lattice, Q.mul
    cm = tuple(c.map if isinstance(c, Nucleus) else c)
    nm = L.names
    if len(cm) != L.n:
        raise NotANucleus("map must be total")
    for x in L.elements:
        if not L.le(x, cm[x]):
            raise NotANucleus(f"not inflationary at {nm[x]}", witness=("inflationary", nm[x]))
        if cm[cm[x]] != cm[x]:
            raise NotANucleus(f"not idempotent at {nm[x]}", witness=("idempotent", nm[x]))
    for x, y in itertools.product(L.elements, repeat=2):
        if L.le(x, y) and not L.le(cm[x], cm[y]):
            raise NotANucleus(f"not monotone at {nm[x]} ≤ {nm[y]}", witness=("monotone", nm[x], nm[y]))
        if not L.le(m[cm[x]][cm[y]], cm[m[x][y]]):
            raise NotANucleus(f"c({nm[x]})∗c({nm[y]}) ≰ c({nm[x]}∗{nm[y]})",
                              witness=("lax", nm[x], nm[y]))
    return Nucleus(cm)


def quotient_by_nucleus(Q: Quantale, c: Sequence[int] | Nucleus) -> Quantale:
    """Quantale on the fixed points of c with product c(x∗y)."""
    nuc = validate_nucleus(Q, c)
    L, m, cm = Q.lattice, Q.mul, nuc.map
    fixed = [x for x in L.elements if cm[x] == x]
    sub, S = sublattice(L, fixed)
    pos = {x: i for i, x in enumerate(S)}
    table = [[pos[cm[m[a][b]]] for b in S] for a in S]
    return validate_quantale(sub, table)


def restrict_quantale(Q: Quantale, S: Iterable[int]) -> Quantale:
    """Subquantale on S (must be closed under ∗ and the ambient joins)."""
    sub, S = sublattice(Q.lattice, S)
    pos = {x: i for i, x in enumerate(S)}
    try:
        table = [[pos[Q.mul[a][b]] for b in S] for a in S]
    except KeyError as exc:
        raise QuantaleError("subset is not closed under multiplication") from exc
    return validate_quantale(sub, table)


def quantale_isomorphic(Q1: Quantale, Q2: Quantale) -> tuple[int, ...] | None:
    m1, m2 = Q1.mul, Q2.mul
    n = Q1.n
    for f in lattice_isomorphisms(Q1.lattice, Q2.lattice):
        if all(f[m1[a][b]] == m2[f[a]][f[b]] for a in range(n) for b in range(n)):
            return f
    return None
