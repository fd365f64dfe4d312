"""Finite bounded lattices.

A :class:`Lattice` is stored as an order matrix plus bitmask views of the
principal down- and up-sets.  Element ``i`` is represented by bit ``1 << i``
in every mask.  Joins and meets of all pairs are tabulated at construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache
from typing import Iterable, Iterator, Sequence

from .errors import NoBounds, NoJoin, NoMeet, NotAPoset, TooLarge

__all__ = [
    "Lattice",
    "IsolationInfo",
    "DistributivityReport",
    "Pattern",
    "validate_lattice",
    "lattice_from_covers",
    "bounds",
    "totally_below",
    "approximable",
    "distributivity_report",
    "is_nondistributive_triple",
    "is_strict_triple",
    "isolated_info",
    "extend_lattice",
    "sublattice",
    "pattern_scan",
    "pattern",
    "lattice_isomorphic",
    "lattice_isomorphisms",
    "automorphisms",
    "canonical_form",
    "embed_completely_distributive",
    "join_irreducibles",
    "covers",
    "chain",
    "boolean_lattice",
    "M3",
    "N5",
    "L6",
    "L7",
]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Lattice:
    """A validated finite bounded lattice. Build with :func:`validate_lattice`."""

    __slots__ = ("n", "names", "leq", "up", "down", "bottom", "top", "_join", "_meet", "_index")

    def __init__(self, leq, names, up, down, join, meet):
        self.n = len(names)
        self.names = tuple(names)
        self.leq = leq
        self.up = up
        self.down = down
        self._join = join
        self._meet = meet
        self._index = {name: i for i, name in enumerate(self.names)}
        self.bottom = next(i for i in range(self.n) if up[i] == (1 << self.n) - 1)
        self.top = next(i for i in range(self.n) if down[i] == (1 << self.n) - 1)

    def __repr__(self):
        return f"Lattice(n={self.n}, names={list(self.names)})"

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.names == other.names and self.leq == other.leq

    def __hash__(self):
        return hash((self.names, self.leq))

    def __len__(self):
        return self.n

    @property
    def elements(self) -> range:
        return range(self.n)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def index(self, x) -> int:
        """Resolve an element given by index or by name."""
        if isinstance(x, int):
            if not 0 <= x < self.n:
                raise KeyError(x)
            return x
        return self._index[x]

    def name(self, i: int) -> str:
        return self.names[i]

    def le(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    def join(self, a: int, b: int) -> int:
        return self._join[a][b]

    def meet(self, a: int, b: int) -> int:
        return self._meet[a][b]

    def join_all(self, elems: Iterable[int]) -> int:
        r = self.bottom
        for x in elems:
            r = self._join[r][x]
        return r

    def meet_all(self, elems: Iterable[int]) -> int:
        r = self.top
        for x in elems:
            r = self._meet[r][x]
        return r

    def join_mask(self, mask: int) -> int:
        return self.join_all(_bits(mask))

    def meet_mask(self, mask: int) -> int:
        return self.meet_all(_bits(mask))

    def members(self, mask: int) -> list[int]:
        return list(_bits(mask))

    def downset(self, a: int) -> frozenset[int]:
        return frozenset(_bits(self.down[a]))

    def upset(self, a: int) -> frozenset[int]:
        return frozenset(_bits(self.up[a]))

    def order_matrix(self) -> list[list[bool]]:
        return [list(row) for row in self.leq]

    def relabel(self, perm: Sequence[int], names: Sequence[str] | None = None) -> "Lattice":
        """Lattice whose position ``i`` is element ``perm[i]`` of this one."""
        n = self.n
        order = [[self.leq[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
        if names is None:
            names = [self.names[p] for p in perm]
        return validate_lattice(order, names)


def validate_lattice(order: Sequence[Sequence], names: Sequence[str] | None = None) -> Lattice:
    """Check that ``order`` is a bounded lattice order and build the Lattice.

    ``order[i][j]`` is truthy iff element i <= element j.
    """
    n = len(order)
    if n < 1:
        raise NotAPoset("empty carrier")
    if names is None:
        names = [str(i) for i in range(n)]
    names = [str(x) for x in names]
    if len(names) != n:
        raise NotAPoset(f"{len(names)} names for {n} elements")
    if len(set(names)) != n:
        dup = next(x for x in names if names.count(x) > 1)
        raise NotAPoset(f"duplicate element name {dup!r}", witness=(dup,))
    leq = []
    for i, row in enumerate(order):
        if len(row) != n:
            raise NotAPoset(f"row {i} has length {len(row)}, expected {n}")
        leq.append(tuple(bool(v) for v in row))
    leq = tuple(leq)

    for i in range(n):
        if not leq[i][i]:
            raise NotAPoset(f"not reflexive at {names[i]}", witness=(names[i],))
    for i in range(n):
        for j in range(i + 1, n):
            if leq[i][j] and leq[j][i]:
                raise NotAPoset(
                    f"not antisymmetric: {names[i]} <= {names[j]} <= {names[i]}",
                    witness=(names[i], names[j]),
                )
    up = [sum(1 << j for j in range(n) if leq[i][j]) for i in range(n)]
    down = [sum(1 << j for j in range(n) if leq[j][i]) for i in range(n)]
    for i in range(n):
        for j in range(n):
            if leq[i][j] and (up[j] & ~up[i]):
                k = next(_bits(up[j] & ~up[i]))
                raise NotAPoset(
                    f"not transitive: {names[i]} <= {names[j]} <= {names[k]}",
                    witness=(names[i], names[j], names[k]),
                )

    # join(a, b) is the upper bound c with up[c] == up[a] & up[b]
    by_up = {m: i for i, m in enumerate(up)}
    by_down = {m: i for i, m in enumerate(down)}
    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            c = by_up.get(up[a] & up[b])
            if c is None:
                raise NoJoin(f"{names[a]} and {names[b]} have no least upper bound",
                             witness=(names[a], names[b]))
            join[a][b] = join[b][a] = c
    for a in range(n):
        for b in range(a, n):
            c = by_down.get(down[a] & down[b])
            if c is None:
                raise NoMeet(f"{names[a]} and {names[b]} have no greatest lower bound",
                             witness=(names[a], names[b]))
            meet[a][b] = meet[b][a] = c
    full = (1 << n) - 1
    if full not in up or full not in down:
        raise NoBounds("missing bottom or top")
    return Lattice(leq, names, tuple(up), tuple(down),
                   tuple(map(tuple, join)), tuple(map(tuple, meet)))


def lattice_from_covers(names: Sequence[str], cover_pairs: Iterable[tuple[str, str]]) -> Lattice:
    """Build a lattice from ``(lower, upper)`` cover pairs by reflexive-transitive closure."""
    idx = {x: i for i, x in enumerate(names)}
    n = len(names)
    rel = [[i == j for j in range(n)] for i in range(n)]
    for lo, hi in cover_pairs:
        rel[idx[lo]][idx[hi]] = True
    for k in range(n):
        for i in range(n):
            if rel[i][k]:
                for j in range(n):
                    if rel[k][j]:
                        rel[i][j] = True
    return validate_lattice(rel, names)


def chain(k: int) -> Lattice:
    return validate_lattice([[i <= j for j in range(k)] for i in range(k)])


def boolean_lattice(k: int) -> Lattice:
    """Powerset of a k-set ordered by inclusion."""
    n = 1 << k
    return validate_lattice([[(i & j) == i for j in range(n)] for i in range(n)])


@cache
def M3() -> Lattice:
    return lattice_from_covers(
        ["⊥", "α", "β", "γ", "⊤"],
        [("⊥", "α"), ("⊥", "β"), ("⊥", "γ"), ("α", "⊤"), ("β", "⊤"), ("γ", "⊤")],
    )


@cache
def N5() -> Lattice:
    return lattice_from_covers(
        ["⊥", "α", "β", "γ", "⊤"],
        [("⊥", "α"), ("α", "γ"), ("γ", "⊤"), ("⊥", "β"), ("β", "⊤")],
    )


@cache
def L6() -> Lattice:
    return lattice_from_covers(
        ["⊥", "α", "β", "γ", "α∨γ", "⊤"],
        [("⊥", "α"), ("⊥", "β"), ("⊥", "γ"), ("α", "α∨γ"), ("γ", "α∨γ"),
         ("α∨γ", "⊤"), ("β", "⊤")],
    )


@cache
def L7() -> Lattice:
    return lattice_from_covers(
        ["⊥", "α", "β", "γ", "α∨γ", "β∨γ", "⊤"],
        [("⊥", "α"), ("⊥", "β"), ("⊥", "γ"), ("α", "α∨γ"), ("γ", "α∨γ"),
         ("β", "β∨γ"), ("γ", "β∨γ"), ("α∨γ", "⊤"), ("β∨γ", "⊤")],
    )


def bounds(L: Lattice, A: Iterable[int]) -> tuple[int, int]:
    """(join, meet) of a subset; the empty set gives (bottom, top)."""
    A = list(A)
    return L.join_all(A), L.meet_all(A)


def totally_below(L: Lattice, b: int, a: int) -> bool:
    """b ◁ a: every subset whose join is above a contains an element above b.

    The set {c : b ≰ c} is the largest family avoiding ↑b, so b ◁ a exactly
    when a is not below its join.
    """
    avoid = L.full & ~L.up[b]
    return not L.le(a, L.join_mask(avoid))


def approximable(L: Lattice, a: int) -> bool:
    return L.le(a, L.join_all(b for b in L.elements if totally_below(L, b, a)))


def join_irreducibles(L: Lattice) -> list[int]:
    out = []
    for x in L.elements:
        if x == L.bottom:
            continue
        if L.join_mask(L.down[x] & ~(1 << x)) != x:
            out.append(x)
    return out


def covers(L: Lattice) -> list[tuple[int, int]]:
    """Cover pairs (lower, upper) of the order, i.e. its transitive reduction."""
    out = []
    for a in L.elements:
        strict_up = L.up[a] & ~(1 << a)
        for b in _bits(strict_up):
            if not (strict_up & L.down[b] & ~(1 << b)):
                out.append((a, b))
    return out


@dataclass(frozen=True)
class IsolationInfo:
    element: int
    lower: int
    upper: int


@dataclass(frozen=True)
class DistributivityReport:
    approximable: tuple[bool, ...]
    completely_distributive: bool
    nondist_witness: tuple[int, int, int] | None
    strict_witness: tuple[int, int, int] | None


def is_nondistributive_triple(L: Lattice, a: int, b: int, g: int) -> bool:
    """g ∧ (a ∨ b) ≰ (g ∧ a) ∨ (g ∧ b)."""
    j, m = L.join, L.meet
    return not L.le(m(g, j(a, b)), j(m(g, a), m(g, b)))


def is_strict_triple(L: Lattice, a: int, b: int, x: int) -> bool:
    return is_nondistributive_triple(L, a, b, x) and not L.le(x, L.join(a, b))


def distributivity_report(L: Lattice) -> DistributivityReport:
    appr = tuple(approximable(L, a) for a in L.elements)
    cd = all(appr[a] for a in L.elements if a != L.bottom)
    nondist = strict = None
    for a, b, g in itertools.product(L.elements, repeat=3):
        if is_nondistributive_triple(L, a, b, g):
            if nondist is None:
                nondist = (a, b, g)
            if strict is None and not L.le(g, L.join(a, b)):
                strict = (a, b, g)
                break
    return DistributivityReport(appr, cd, nondist, strict)


def isolated_info(L: Lattice, x: int) -> IsolationInfo | None:
    if x in (L.bottom, L.top):
        return None
    below = L.down[x] & ~(1 << x)
    above = L.up[x] & ~(1 << x)
    lo = L.join_mask(below)
    hi = L.meet_mask(above)
    if L.down[lo] == below and L.up[hi] == above:
        return IsolationInfo(x, lo, hi)
    return None


def _fresh(names: Sequence[str], want: str) -> str:
    while want in names:
        want += "'"
    return want


def extend_lattice(L: Lattice, gamma: int, e_name: str = "e",
                   top_name: str = "⊤̄") -> tuple[Lattice, int, int]:
    """Adjoin an isolated element e with e⁻ = gamma and a new top above everything.

    Old elements keep their indices; e is ``n`` and the new top is ``n + 1``.
    """
    n = L.n
    e, tb = n, n + 1
    e_name = _fresh(L.names, e_name)
    top_name = _fresh(list(L.names) + [e_name], top_name)
    order = [list(row) + [L.le(i, gamma), True] for i, row in enumerate(L.leq)]
    order.append([False] * n + [True, True])
    order.append([False] * (n + 1) + [True])
    ext = validate_lattice(order, list(L.names) + [e_name, top_name])
    return ext, e, tb


def sublattice(L: Lattice, S: Iterable[int]) -> tuple[Lattice, list[int]]:
    """Induced order on S (sorted); returns the lattice and the index map into L."""
    S = sorted(set(S))
    order = [[L.le(a, b) for b in S] for a in S]
    return validate_lattice(order, [L.names[a] for a in S]), S


# -- isomorphism -------------------------------------------------------------

def _invariants(L: Lattice) -> list[tuple]:
    ji = set(join_irreducibles(L))
    out = []
    for x in L.elements:
        dn = bin(L.down[x]).count("1")
        upn = bin(L.up[x]).count("1")
        atom = dn == 2
        coatom = upn == 2
        out.append((dn, -upn, atom, coatom, x in ji))
    return out


def lattice_isomorphisms(L1: Lattice, L2: Lattice) -> Iterator[tuple[int, ...]]:
    """All order isomorphisms L1 -> L2 as tuples ``f`` with ``f[x]`` the image of x.

    Deterministic: elements of L1 are mapped in index order, candidates tried
    in index order.
    """
    if L1.n != L2.n:
        return
    inv1, inv2 = _invariants(L1), _invariants(L2)
    if sorted(inv1) != sorted(inv2):
        return
    n = L1.n
    cands = [[y for y in range(n) if inv2[y] == inv1[x]] for x in range(n)]
    f = [-1] * n
    used = [False] * n

    def rec(x):
        if x == n:
            yield tuple(f)
            return
        for y in cands[x]:
            if used[y]:
                continue
            ok = True
            for z in range(x):
                fz = f[z]
                if L1.leq[x][z] != L2.leq[y][fz] or L1.leq[z][x] != L2.leq[fz][y]:
                    ok = False
                    break
            if ok:
                f[x] = y
                used[y] = True
                yield from rec(x + 1)
                used[y] = False
        f[x] = -1

    yield from rec(0)


def lattice_isomorphic(L1: Lattice, L2: Lattice) -> tuple[int, ...] | None:
    return next(lattice_isomorphisms(L1, L2), None)


def automorphisms(L: Lattice) -> list[tuple[int, ...]]:
    return list(lattice_isomorphisms(L, L))


def _order_code(L: Lattice, perm: Sequence[int]) -> bytes:
    leq = L.leq
    return bytes(leq[p][q] for p in perm for q in perm)


def canonical_form(L: Lattice) -> tuple[bytes, list[tuple[int, ...]]]:
    """Minimum order-matrix encoding over invariant-respecting relabelings.

    Returns the code and every relabeling ``perm`` (position -> element)
    attaining it; these form a single coset of the automorphism group.
    """
    inv = _invariants(L)
    keys = sorted(set(inv))
    classes = [[x for x in L.elements if inv[x] == k] for k in keys]
    best, best_perms = None, []
    for choice in itertools.product(*(itertools.permutations(c) for c in classes)):
        perm = tuple(itertools.chain.from_iterable(choice))
        code = _order_code(L, perm)
        if best is None or code < best:
            best, best_perms = code, [perm]
        elif code == best:
            best_perms.append(perm)
    return best, best_perms


# -- forbidden patterns ------------------------------------------------------

PATTERN_TAGS = ("M3", "N5", "L6", "L7", "extM3", "extN5", "extL6", "extL7")


@dataclass(frozen=True)
class Pattern:
    tag: str
    model: Lattice


# distinguished gamma of each base shape, as marked in the Hasse diagrams
_GAMMA = {"M3": "γ", "N5": "γ", "L6": "γ", "L7": "γ"}


@cache
def pattern(tag: str) -> Pattern:
    base = {"M3": M3, "N5": N5, "L6": L6, "L7": L7}
    if tag in base:
        return Pattern(tag, base[tag]())
    if tag.startswith("ext") and tag[3:] in base:
        b = base[tag[3:]]()
        ext, _, _ = extend_lattice(b, b.index(_GAMMA[tag[3:]]))
        return Pattern(tag, ext)
    raise KeyError(tag)


def pattern_scan(L: Lattice) -> tuple[Pattern, tuple[int, ...]] | None:
    """Smallest join-closed subset containing bottom that is isomorphic to an
    extended diamond, pentagon, L6 or L7; ties broken lexicographically."""
    pats = [pattern(t) for t in ("extM3", "extN5", "extL6", "extL7")]
    sizes = sorted({p.model.n for p in pats})
    rest = [x for x in L.elements if x != L.bottom]
    for size in sizes:
        if size > L.n:
            break
        for comb in itertools.combinations(rest, size - 1):
            S = (L.bottom,) + comb
            mask = sum(1 << x for x in S)
            if any(not (mask >> L.join(a, b) & 1) for a, b in itertools.combinations(comb, 2)):
                continue
            sub, _ = sublattice(L, S)
            for p in pats:
                if p.model.n == size and lattice_isomorphic(p.model, sub) is not None:
                    return p, tuple(sorted(S))
    return None


def embed_completely_distributive(L: Lattice) -> list[frozenset[int]]:
    """phi(a) = union of all A ⊆ L with a <= meet(A), landing in P(L)^op."""
    if L.n > 12:
        raise TooLarge(f"powerset codomain of a {L.n}-element lattice is too large")
    meets = [L.top] * (1 << L.n)
    for mask in range(1, 1 << L.n):
        low = mask & -mask
        meets[mask] = L.meet(meets[mask ^ low], low.bit_length() - 1)
    phi = []
    for a in L.elements:
        acc = 0
        for mask in range(1 << L.n):
            if L.le(a, meets[mask]):
                acc |= mask
        phi.append(frozenset(_bits(acc)))
    return phi
