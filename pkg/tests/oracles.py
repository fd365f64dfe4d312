"""Slow, literal reference implementations used only by the tests.

Each oracle recomputes a library result straight from the definitions,
sharing no code path with the module under test beyond the ``Lattice``
container itself.
"""

from __future__ import annotations

import itertools
from functools import cache

import networkx as nx
import numpy as np


def subset_joins(L) -> list[int]:
    """Join of every subset mask of L, computed one bit at a time."""
    J = [L.bottom] * (1 << L.n)
    for S in range(1, 1 << L.n):
        low = S & -S
        J[S] = L.join(J[S ^ low], low.bit_length() - 1)
    return J


def totally_below_matrix(L) -> list[list[bool]]:
    """b ◁ a iff every subset whose join lies above a meets ↑b."""
    J = subset_joins(L)
    out = [[False] * L.n for _ in range(L.n)]
    for a in L.elements:
        covering = [S for S in range(1 << L.n) if L.le(a, J[S])]
        for b in L.elements:
            out[b][a] = all(S & L.up[b] for S in covering)
    return out


def lattice_counts(n: int) -> int:
    """Number of unlabeled lattices on n elements via networkx: every DAG on
    the interior points (edges i→j with i<j), closed transitively, bounded,
    filtered for joins, then deduplicated by digraph isomorphism."""
    if n <= 2:
        return 1
    m = n - 2
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    closures = set()
    for bits in range(1 << len(pairs)):
        g = nx.DiGraph()
        g.add_nodes_from(range(m))
        g.add_edges_from(p for k, p in enumerate(pairs) if bits >> k & 1)
        closures.add(frozenset(nx.transitive_closure_dag(g).edges()))
    reps: list[nx.DiGraph] = []
    for edges in closures:
        g = nx.DiGraph()
        bot, top = "b", "t"
        g.add_nodes_from([bot, top, *range(m)])
        g.add_edges_from(edges)
        g.add_edges_from((bot, x) for x in range(m))
        g.add_edges_from((x, top) for x in range(m))
        g.add_edge(bot, top)
        if not _has_joins(g):
            continue
        if not any(nx.is_isomorphic(g, h) for h in reps):
            reps.append(g)
    return len(reps)


def _has_joins(g: nx.DiGraph) -> bool:
    nodes = list(g.nodes)
    ups = {x: {x} | set(g.successors(x)) for x in nodes}
    for x, y in itertools.combinations(nodes, 2):
        common = ups[x] & ups[y]
        least = [z for z in common if common <= ups[z]]
        if len(least) != 1:
            return False
    return True


def naive_quantales(L) -> list[np.ndarray]:
    """Every quantale table on a lattice with three join-irreducibles whose
    ⊥ row and column vanish: all |L|^9 choices of the join-irreducible block,
    extended by joins, then filtered for join preservation and associativity
    with numpy broadcasting."""
    n = L.n
    J = [x for x in L.elements if x != L.bottom
         and bin(L.down[x] & ~(1 << x)).count("1") > 0
         and L.join_mask(L.down[x] & ~(1 << x)) != x]
    assert len(J) == 3
    jt = np.array([[L.join(a, b) for b in range(n)] for a in range(n)], dtype=np.int8)
    le = np.array([[L.le(a, b) for b in range(n)] for a in range(n)], dtype=bool)
    block = np.array(list(itertools.product(range(n), repeat=9)), dtype=np.int8)
    N = len(block)
    T = np.full((N, n, n), L.bottom, dtype=np.int8)
    for a in range(n):
        for b in range(n):
            acc = np.full(N, L.bottom, dtype=np.int8)
            for i, x in enumerate(J):
                for j, y in enumerate(J):
                    if le[x, a] and le[y, b]:
                        acc = jt[acc, block[:, 3 * i + j]]
            T[:, a, b] = acc
    rows = np.arange(N)
    ok = np.ones(N, dtype=bool)
    for a in range(n):
        for b in range(n):
            ab = jt[a, b]
            for z in range(n):
                ok &= T[:, ab, z] == jt[T[:, a, z], T[:, b, z]]
                ok &= T[:, z, ab] == jt[T[:, z, a], T[:, z, b]]
    T = T[ok]
    rows = np.arange(len(T))
    ok = np.ones(len(T), dtype=bool)
    for a, b, c in itertools.product(range(n), repeat=3):
        left = T[rows, T[:, a, b], c]
        right = T[rows, a, T[:, b, c]]
        ok &= left == right
    return list(T[ok])


def automorphisms(L) -> list[tuple[int, ...]]:
    return [p for p in itertools.permutations(range(L.n))
            if all(L.le(a, b) == L.le(p[a], p[b]) for a in range(L.n) for b in range(L.n))]


def table_class(T: np.ndarray, autos) -> bytes:
    """Smallest relabeled table over the lattice automorphisms."""
    n = len(T)
    best = None
    for p in autos:
        R = np.empty_like(T)
        for a in range(n):
            for b in range(n):
                R[p[a], p[b]] = p[T[a, b]]
        code = R.tobytes()
        if best is None or code < best:
            best = code
    return best


def subset_und(Q) -> bool:
    """Unital, unit ◁-approximable, and some subset A with e∧⋁A ≰ ⋁(e∧α)."""
    L = Q.lattice
    units = [e for e in L.elements
             if all(Q.mul[e][x] == x == Q.mul[x][e] for x in L.elements)]
    if not units:
        return False
    e = units[0]
    tb = totally_below_matrix(L)
    below = 0
    for b in L.elements:
        if tb[b][e]:
            below |= 1 << b
    if not L.le(e, L.join_mask(below)):
        return False
    J = subset_joins(L)
    for S in range(1 << L.n):
        rhs = L.bottom
        for x in L.members(S):
            rhs = L.join(rhs, L.meet(e, x))
        if not L.le(L.meet(e, J[S]), rhs):
            return True
    return False


def completely_distributive(L) -> bool:
    """Every element is the join of the elements totally below it."""
    tb = totally_below_matrix(L)
    for a in L.elements:
        j = L.bottom
        for b in L.elements:
            if tb[b][a]:
                j = L.join(j, b)
        if j != a:
            return False
    return True


@cache
def naive_classes(L) -> frozenset[bytes]:
    """Canonical codes of the naive quantales on L, one per automorphism class."""
    from quantalekit.enumerate import quantale_canonical
    from quantalekit.quantale import validate_quantale

    autos = automorphisms(L)
    codes = set()
    for code in {table_class(T, autos) for T in naive_quantales(L)}:
        rep = np.frombuffer(code, dtype=np.int8).reshape(L.n, L.n)
        codes.add(quantale_canonical(validate_quantale(L, rep.tolist())))
    return frozenset(codes)
