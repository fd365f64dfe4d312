"""Exhaustive generation of small lattices and quantale tables up to isomorphism."""

from __future__ import annotations

import itertools
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .errors import QuantaleKitError, TooLarge
from .lattice import (
    Lattice,
    approximable,
    canonical_form,
    distributivity_report,
    isolated_info,
    join_irreducibles,
    lattice_isomorphic,
    pattern,
    validate_lattice,
)
from .quantale import (
    Quantale,
    QuantaleProfile,
    check_extension_conditions,
    extend_quantale,
    find_unit,
    quantale_profile,
    restrict_quantale,
    unitally_nondistributive,
    validate_quantale,
)

__all__ = [
    "Constraint",
    "CatalogueEntry",
    "parse_constraint",
    "enumerate_lattices",
    "enumerate_quantales",
    "quantale_canonical",
    "classify_seven",
    "census_strict",
    "SevenReport",
    "CensusReport",
]

MAX_LATTICE_SIZE = 8


# -- lattices ----------------------------------------------------------------

def _natural_posets(m: int):
    """Strict-down-set masks of every poset on 0..m-1 whose order extends 0 < 1 < ... < m-1."""
    below = [0] * m

    def rec(k):
        if k == m:
            yield tuple(below)
            return
        for mask in range(1 << k):
            # the elements below k must form a down-set of the poset built so far
            if all(below[i] & ~mask == 0 for i in range(k) if mask >> i & 1):
                below[k] = mask
                yield from rec(k + 1)
        below[k] = 0

    yield from rec(0)


def enumerate_lattices(n: int) -> list[Lattice]:
    """One lattice per isomorphism class on n elements, sorted by canonical code.

    Each representative is relabeled canonically (bottom first, top last) with
    element names ``"0" .. str(n-1)``.
    """
    if not 1 <= n <= MAX_LATTICE_SIZE:
        raise TooLarge(f"lattice census supports 1 <= n <= {MAX_LATTICE_SIZE}")
    if n == 1:
        return [validate_lattice([[True]])]
    m = n - 2
    seen: dict[bytes, Lattice] = {}
    for below in _natural_posets(m):
        # bottom = 0, interior 1..m, top = n - 1
        order = [[True] * n]
        for i in range(m):
            row = [False] * n
            row[i + 1] = True
            row[n - 1] = True
            for j in range(m):
                if below[j] >> i & 1:
                    row[j + 1] = True
            order.append(row)
        order.append([False] * (n - 1) + [True])
        try:
            L = validate_lattice(order)
        except QuantaleKitError:
            continue
        code, perms = canonical_form(L)
        if code not in seen:
            seen[code] = L.relabel(perms[0], [str(i) for i in range(n)])
    return [seen[c] for c in sorted(seen)]


@dataclass
class CensusReport:
    counts: dict[int, int]
    nondistributive: dict[int, int]
    representatives: dict[int, list[Lattice]]


def census_strict(max_n: int) -> CensusReport:
    if max_n > MAX_LATTICE_SIZE:
        raise TooLarge(f"census supports max_n <= {MAX_LATTICE_SIZE}")
    counts, nd, reps = {}, {}, {}
    for n in range(1, max_n + 1):
        strict = []
        nondist = 0
        for L in enumerate_lattices(n):
            rep = distributivity_report(L)
            if rep.nondist_witness is not None:
                nondist += 1
            if rep.strict_witness is not None:
                strict.append(L)
        counts[n] = len(strict)
        nd[n] = nondist
        reps[n] = strict
    return CensusReport(counts, nd, reps)


# -- constraints -------------------------------------------------------------

CONSTRAINT_KINDS = ("none", "unitalAt", "propA", "unital", "nonUnital", "semiUnital")


@dataclass(frozen=True)
class Constraint:
    kind: str = "none"
    element: int | None = None

    def __post_init__(self):
        if self.kind not in CONSTRAINT_KINDS:
            raise ValueError(f"unknown constraint kind {self.kind!r}")
        if (self.kind in ("unitalAt", "propA")) != (self.element is not None):
            raise ValueError(f"constraint {self.kind} takes exactly one element parameter")

    def describe(self, L: Lattice) -> str:
        if self.element is None:
            return self.kind
        return f"{self.kind}({L.names[self.element]})"


_ALIASES = {"alpha": "α", "beta": "β", "gamma": "γ", "bot": "⊥", "top": "⊤", "topbar": "⊤̄"}


def resolve_element(L: Lattice, token: str) -> int:
    token = token.strip()
    token = _ALIASES.get(token, token)
    if token in L.names:
        return L.index(token)
    if token.isdigit():
        return L.index(int(token))
    raise KeyError(f"unknown element {token!r}")


def parse_constraint(text: str, L: Lattice) -> Constraint:
    """Parse ``none``, ``unital``, ``propA(γ)``, ``unitalAt(e)`` and friends."""
    mt = re.fullmatch(r"\s*(\w+)\s*(?:\(\s*([^)]*?)\s*\))?\s*", text)
    if not mt:
        raise ValueError(f"cannot parse constraint {text!r}")
    kind, arg = mt.group(1), mt.group(2)
    if kind not in CONSTRAINT_KINDS:
        raise ValueError(f"unknown constraint kind {kind!r}")
    return Constraint(kind, None if arg in (None, "") else resolve_element(L, arg))


# -- pruned table search -----------------------------------------------------

class _Search:
    """Backtracking over the products of join-irreducible pairs.

    Every product a∗b is the join of j∗k over join-irreducibles j ≤ a, k ≤ b,
    so the table is fixed once those cells are. Cells are assigned row-major
    in index order with candidates in index order; after each assignment the
    products that became determined are filled in and every check whose
    inputs are all known is run.
    """

    def __init__(self, L: Lattice, constraint: Constraint):
        self.L = L
        self.constraint = constraint
        n = L.n
        J = join_irreducibles(L)
        self.J = J
        self.cells = [(j, k) for j in J for k in J]
        cell_t = {c: t for t, c in enumerate(self.cells)}
        jb = [[j for j in J if L.le(j, a)] for a in range(n)]
        self.deps = [[[cell_t[(j, k)] for j in jb[a] for k in jb[b]] for b in range(n)]
                     for a in range(n)]
        det = [[max(self.deps[a][b], default=-1) for b in range(n)] for a in range(n)]
        self.det = det
        T = len(self.cells)
        self.filled_at = [[] for _ in range(T + 1)]  # index t + 1 for time t
        for a in range(n):
            for b in range(n):
                self.filled_at[det[a][b] + 1].append((a, b))

        checks = [[] for _ in range(T + 1)]

        def sched(when, chk):
            checks[when + 1].append(chk)

        for t, (j, k) in enumerate(self.cells):
            sched(det[j][k], ("cell", j, k, t))
        for x, y in itertools.combinations(range(n), 2):
            if L.le(x, y) or L.le(y, x):
                continue
            xy = L.join(x, y)
            for k in J:
                sched(max(det[xy][k], det[x][k], det[y][k]), ("jl", xy, x, y, k))
                sched(max(det[k][xy], det[k][x], det[k][y]), ("jr", xy, x, y, k))
        c = constraint
        if c.kind == "unitalAt":
            u = c.element
            for k in J:
                sched(det[u][k], ("eq", u, k, k))
                sched(det[k][u], ("eq", k, u, k))
        elif c.kind == "propA":
            g = c.element
            for k in J:
                sched(det[g][k], ("le", g, k, k))
                sched(det[k][g], ("le", k, g, k))
        self.checks = checks

        # forced cell values narrow domains before search
        self.domain = []
        for j, k in self.cells:
            dom = list(range(n))
            if c.kind == "unitalAt" and c.element in (j, k):
                dom = [k] if j == c.element else [j]
            self.domain.append(dom)

    def run(self, first_values: Sequence[int] | None = None):
        L = self.L
        n = L.n
        join, le = L.join, L.le
        cells, deps, det = self.cells, self.deps, self.det
        filled_at, checks = self.filled_at, self.checks
        J = self.J
        T = len(cells)
        val = [0] * T
        tab = [[L.bottom] * n for _ in range(n)]
        triples = list(itertools.product(J, repeat=3))

        def fill(t):
            for a, b in filled_at[t + 1]:
                r = L.bottom
                for d in deps[a][b]:
                    r = join(r, val[d])
                tab[a][b] = r

        def run_checks(t):
            for chk in checks[t + 1]:
                kind = chk[0]
                if kind == "cell":
                    _, j, k, ct = chk
                    if tab[j][k] != val[ct]:
                        return False
                elif kind == "jl":
                    _, xy, x, y, k = chk
                    if tab[xy][k] != join(tab[x][k], tab[y][k]):
                        return False
                elif kind == "jr":
                    _, xy, x, y, k = chk
                    if tab[k][xy] != join(tab[k][x], tab[k][y]):
                        return False
                elif kind == "eq":
                    _, a, b, v = chk
                    if tab[a][b] != v:
                        return False
                elif kind == "le":
                    _, a, b, v = chk
                    if not le(tab[a][b], v):
                        return False
            return True

        def assoc_ok(t):
            for j, k, l in triples:
                if det[j][k] > t or det[k][l] > t:
                    continue
                ab = tab[j][k]
                bc = tab[k][l]
                if det[ab][l] > t or det[j][bc] > t:
                    continue
                if tab[ab][l] != tab[j][bc]:
                    return False
            return True

        fill(-1)
        if not run_checks(-1):
            return

        def rec(t):
            if t == T:
                yield tuple(tuple(row) for row in tab)
                return
            dom = self.domain[t]
            if t == 0 and first_values is not None:
                dom = [v for v in dom if v in first_values]
            for v in dom:
                val[t] = v
                fill(t)
                if run_checks(t) and assoc_ok(t):
                    yield from rec(t + 1)

        yield from rec(0)


def _passes_post_filter(Q: Quantale, c: Constraint) -> bool:
    if c.kind == "unital":
        return find_unit(Q) is not None
    if c.kind == "nonUnital":
        return find_unit(Q) is None
    if c.kind == "semiUnital":
        return quantale_profile(Q).semi_unital
    return True


def quantale_canonical(Q: Quantale) -> bytes:
    """Isomorphism-invariant code: canonical order matrix followed by the
    minimal relabeled table over all canonical labelings."""
    code, perms = canonical_form(Q.lattice)
    m = Q.mul
    best = None
    for p in perms:
        inv = [0] * Q.n
        for i, x in enumerate(p):
            inv[x] = i
        enc = bytes(inv[m[a][b]] for a in p for b in p)
        if best is None or enc < best:
            best = enc
    return bytes([Q.n]) + code + best


@dataclass
class CatalogueEntry:
    quantale: Quantale
    canonical: bytes
    profile: QuantaleProfile
    flags: dict = field(default_factory=dict)

    @property
    def label(self) -> str | None:
        return self.quantale.label


def _search_chunk(args):
    L, constraint, firsts = args
    return list(_Search(L, constraint).run(firsts))


def _raw_tables(L: Lattice, constraint: Constraint, threads: int = 1):
    search = _Search(L, constraint)
    if threads <= 1 or not search.cells:
        return list(search.run())
    firsts = search.domain[0]
    chunks = [(L, constraint, [v]) for v in firsts]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(_search_chunk, chunks))
    return [t for part in parts for t in part]


def make_entry(Q: Quantale, flags: dict | None = None, gamma: int | None = None) -> CatalogueEntry:
    prof = quantale_profile(Q)
    fl = {"und": unitally_nondistributive(Q) is not None}
    if gamma is not None and gamma != Q.lattice.top:
        a, aa, b = check_extension_conditions(Q, gamma)
        fl.update(propA=a, propAA=aa, propB=b)
    if flags:
        fl.update(flags)
    return CatalogueEntry(Q, quantale_canonical(Q), prof, fl)


def enumerate_quantales(L: Lattice, constraint: Constraint | str = Constraint(),
                        threads: int = 1, labels: dict[bytes, str] | None = None) -> list[CatalogueEntry]:
    """All quantales on L meeting the constraint, one per isomorphism class,
    sorted by canonical code. ``labels`` maps canonical codes to catalogue tags."""
    if isinstance(constraint, str):
        constraint = parse_constraint(constraint, L)
    gamma = constraint.element if constraint.kind == "propA" else None
    by_code: dict[bytes, Quantale] = {}
    for table in _raw_tables(L, constraint, threads):
        Q = validate_quantale(L, table)
        if not _passes_post_filter(Q, constraint):
            continue
        code = quantale_canonical(Q)
        if code not in by_code:
            by_code[code] = Q
    out = []
    for code in sorted(by_code):
        Q = by_code[code]
        if labels and code in labels:
            Q = Quantale(Q.lattice, Q.mul, labels[code])
        out.append(make_entry(Q, gamma=gamma))
    return out


# -- seven-element classification -------------------------------------------

@dataclass
class SevenReport:
    entries: list[CatalogueEntry]
    per_lattice: dict[str, int]
    total: int
    noncommutative: int
    roundtrip_ok: bool
    examined: list[Quantale] = field(default_factory=list, repr=False)


def shape_of(L: Lattice) -> str | None:
    for tag in ("extM3", "extN5", "extL6", "extL7", "M3", "N5", "L6", "L7"):
        p = pattern(tag).model
        if p.n == L.n and lattice_isomorphic(p, L) is not None:
            return tag
    return None


def restrict_and_extend(Q: Quantale, e: int) -> bool:
    """Restrict Q to the base below the isolated unit and extend it back; True
    iff that reproduces Q exactly."""
    L = Q.lattice
    info = isolated_info(L, e)
    if info is None:
        return False
    base = [x for x in L.elements if x not in (e, info.upper)]
    P = restrict_quantale(Q, base)
    g = base.index(info.lower)
    R = extend_quantale(P, g)
    # base keeps sorted order, then e, then the new top
    f = base + [e, info.upper]
    n = L.n
    return all(f[R.mul[a][b]] == Q.mul[f[a]][f[b]] for a in range(n) for b in range(n))


def classify_seven(threads: int = 1) -> SevenReport:
    """Unitally nondistributive quantales on 7 elements up to isomorphism."""
    found: dict[bytes, tuple[Quantale, str, int]] = {}
    examined = []
    for L in enumerate_lattices(7):
        if distributivity_report(L).strict_witness is None:
            continue
        tag = shape_of(L) or "?"
        for u in L.elements:
            if u in (L.bottom, L.top) or not approximable(L, u):
                continue
            for table in _raw_tables(L, Constraint("unitalAt", u), threads):
                Q = validate_quantale(L, table)
                examined.append(Q)
                if unitally_nondistributive(Q) is None:
                    continue
                code = quantale_canonical(Q)
                found.setdefault(code, (Q, tag, u))
    entries = []
    per: dict[str, int] = {}
    ok = True
    for code in sorted(found):
        Q, tag, u = found[code]
        rt = isolated_info(Q.lattice, u) is not None and restrict_and_extend(Q, u)
        ok &= rt
        per[tag] = per.get(tag, 0) + 1
        entries.append(make_entry(Q, {"lattice": tag, "isolatedUnit": isolated_info(Q.lattice, u) is not None,
                                      "roundtrip": rt}))
    noncomm = sum(not e.profile.commutative for e in entries)
    return SevenReport(entries, per, len(entries), noncomm, ok, examined)
