"""Published multiplication tables on the diamond M3 and the pentagon N5.

Each table lists rows and columns in the order α, β, γ, ⊤ with tokens
``0`` (⊥), ``a`` (α), ``b`` (β), ``c`` (γ), ``T`` (⊤).  Products with ⊥ are
⊥ and are not listed.  The α/β/γ block determines the whole quantale; the ⊤
row and column are reproduced as printed, and a handful of printed ⊤ entries
disagree with join-linearity (see :func:`printed_top_mismatches`).
"""

from __future__ import annotations

from .lattice import Lattice, M3, N5
from .quantale import Quantale, validate_quantale

_TOK = {"0": "⊥", "a": "α", "b": "β", "c": "γ", "T": "⊤"}

# (label, lattice, group, rows)
FIGURE_TABLES: list[tuple[str, str, str, tuple[str, str, str, str]]] = [
    # diamond, unital (γ∗γ = γ)
    ("5.2.11", "M3", "unital", ("0aaa", "acbT", "abcT", "aTTT")),
    ("5.2.12", "M3", "unital", ("0aaa", "aTbT", "abcT", "aTTT")),
    ("5.2.19", "M3", "unital", ("a0aa", "0bbT", "abcT", "aTTT")),
    ("5.2.22", "M3", "unital", ("aaaa", "acbT", "abcT", "aTTT")),
    ("5.2.23", "M3", "unital", ("aaaa", "aTbT", "abcT", "aTTT")),
    ("5.2.42", "M3", "unital", ("bcaT", "cabT", "abcT", "TTTT")),
    ("5.2.43", "M3", "unital", ("bTaT", "TTbT", "abcT", "TTTT")),
    # printed a second time as the eighth table of the unital diamond figure
    ("5.2.22", "M3", "unital", ("aaaa", "acbT", "abcT", "aTTT")),
    # diamond, non-unital (γ∗γ = ⊥)
    ("5.2.1", "M3", "non-unital", ("0000", "0000", "0000", "0000")),
    ("5.2.3", "M3", "non-unital", ("aa0a", "aa0a", "0000", "aa0a")),
    ("5.2.2", "M3", "non-unital", ("cc0c", "cc0c", "0000", "cc0c")),
    ("5.2.4", "M3", "non-unital", ("TT0T", "TT0T", "0000", "TT0T")),
    # pentagon, unital
    ("5.3.17", "N5", "unital", ("abaT", "b0bb", "abcT", "TbTT")),
    ("5.3.35", "N5", "unital", ("a0aa", "0bbb", "abcT", "abTT")),
    ("5.3.42", "N5", "unital", ("abaT", "bbbb", "abcT", "TbTT")),
    ("5.3.184", "N5", "unital", ("abaT", "babT", "abcT", "TTTT")),
    ("5.3.229", "N5", "unital", ("abaT", "bTbT", "abcT", "TTTT")),
    # pentagon, semi-unital but not unital
    ("5.3.16", "N5", "semi-unital", ("abaT", "b0bb", "abaT", "TbTT")),
    ("5.3.183", "N5", "semi-unital", ("abaT", "babT", "abaT", "TTTT")),
    ("5.3.41", "N5", "semi-unital", ("abaT", "bbbb", "abaT", "TbTT")),
    ("5.3.228", "N5", "semi-unital", ("abaT", "bTbT", "abaT", "TTTT")),
    # pentagon, not semi-unital, γ∗γ = α
    ("5.3.3", "N5", "not-semi-unital", ("a0aa", "0000", "a0aa", "a0aa")),
    ("5.3.29", "N5", "not-semi-unital", ("a0aa", "0b0b", "a0aa", "abaT")),
    ("5.3.11", "N5", "not-semi-unital", ("abaT", "0000", "abaT", "abaT")),
    ("5.3.6", "N5", "not-semi-unital", ("a0aa", "b0bb", "a0aa", "T0TT")),
    # pentagon, not semi-unital, γ∗γ = ⊥
    ("5.3.1", "N5", "not-semi-unital", ("0000", "0000", "0000", "0000")),
    ("5.3.178", "N5", "not-semi-unital", ("0000", "0a0a", "0000", "0a0a")),
    ("5.3.28", "N5", "not-semi-unital", ("0000", "0b0b", "0000", "0b0b")),
    ("5.3.189", "N5", "not-semi-unital", ("0000", "0c0c", "0000", "0c0c")),
    ("5.3.207", "N5", "not-semi-unital", ("0000", "0T0T", "0000", "0T0T")),
]

_HEAD = ("α", "β", "γ", "⊤")


def _lattice(tag: str) -> Lattice:
    return M3() if tag == "M3" else N5()


def figure_quantale(index: int) -> Quantale:
    """Quantale determined by the α/β/γ block of the ``index``-th table."""
    label, tag, _, rows = FIGURE_TABLES[index]
    L = _lattice(tag)
    atoms = [L.index(x) for x in _HEAD[:3]]
    block = {(atoms[i], atoms[j]): L.index(_TOK[rows[i][j]]) for i in range(3) for j in range(3)}
    n = L.n
    mul = [[L.bottom] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            r = L.bottom
            for (x, y), v in block.items():
                if L.le(x, a) and L.le(y, b):
                    r = L.join(r, v)
            mul[a][b] = r
    return validate_quantale(L, mul, label)


def printed_table(index: int) -> dict[tuple[str, str], str]:
    _, _, _, rows = FIGURE_TABLES[index]
    return {(_HEAD[i], _HEAD[j]): _TOK[rows[i][j]] for i in range(4) for j in range(4)}


def printed_top_mismatches(index: int) -> list[tuple[str, str, str, str]]:
    """Printed entries (row, col, printed, derived) that differ from the derived quantale."""
    Q = figure_quantale(index)
    L = Q.lattice
    out = []
    for (r, c), v in printed_table(index).items():
        got = L.names[Q.mul[L.index(r)][L.index(c)]]
        if got != v:
            out.append((r, c, v, got))
    return out


def figure_indices(tag: str, group: str | None = None) -> list[int]:
    return [i for i, t in enumerate(FIGURE_TABLES)
            if t[1] == tag and (group is None or t[2] == group)]
