from __future__ import annotations

import pytest

from quantalekit.enumerate import enumerate_quantales, quantale_canonical
from quantalekit.figures import (
    FIGURE_TABLES,
    figure_indices,
    figure_quantale,
    printed_table,
    printed_top_mismatches,
)
from quantalekit.lattice import M3, N5
from quantalekit.quantale import quantale_profile


@pytest.fixture(scope="module")
def catalogues():
    return {
        "M3": {e.canonical: e for e in enumerate_quantales(M3(), "propA(γ)")},
        "N5": {e.canonical: e for e in enumerate_quantales(N5(), "propA(γ)")},
    }


@pytest.mark.parametrize("i", range(len(FIGURE_TABLES)))
def test_every_table_is_an_enumerated_class(i, catalogues):
    Q = figure_quantale(i)
    tag = FIGURE_TABLES[i][1]
    assert quantale_canonical(Q) in catalogues[tag]


@pytest.mark.parametrize("i", range(len(FIGURE_TABLES)))
def test_group_matches_profile(i):
    Q = figure_quantale(i)
    p = quantale_profile(Q)
    group = FIGURE_TABLES[i][2]
    if group == "unital":
        assert p.unit == Q.lattice.index("γ")
    elif group == "semi-unital":
        assert p.unit is None and p.semi_unital
    elif group == "not-semi-unital":
        assert not p.semi_unital
    else:
        assert p.unit is None


def test_block_reproduces_printed_tables():
    bad = {FIGURE_TABLES[i][0]: printed_top_mismatches(i) for i in range(len(FIGURE_TABLES))}
    # 5.2.19 prints β∗⊤ = ⊤∗β = ⊤, while join-linearity forces β
    assert bad.pop("5.2.19") == [("β", "⊤", "⊤", "β"), ("⊤", "β", "⊤", "β")]
    assert all(v == [] for v in bad.values())


def test_diamond_unital_figure_repeats_one_label():
    idx = figure_indices("M3", "unital")
    labels = [FIGURE_TABLES[i][0] for i in idx]
    assert len(labels) == 8 and len(set(labels)) == 7


def test_unlabelled_diamond_class():
    labelled = {quantale_canonical(figure_quantale(i)) for i in figure_indices("M3")}
    missing = [e for e in enumerate_quantales(M3(), "propA(γ)") if e.canonical not in labelled]
    assert len(missing) == 1
    Q = missing[0].quantale
    L = Q.lattice
    a, b, g, t = (L.index(x) for x in "αβγ⊤")
    assert {Q(x, y) for x in (a, b) for y in (a, b)} == {t}
    assert quantale_profile(Q).unit == g


def test_printed_table_layout():
    t = printed_table(0)
    assert len(t) == 16 and t[("γ", "γ")] == "γ"
