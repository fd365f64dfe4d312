from __future__ import annotations

import io
import json
import re

import networkx as nx
import pytest

from quantalekit.cli import run_report
from quantalekit.errors import ParseError, ValidationError
from quantalekit.io import (
    dot_source,
    dumps_model,
    export_dot,
    load_model,
    loads_model,
    model_to_dict,
    render_table,
    save_model,
    shipped_model,
)
from quantalekit.lattice import M3, N5, chain, lattice_isomorphic, pattern
from quantalekit.quantale import Quantale, trivial_quantale

SHIPPED = ["m3", "n5", "l6", "l7", "q5_2_42", "q5_2_1", "ext_q5_2_1"]


def run(argv):
    buf = io.StringIO()
    code = run_report(argv, out=buf)
    return code, buf.getvalue()


def lines(text):
    return [json.loads(x) for x in text.splitlines() if x.strip()]


@pytest.mark.parametrize("name", SHIPPED)
def test_shipped_models_round_trip(name, tmp_path):
    value = shipped_model(name)
    path = tmp_path / f"{name}.json"
    save_model(value, path)
    again = load_model(path)
    assert again == value
    assert dumps_model(again) == path.read_text(encoding="utf-8")


def test_shipped_m3_is_the_diamond():
    L = shipped_model("m3")
    assert lattice_isomorphic(L, M3()) is not None


def test_undeclared_name_in_mul():
    d = model_to_dict(trivial_quantale(M3()))
    d["mul"][1][1] = "δ"
    with pytest.raises(ParseError) as info:
        loads_model(json.dumps(d))
    assert info.value.witness[0] == "mul"


@pytest.mark.parametrize("mutate, field", [
    (lambda d: d.pop("schema"), "schema"),
    (lambda d: d.update(schema="2"), "schema"),
    (lambda d: d.update(kind="poset"), "kind"),
    (lambda d: d.update(leq=d["leq"][:-1]), "leq"),
    (lambda d: d.pop("mul"), "mul"),
    (lambda d: d.update(label=3), "label"),
])
def test_malformed_fields(mutate, field):
    d = model_to_dict(trivial_quantale(N5()))
    mutate(d)
    with pytest.raises(ParseError) as info:
        loads_model(json.dumps(d))
    assert info.value.witness[0] == field


def test_json_syntax_error_reports_position():
    with pytest.raises(ParseError, match=r":2:1:"):
        loads_model('{"schema": "1",\n}')


def test_validation_errors_are_forwarded():
    d = model_to_dict(M3())
    d["leq"][1][2] = True
    d["leq"][2][1] = True
    with pytest.raises(ValidationError) as info:
        loads_model(json.dumps(d))
    assert info.value.kind == "NotAPoset"


def _dot_edges(text):
    return re.findall(r"n(\d+) -> n(\d+);", text)


@pytest.mark.parametrize("L, nodes, edges", [
    (pattern("extM3").model, 7, 9),
    (chain(2), 2, 1),
    (N5(), 5, 5),
])
def test_dot_edges_match_transitive_reduction(L, nodes, edges, tmp_path):
    path = tmp_path / "l.dot"
    export_dot(L, path)
    text = path.read_text(encoding="utf-8")
    got = {(int(a), int(b)) for a, b in _dot_edges(text)}
    g = nx.DiGraph()
    g.add_nodes_from(L.elements)
    g.add_edges_from((a, b) for a in L.elements for b in L.elements if a != b and L.le(a, b))
    assert got == set(nx.transitive_reduction(g).edges())
    assert len(got) == edges
    assert len(re.findall(r"n\d+ \[label=", text)) == nodes
    assert "rankdir=BT" in text
    assert text == dot_source(L)


def test_render_table_layout():
    text = render_table(shipped_model("q5_2_42"))
    rows = text.splitlines()
    assert rows[0].split(" | ") == ["∗", "α", "β", "γ", "⊤"]
    assert rows[2].split(" | ") == ["α", "β", "γ", "α", "⊤"]


def test_cli_classify7_summary():
    code, out = run(["classify7"])
    assert code == 0
    recs = lines(out)
    summary = recs[-1]
    assert summary["total"] == 30 and summary["noncommutative"] == 2
    assert summary["perLattice"] == {"extM3": 12, "extN5": 18}
    assert len(recs) == 31
    assert {"canonical", "label", "lattice", "mul", "profile", "flags"} <= set(recs[0])


def test_cli_census_six():
    code, out = run(["census", "--max-n", "6"])
    assert code == 0
    assert [r["strict"] for r in lines(out)] == [0] * 6


def test_cli_bad_quantale(tmp_path):
    d = json.loads(dumps_model(shipped_model("q5_2_42")))
    d["mul"][1][1] = "⊤"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(d), encoding="utf-8")
    code, out = run(["check-quantale", str(path)])
    rec = lines(out)[0]
    assert code == 1 and rec["error"] == "NotAssociative" and len(rec["witness"]) == 3


def test_cli_usage_errors(capsys):
    assert run(["no-such-command"])[0] == 2
    assert run(["enumerate", "--lattice", "M3", "--constraint", "foo"])[0] == 2
    assert run(["enumerate", "--lattice", "nowhere.json"])[0] == 2
    assert run(["census"])[0] == 2
    assert "usage" in capsys.readouterr().err


def test_cli_enumerate_labels_and_threads():
    code, out1 = run(["enumerate", "--lattice", "N5", "--constraint", "propA(γ)"])
    code4, out4 = run(["enumerate", "--lattice", "N5", "--constraint", "propA(γ)", "--threads", "3"])
    assert code == code4 == 0 and out1 == out4
    recs = lines(out1)
    assert recs[-1]["total"] == 18
    assert all(r["label"] for r in recs[:-1])


def test_cli_text_format():
    code, out = run(["enumerate", "--lattice", "M3", "--constraint", "propA(γ)", "--format", "text"])
    assert code == 0 and "# 5.2.42" in out and "∗ | α | β | γ | ⊤" in out


def test_cli_lattice_commands(tmp_path):
    code, out = run(["check-lattice", "extM3"])
    rec = lines(out)[0]
    assert code == 0 and rec["strictWitness"] == ["α", "β", "e"]
    code, out = run(["totally-below", "M3", "--b", "γ", "--a", "⊤"])
    assert lines(out)[0]["totallyBelow"] is False
    code, out = run(["scan-patterns", "extN5"])
    assert lines(out)[0]["pattern"] == "extN5"
    dest = tmp_path / "ext.json"
    assert run(["extend-lattice", "N5", "--gamma", "gamma", "--out", str(dest)])[0] == 0
    assert lattice_isomorphic(load_model(dest), pattern("extN5").model) is not None
    code, out = run(["export-dot", "chain:2"])
    assert len(_dot_edges(out)) == 1


def test_cli_quantale_commands(tmp_path):
    g = tmp_path / "g.json"
    assert run(["group-quantale", "--cayley", "cyclic:3", "--out", str(g)])[0] == 0
    ext = tmp_path / "ext.json"
    assert run(["extend-quantale", str(g), "--gamma", "e", "--out", str(ext)])[0] == 0
    R = load_model(ext)
    assert isinstance(R, Quantale) and R.n == 7
    code, out = run(["check-quantale", str(ext)])
    assert lines(out)[0]["unitallyNondistributive"]["pair"] == ["g1", "g2"]
    cayley = tmp_path / "klein.json"
    cayley.write_text(json.dumps([[a ^ b for b in range(4)] for a in range(4)]))
    assert run(["group-quantale", "--cayley", str(cayley)])[0] == 0
    code, out = run(["group-quantale", "--cayley", "bogus"])
    assert code == 2


def test_cli_quotient():
    from importlib.resources import files
    path = str(files("quantalekit").joinpath("models", "q5_2_42.json"))
    code, out = run(["quotient", path, "--nucleus", "α=⊤,β=⊤,γ=⊤"])
    assert code == 0 and loads_model(out).n == 2
    code, out = run(["quotient", path, "--nucleus", "α=β"])
    assert code == 1 and lines(out)[0]["error"] == "NotANucleus"


def test_cli_extend_quantale_conditions_fail(tmp_path):
    from quantalekit.enumerate import enumerate_quantales
    from quantalekit.lattice import L6
    Q = enumerate_quantales(L6(), "unitalAt(γ)")[0].quantale
    path = tmp_path / "l6.json"
    save_model(Q, path)
    code, out = run(["extend-quantale", str(path), "--gamma", "γ"])
    rec = lines(out)[0]
    assert code == 1 and rec["error"] == "ConditionsFail" and rec["witness"][0] == "propAA"
