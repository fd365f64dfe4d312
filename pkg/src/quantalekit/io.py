"""JSON model files, JSONL catalogue records, DOT diagrams and text tables."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import ParseError, QuantaleKitError, ValidationError
from .lattice import Lattice, covers, validate_lattice
from .quantale import Quantale, validate_quantale

SCHEMA_VERSION = "1"


def model_to_dict(value: Lattice | Quantale) -> dict[str, Any]:
    L = value.lattice if isinstance(value, Quantale) else value
    d: dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "kind": "quantale" if isinstance(value, Quantale) else "lattice",
        "names": list(L.names),
        "leq": [list(row) for row in L.leq],
    }
    if isinstance(value, Quantale):
        d["mul"] = value.names_table()
        if value.label is not None:
            d["label"] = value.label
    return d


def dumps_model(value: Lattice | Quantale) -> str:
    return json.dumps(model_to_dict(value), sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def save_model(value: Lattice | Quantale, path) -> None:
    Path(path).write_text(dumps_model(value), encoding="utf-8")


def _field(d: dict, key: str, typ, where: str):
    if key not in d:
        raise ParseError(f"{where}: missing field {key!r}", witness=(key,))
    v = d[key]
    if not isinstance(v, typ):
        raise ParseError(f"{where}: field {key!r} has the wrong type", witness=(key,))
    return v


def model_from_dict(d: Any, where: str = "<model>") -> Lattice | Quantale:
    if not isinstance(d, dict):
        raise ParseError(f"{where}: top level must be an object")
    schema = _field(d, "schema", str, where)
    if schema != SCHEMA_VERSION:
        raise ParseError(f"{where}: unsupported schema {schema!r}", witness=("schema",))
    kind = _field(d, "kind", str, where)
    if kind not in ("lattice", "quantale"):
        raise ParseError(f"{where}: kind must be 'lattice' or 'quantale'", witness=("kind",))
    names = _field(d, "names", list, where)
    if not all(isinstance(x, str) for x in names):
        raise ParseError(f"{where}: names must be strings", witness=("names",))
    leq = _field(d, "leq", list, where)
    n = len(names)
    if len(leq) != n or any(not isinstance(r, list) or len(r) != n for r in leq):
        raise ParseError(f"{where}: leq must be a {n}x{n} matrix", witness=("leq",))
    if any(not isinstance(v, (bool, int)) for r in leq for v in r):
        raise ParseError(f"{where}: leq entries must be booleans", witness=("leq",))
    if (kind == "quantale") != ("mul" in d):
        raise ParseError(f"{where}: mul is required exactly for quantales", witness=("mul",))
    label = d.get("label")
    if label is not None and not isinstance(label, str):
        raise ParseError(f"{where}: label must be a string", witness=("label",))
    mul_idx = None
    if kind == "quantale":
        mul = _field(d, "mul", list, where)
        if len(mul) != n or any(not isinstance(r, list) or len(r) != n for r in mul):
            raise ParseError(f"{where}: mul must be a {n}x{n} matrix", witness=("mul",))
        pos = {x: i for i, x in enumerate(names)}
        mul_idx = []
        for i, row in enumerate(mul):
            out = []
            for j, v in enumerate(row):
                if v not in pos:
                    raise ParseError(f"{where}: mul[{i}][{j}] names undeclared element {v!r}",
                                     witness=("mul", i, j, v))
                out.append(pos[v])
            mul_idx.append(out)
    try:
        L = validate_lattice(leq, names)
        if mul_idx is None:
            return L
        return validate_quantale(L, mul_idx, label)
    except ParseError:
        raise
    except QuantaleKitError as exc:
        raise ValidationError(exc) from exc


def loads_model(text: str, where: str = "<string>") -> Lattice | Quantale:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{where}:{exc.lineno}:{exc.colno}: {exc.msg}", witness=(exc.lineno,)) from exc
    return model_from_dict(d, where)


def load_model(path) -> Lattice | Quantale:
    p = Path(path)
    return loads_model(p.read_text(encoding="utf-8"), str(p))


def entry_record(entry) -> dict[str, Any]:
    """JSONL record for a catalogue entry."""
    Q = entry.quantale
    L = Q.lattice
    nm = L.names
    flags = {}
    for k, v in entry.flags.items():
        flags[k] = v
    return {
        "canonical": entry.canonical.hex(),
        "label": Q.label,
        "lattice": {"names": list(nm), "leq": [list(r) for r in L.leq]},
        "mul": Q.names_table(),
        "profile": entry.profile.as_dict(L),
        "flags": flags,
    }


def jsonl(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def heights(L: Lattice) -> list[int]:
    """Length of the longest chain from the bottom to each element."""
    h = [0] * L.n
    order = sorted(L.elements, key=lambda x: bin(L.down[x]).count("1"))
    cov = covers(L)
    for x in order:
        for a, b in cov:
            if b == x:
                h[x] = max(h[x], h[a] + 1)
    return h


def dot_source(L: Lattice, title: str = "lattice") -> str:
    lines = [f'digraph "{title}" {{', "  rankdir=BT;", "  node [shape=circle];"]
    for x in L.elements:
        lines.append(f'  n{x} [label="{L.names[x]}"];')
    h = heights(L)
    for level in sorted(set(h)):
        same = " ".join(f"n{x};" for x in L.elements if h[x] == level)
        lines.append(f"  {{ rank=same; {same} }}")
    for a, b in covers(L):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(L: Lattice, path) -> None:
    Path(path).write_text(dot_source(L), encoding="utf-8")


def render_table(Q: Quantale) -> str:
    """Multiplication table without the ⊥ row and column, rows and columns in
    element order, aligned for reading."""
    L = Q.lattice
    elems = [x for x in L.elements if x != L.bottom]
    head = ["∗"] + [L.names[x] for x in elems]
    rows = [head] + [[L.names[a]] + [L.names[Q.mul[a][b]] for b in elems] for a in elems]
    width = max(len(c) for r in rows for c in r)
    out = []
    for i, r in enumerate(rows):
        out.append(" | ".join(c.ljust(width) for c in r).rstrip())
        if i == 0:
            out.append("-+-".join("-" * width for _ in r))
    return "\n".join(out)


def shipped_model(name: str) -> Lattice | Quantale:
    """Load one of the bundled model files, e.g. ``shipped_model("m3")``."""
    from importlib.resources import files

    fname = name if name.endswith(".json") else name + ".json"
    res = files("quantalekit").joinpath("models", fname)
    return loads_model(res.read_text(encoding="utf-8"), fname)
