"""Command-line entry point: ``quantalekit <subcommand> ...``.

Machine output is JSON lines; ``--format text`` prints aligned tables.
Exit codes: 0 success, 1 validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from functools import cache
from pathlib import Path

from . import lattice as lat
from .enumerate import (
    census_strict,
    classify_seven,
    enumerate_quantales,
    parse_constraint,
    quantale_canonical,
    resolve_element,
    shape_of,
)
from .errors import QuantaleKitError, ValidationError
from .figures import FIGURE_TABLES, figure_quantale
from .io import dot_source, dumps_model, entry_record, jsonl, load_model, render_table
from .lattice import Lattice
from .quantale import (
    Quantale,
    cyclic_group,
    extend_quantale,
    group_quantale,
    quantale_profile,
    quotient_by_nucleus,
    unitally_nondistributive,
)

BUILTIN = {
    "M3": lat.M3,
    "N5": lat.N5,
    "L6": lat.L6,
    "L7": lat.L7,
}


class UsageError(Exception):
    pass


def resolve_lattice(spec: str) -> Lattice:
    if spec in BUILTIN:
        return BUILTIN[spec]()
    if spec.startswith("ext") and spec[3:] in BUILTIN:
        return lat.pattern(spec).model
    kind, _, arg = spec.partition(":")
    if kind in ("chain", "boolean") and arg.isdigit():
        return lat.chain(int(arg)) if kind == "chain" else lat.boolean_lattice(int(arg))
    if not Path(spec).exists():
        raise UsageError(f"no builtin lattice or file named {spec!r}")
    model = load_model(spec)
    return model.lattice if isinstance(model, Quantale) else model


def load_quantale(path: str) -> Quantale:
    if not Path(path).exists():
        raise UsageError(f"no such file {path!r}")
    model = load_model(path)
    if not isinstance(model, Quantale):
        raise UsageError(f"{path} holds a lattice, not a quantale")
    return model


def resolve_cayley(spec: str) -> list[list[int]]:
    kind, _, arg = spec.partition(":")
    if kind == "cyclic" and arg.isdigit():
        return cyclic_group(int(arg))
    if spec == "klein":
        return [[a ^ b for b in range(4)] for a in range(4)]
    if not Path(spec).exists():
        raise UsageError(f"cayley table must be cyclic:K, klein or a JSON file, got {spec!r}")
    return json.loads(Path(spec).read_text(encoding="utf-8"))


@cache
def figure_labels() -> dict[bytes, str]:
    out = {}
    for i in range(len(FIGURE_TABLES)):
        Q = figure_quantale(i)
        out.setdefault(quantale_canonical(Q), Q.label)
    return out


def _names(L: Lattice, xs) -> list[str] | None:
    return None if xs is None else [L.names[x] for x in xs]


def _emit(out, text: str, path: str | None = None):
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        out.write(text)


# -- subcommands -------------------------------------------------------------

def cmd_check_lattice(args, out):
    L = resolve_lattice(args.model)
    rep = lat.distributivity_report(L)
    iso = {}
    for x in L.elements:
        info = lat.isolated_info(L, x)
        if info is not None:
            iso[L.names[x]] = [L.names[info.lower], L.names[info.upper]]
    out.write(jsonl({
        "ok": True,
        "n": L.n,
        "bottom": L.names[L.bottom],
        "top": L.names[L.top],
        "joinIrreducibles": _names(L, lat.join_irreducibles(L)),
        "approximable": [L.names[x] for x in L.elements if rep.approximable[x]],
        "completelyDistributive": rep.completely_distributive,
        "nondistWitness": _names(L, rep.nondist_witness),
        "strictWitness": _names(L, rep.strict_witness),
        "isolated": iso,
    }) + "\n")
    return 0


def cmd_check_quantale(args, out):
    Q = load_quantale(args.model)
    L = Q.lattice
    und = unitally_nondistributive(Q)
    out.write(jsonl({
        "ok": True,
        "label": Q.label,
        "profile": quantale_profile(Q).as_dict(L),
        "unitallyNondistributive": None if und is None else {
            "subset": _names(L, und.subset), "pair": _names(L, und.pair)},
    }) + "\n")
    if args.format == "text":
        out.write(render_table(Q) + "\n")
    return 0


def cmd_totally_below(args, out):
    L = resolve_lattice(args.model)
    if (args.b is None) != (args.a is None):
        raise UsageError("give both --b and --a, or neither")
    if args.b is not None:
        b, a = resolve_element(L, args.b), resolve_element(L, args.a)
        out.write(jsonl({"b": L.names[b], "a": L.names[a],
                         "totallyBelow": lat.totally_below(L, b, a)}) + "\n")
        return 0
    pairs = [[L.names[b], L.names[a]] for b in L.elements for a in L.elements
             if lat.totally_below(L, b, a)]
    out.write(jsonl({"totallyBelow": pairs}) + "\n")
    return 0


def cmd_extend_lattice(args, out):
    L = resolve_lattice(args.model)
    ext, _, _ = lat.extend_lattice(L, resolve_element(L, args.gamma))
    _emit(out, dumps_model(ext), args.out)
    return 0


def cmd_extend_quantale(args, out):
    Q = load_quantale(args.model)
    R = extend_quantale(Q, resolve_element(Q.lattice, args.gamma))
    _emit(out, dumps_model(R), args.out)
    return 0


def _write_entries(entries, fmt, out):
    for e in entries:
        if fmt == "text":
            Q = e.quantale
            head = Q.label or e.canonical.hex()[:16]
            out.write(f"# {head}\n{render_table(Q)}\n\n")
        else:
            out.write(jsonl(entry_record(e)) + "\n")


def cmd_enumerate(args, out):
    L = resolve_lattice(args.lattice)
    try:
        c = parse_constraint(args.constraint, L)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from exc
    entries = enumerate_quantales(L, c, threads=args.threads, labels=figure_labels())
    _write_entries(entries, args.format, out)
    summary = {
        "kind": "summary",
        "constraint": c.describe(L),
        "total": len(entries),
        "unital": sum(e.profile.unit is not None for e in entries),
        "semiUnitalNonUnital": sum(e.profile.unit is None and e.profile.semi_unital for e in entries),
        "notSemiUnital": sum(not e.profile.semi_unital for e in entries),
        "noncommutative": sum(not e.profile.commutative for e in entries),
    }
    out.write(jsonl(summary) + "\n")
    return 0


def cmd_classify7(args, out):
    rep = classify_seven(threads=args.threads)
    _write_entries(rep.entries, args.format, out)
    out.write(jsonl({
        "kind": "summary",
        "total": rep.total,
        "noncommutative": rep.noncommutative,
        "perLattice": rep.per_lattice,
        "roundtrip": rep.roundtrip_ok,
    }) + "\n")
    return 0


def cmd_census(args, out):
    try:
        rep = census_strict(args.max_n)
    except QuantaleKitError as exc:
        raise UsageError(str(exc)) from exc
    for n in sorted(rep.counts):
        out.write(jsonl({
            "n": n,
            "strict": rep.counts[n],
            "nondistributive": rep.nondistributive[n],
            "representatives": [shape_of(L) or "other" for L in rep.representatives[n]],
        }) + "\n")
    return 0


def cmd_scan_patterns(args, out):
    L = resolve_lattice(args.model)
    hit = lat.pattern_scan(L)
    if hit is None:
        out.write(jsonl({"pattern": None}) + "\n")
    else:
        p, S = hit
        out.write(jsonl({"pattern": p.tag, "subset": _names(L, S)}) + "\n")
    return 0


def cmd_group_quantale(args, out):
    Q = group_quantale(resolve_cayley(args.cayley))
    _emit(out, dumps_model(Q), args.out)
    return 0


def cmd_quotient(args, out):
    Q = load_quantale(args.model)
    L = Q.lattice
    spec = args.nucleus
    if Path(spec).exists():
        mapping = json.loads(Path(spec).read_text(encoding="utf-8"))
    else:
        mapping = {}
        for part in filter(None, spec.split(",")):
            k, sep, v = part.partition("=")
            if not sep:
                raise UsageError("--nucleus takes a JSON file or x=y,... pairs")
            mapping[k.strip()] = v.strip()
    c = list(L.elements)
    for k, v in mapping.items():
        c[resolve_element(L, k)] = resolve_element(L, v)
    R = quotient_by_nucleus(Q, c)
    _emit(out, dumps_model(R), args.out)
    return 0


def cmd_export_dot(args, out):
    L = resolve_lattice(args.model)
    _emit(out, dot_source(L), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quantalekit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=fn)
        return sp

    sp = add("check-lattice", cmd_check_lattice, "validate a lattice and report distributivity")
    sp.add_argument("model", help="model file or builtin (M3, N5, L6, L7, extM3, chain:K, ...)")
    sp = add("check-quantale", cmd_check_quantale, "validate a quantale file and print its profile")
    sp.add_argument("model")
    sp.add_argument("--format", choices=("jsonl", "text"), default="jsonl")
    sp = add("totally-below", cmd_totally_below, "the totally-below relation")
    sp.add_argument("model")
    sp.add_argument("--b")
    sp.add_argument("--a")
    sp = add("extend-lattice", cmd_extend_lattice, "adjoin an isolated element above gamma")
    sp.add_argument("model")
    sp.add_argument("--gamma", required=True)
    sp.add_argument("--out")
    sp = add("extend-quantale", cmd_extend_quantale, "extend a quantale by an isolated unit")
    sp.add_argument("model")
    sp.add_argument("--gamma", required=True)
    sp.add_argument("--out")
    sp = add("enumerate", cmd_enumerate, "all quantales on a lattice up to isomorphism")
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--constraint", default="none",
                    help="none | unital | nonUnital | semiUnital | propA(x) | unitalAt(x)")
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--format", choices=("jsonl", "text"), default="jsonl")
    sp = add("classify7", cmd_classify7, "unitally nondistributive quantales on 7 elements")
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--format", choices=("jsonl", "text"), default="jsonl")
    sp = add("census", cmd_census, "strictly nondistributive lattices per size")
    sp.add_argument("--max-n", type=int, required=True)
    sp = add("scan-patterns", cmd_scan_patterns, "find an extended M3/N5/L6/L7 complete sublattice")
    sp.add_argument("model")
    sp = add("group-quantale", cmd_group_quantale, "quantale of a group with adjoined bounds")
    sp.add_argument("--cayley", required=True, help="cyclic:K, klein, or a JSON k×k table")
    sp.add_argument("--out")
    sp = add("quotient", cmd_quotient, "quotient of a quantale by a nucleus")
    sp.add_argument("model")
    sp.add_argument("--nucleus", required=True, help="JSON {x: c(x)} file or x=y,... (identity elsewhere)")
    sp.add_argument("--out")
    sp = add("export-dot", cmd_export_dot, "Hasse diagram in DOT format")
    sp.add_argument("model")
    sp.add_argument("--out")
    return p


def run_report(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"quantalekit: error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        out.write(jsonl({"ok": False, "error": exc.kind, "message": str(exc),
                         "witness": list(exc.witness or ())}) + "\n")
        return 1
    except QuantaleKitError as exc:
        out.write(jsonl({"ok": False, "error": type(exc).__name__, "message": str(exc),
                         "witness": list(exc.witness or ())}) + "\n")
        return 1
    except KeyError as exc:
        parser.print_usage(sys.stderr)
        print(f"quantalekit: error: {exc.args[0]}", file=sys.stderr)
        return 2


def main():
    sys.exit(run_report())


if __name__ == "__main__":
    main()
