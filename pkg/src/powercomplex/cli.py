"""Command-line front end.  Complexes travel as JSON on files or stdin (``-``).

Exit codes: 0 success, 1 bad input, 2 validation failure, 3 size cap.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import complex as cx
from .catalog import generate
from .covering import (ComplexMap, classify, induced_covering_f, induced_covering_g,
                       is_vertex_bijection, map_from_vertices, quotient)
from .errors import MalformedComplexError, PowerComplexError, SizeCapExceeded
from .perm import PermGroup, cycles_str, parse_cycles
from .power import BOTTOM, DEFAULT_CAP, power_complex, skeleton
from .surface import map_genus
from .symmetry import automorphism_group, flag_orbit_count

EXIT_OK, EXIT_INPUT, EXIT_INVALID, EXIT_CAP = 0, 1, 2, 3


class _Invalid(Exception):
    """Validation failure; the payload is printed as JSON on stderr."""

    def __init__(self, payload):
        super().__init__(str(payload))
        self.payload = payload


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise MalformedComplexError(str(exc)) from exc


def _load_complex(path: str, *, check: bool = True) -> cx.IncidenceComplex:
    K = cx.loads(_read(path))
    if check:
        report = cx.validate_complex(K)
        if not report.is_complex:
            raise _Invalid(report.to_json())
    return K


def _arg_text(value: str) -> str:
    """Inline JSON, or ``@path`` to read it from a file."""
    return _read(value[1:]) if value.startswith("@") else value


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedComplexError(f"{what}: invalid JSON ({exc})") from exc


def _emit_complex(P: cx.IncidenceComplex, fmt: str, out) -> None:
    if fmt == "dot":
        out.write(cx.flag_graph(P).to_dot())
    else:
        out.write(cx.dumps(P) + "\n")


def _emit(obj, out) -> None:
    out.write(json.dumps(obj) + "\n")


def _file_id(K, face: int) -> int:
    lab = K.labels[face]
    return int(lab) if isinstance(lab, (int, np.integer)) else int(face)


def _perm_from_cycles(K: cx.IncidenceComplex, text: str) -> tuple[int, ...]:
    """Cycles written on the file ids of K, returned on internal ids."""
    ids = [_file_id(K, f) for f in range(K.num_faces)]
    p = parse_cycles(text, max(ids) + 1)
    moved = [x for x in range(len(p)) if p[x] != x]
    where = {fid: t for t, fid in enumerate(ids)}
    if any(x not in where for x in moved):
        raise MalformedComplexError(f"cycles {text!r} name faces that do not exist")
    return tuple(where[p[fid]] for fid in ids)


def _gamma(K, L, text: str) -> ComplexMap:
    pairs = _load_json(text, "--gamma")
    try:
        vmap = {K.face(int(a)): L.face(int(b)) for a, b in pairs}
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedComplexError(f"--gamma must list [sourceVertex, targetVertex] pairs ({exc})") from None
    if set(vmap) != set(K.vertices.tolist()):
        raise MalformedComplexError("--gamma must send every source vertex somewhere")
    try:
        return map_from_vertices(K, L, vmap)
    except (KeyError, ValueError) as exc:
        raise _Invalid({"gamma": f"vertex map does not extend to faces: {exc}"}) from None


# -- commands ------------------------------------------------------------------

def cmd_gen(a, out):
    _emit_complex(generate(a.name, *a.params), a.format, out)


def cmd_validate(a, out):
    report = cx.validate_complex(_load_complex(a.complex, check=False))
    _emit(report.to_json(), out)
    return EXIT_OK if report.is_complex else EXIT_INVALID


def cmd_power(a, out):
    K = _load_complex(a.complex)
    P = power_complex(K, a.n, cap=a.cap)
    _emit_complex(P, a.format, out)
    if a.power_faces:
        rows = []
        for i, lab in enumerate(P.labels):
            base = BOTTOM if lab.base == BOTTOM else _file_id(K, lab.base)
            rows.append({"id": i, "base": base,
                         "fixed": {str(_file_id(K, u)): val for u, val in lab.fixed}})
        with open(a.power_faces, "w") as fh:
            json.dump(rows, fh)


def cmd_skeleton(a, out):
    _emit_complex(skeleton(_load_complex(a.complex), a.j), a.format, out)


def cmd_section(a, out):
    K = _load_complex(a.complex)
    try:
        lo, hi = K.face(a.lo), K.face(a.hi)
    except KeyError as exc:
        raise MalformedComplexError(f"no face with id {exc}") from None
    if not K.leq[lo, hi]:
        raise MalformedComplexError(f"face {a.lo} is not below face {a.hi}")
    _emit_complex(cx.section(K, lo, hi), a.format, out)


def cmd_aut(a, out):
    K = _load_complex(a.complex)
    G = automorphism_group(K)
    out.write(f"order {G.order()}\n")
    ids = [_file_id(K, f) for f in range(K.num_faces)]
    for g in G.generators:
        on_ids = {ids[x]: ids[g[x]] for x in range(len(g))}
        p = tuple(on_ids.get(x, x) for x in range(max(ids) + 1))
        out.write(cycles_str(p) + "\n")


def cmd_regular(a, out):
    K = _load_complex(a.complex)
    count = flag_orbit_count(K)
    out.write(f"flag orbits {count}\n")
    out.write("regular\n" if count == 1 else "not regular\n")


def cmd_invariants(a, out):
    K = _load_complex(a.complex, check=False)
    report = cx.validate_complex(K)
    _emit({"rank": K.rank, "f_vector": list(K.f_vector()),
           "c_vector": list(report.c) if report.c else None,
           "is_complex": report.is_complex,
           "vertex_describable": cx.is_vertex_describable(K)}, out)
    return EXIT_OK if report.is_complex else EXIT_INVALID


def cmd_map_genus(a, out):
    rep = map_genus(_load_complex(a.complex, check=False))
    _emit(rep.to_json(), out)
    return EXIT_OK if rep.ok else EXIT_INVALID


def cmd_classify(a, out):
    phi = ComplexMap.from_json(_load_json(_read(a.map), "map"))
    if (phi.face_map < 0).any():
        raise MalformedComplexError("face_map does not cover every source face")
    _emit(classify(phi).to_json(), out)


def cmd_quotient(a, out):
    K = _load_complex(a.complex)
    gens = [_perm_from_cycles(K, text) for text in a.gen]
    try:
        Q = quotient(K, PermGroup(K.num_faces, gens))
    except ValueError as exc:
        raise MalformedComplexError(str(exc)) from None
    _emit_complex(Q.complex, a.format, out)
    rep = Q.report.to_json()
    if Q.projection is not None:
        rep["projection"] = classify(Q.projection).to_json()
    _emit(rep, sys.stderr)
    return EXIT_OK if Q.report.is_complex else EXIT_INVALID


def _cover(a, out, build, table_arg):
    K, L = _load_complex(a.source), _load_complex(a.target)
    gamma = _gamma(K, L, _arg_text(a.gamma))
    table = _load_json(_arg_text(table_arg), "coordinate map")
    phi = build(gamma, a.n, a.m, table, cap=a.cap)
    data = phi.to_json()
    cls = classify(phi)
    data["class"] = cls.to_json()
    data["vertex_bijection"] = is_vertex_bijection(phi)
    _emit(data, out)


def cmd_cover_f(a, out):
    _cover(a, out, induced_covering_f, a.f)


def cmd_cover_g(a, out):
    _cover(a, out, induced_covering_g, a.g)


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="powercx", description="Power complexes n^K and their symmetries.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *, complex_arg=True, fmt=False, help=None):
        sp = sub.add_parser(name, help=help)
        if complex_arg:
            sp.add_argument("complex", nargs="?", default="-", help="complex JSON file, or - for stdin")
        if fmt:
            sp.add_argument("--format", choices=("json", "dot"), default="json")
        sp.set_defaults(func=fn)
        return sp

    sp = add("gen", cmd_gen, complex_arg=False, fmt=True, help="build a catalog complex")
    sp.add_argument("name")
    sp.add_argument("params", nargs="*", type=int)

    add("validate", cmd_validate, help="check the incidence axioms")

    sp = add("power", cmd_power, fmt=True, help="build n^K")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
    sp.add_argument("--power-faces", metavar="PATH", help="also write the (base, fixed) label of every face")

    sp = add("skeleton", cmd_skeleton, fmt=True, help="faces of rank <= j under a new top")
    sp.add_argument("--j", type=int, required=True)

    sp = add("section", cmd_section, fmt=True, help="the section hi/lo")
    sp.add_argument("--lo", type=int, required=True)
    sp.add_argument("--hi", type=int, required=True)

    add("aut", cmd_aut, help="automorphism group order and generators")
    add("regular", cmd_regular, help="number of flag orbits")
    add("invariants", cmd_invariants, help="rank, f-vector, c-vector, vertex-describability")
    add("map-genus", cmd_map_genus, help="Euler characteristic and genus of a rank-3 map")

    sp = add("classify", cmd_classify, complex_arg=False, help="place a map in the covering lattice")
    sp.add_argument("map", nargs="?", default="-")

    sp = add("quotient", cmd_quotient, fmt=True, help="quotient by a group of automorphisms")
    sp.add_argument("--gen", action="append", required=True, help="generator in cycle notation on face ids")

    for name, fn, arg in (("cover-f", cmd_cover_f, "--f"), ("cover-g", cmd_cover_g, "--g")):
        sp = sub.add_parser(name, help=f"covering n^K -> m^L induced by gamma and {arg[2:]}")
        sp.add_argument("source")
        sp.add_argument("target")
        sp.add_argument("--gamma", required=True, help="JSON list of [sourceVertex, targetVertex] pairs, or @file")
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--m", type=int, required=True)
        sp.add_argument(arg, required=True, help="JSON array of values, or @file")
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
        sp.set_defaults(func=fn)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        code = args.func(args, out)
    except _Invalid as exc:
        _emit(exc.payload, sys.stderr)
        return EXIT_INVALID
    except SizeCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (MalformedComplexError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PowerComplexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK if code is None else code


def main() -> None:
    sys.exit(run())
