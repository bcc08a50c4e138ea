"""Command line interface: ``srcot <command> [input] [--gen NAME] ...``.

Exit codes: 0 success, 1 usage or parse error, 2 resource cap exceeded,
3 disagreement between computation routes (or another failed invariant).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from .complex_core import ResourceCapError, SimplicialComplex, members
from .cotangent import (
    DegreeKey,
    _compositions,
    coarse_degrees,
    compute_dims,
    is_relevant,
    piece_space,
    relevant_degrees,
    t0,
)
from .generators import GENERATOR_NAMES, parse_generator
from .io import (
    InputError,
    build_report,
    complex_to_json,
    face_names,
    key_from_names,
    load_complex,
    parse_exponents,
    parse_face,
    render_table,
)

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_MISMATCH = 0, 1, 2, 3
ROUTES = ("n", "order", "u", "m")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Mismatch(Exception):
    pass


def _fmt(x: Fraction | int) -> str:
    return str(Fraction(x))


def _emit(args, text: str, doc: dict | None = None) -> None:
    if args.json and doc is not None:
        print(json.dumps(doc, ensure_ascii=False, indent=2))
    else:
        print(text)


def _load(args) -> SimplicialComplex:
    if args.gen and args.input:
        raise InputError("give either an input file or --gen, not both")
    if args.gen:
        try:
            return parse_generator(args.gen)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if not args.input:
        raise InputError("no input: pass a complex file or --gen NAME")
    return load_complex(args.input)


def _dims(X: SimplicialComplex, keys: Sequence[DegreeKey], route: str, jobs: int) -> list[tuple[int, int, int]]:
    if route != "all":
        return compute_dims(X, keys, route=route, jobs=jobs)
    table = {r: compute_dims(X, keys, route=r, jobs=jobs) for r in ROUTES}
    bad = []
    for i, key in enumerate(keys):
        vals = {r: tuple(table[r][i]) for r in ROUTES}
        if len(set(vals.values())) > 1:
            bad.append(f"  {key.describe(X)}: " + ", ".join(f"{r}={v}" for r, v in vals.items()))
    if bad:
        raise _Mismatch("routes disagree:\n" + "\n".join(bad))
    return table["n"]


# -- commands -----------------------------------------------------------------------------

def cmd_report(args) -> int:
    X = _load(args)
    keys = relevant_degrees(X)
    dims = _dims(X, keys, args.route, args.jobs)
    from .cotangent import CotangentPiece

    pieces = [CotangentPiece(k, *d) for k, d in zip(keys, dims)]
    pieces = [p for p in pieces if not p.is_zero]
    doc = build_report(X, pieces, args.route, args.coarse)
    if args.json:
        print(doc.to_json())
    else:
        print(render_table(doc))
        for i in (1, 2):
            lo, hi = coarse_degrees(pieces, i)
            if lo is not None:
                span = f"[{lo}, {'∞' if hi is None else hi}]"
                print(f"T{i} occupies coarse degrees {span}")
    return EXIT_OK


def _key_and_exponents(X: SimplicialComplex, a: str, b: str) -> tuple[DegreeKey, tuple[int, ...], bool]:
    avec, explicit = parse_exponents(X, a)
    key = key_from_names(X, ",".join(part.partition("^")[0] for part in a.split(",")), b)
    return key, avec, explicit


def cmd_piece(args) -> int:
    from .taylor import perturbed_equations

    X = _load(args)
    key, avec, _ = _key_and_exponents(X, args.a, args.b)
    doc: dict = {"a": X.names(key.a), "b": X.names(key.b), "exponents": list(avec)}
    lines = [f"degree {key.describe(X)}"]
    if key.a not in X:
        lines.append(f"warning: a = {{{face_names(X, key.a)}}} is not a face; every piece vanishes")
        doc.update(dim_hom=0, dim_t1=0, dim_t2=0, N=[], Nt=[], t1=[], equations=[])
        _emit(args, "\n".join(lines + ["dims (hom, T1, T2) = (0, 0, 0)"]), doc)
        return EXIT_OK
    sp = piece_space(X, key)
    if args.route != "n":
        other = _dims(X, [key], args.route, 1)[0]
        if tuple(other) != sp.piece().dims:
            raise _Mismatch(f"route {args.route} gives {other}, kernel complex gives {sp.piece().dims}")
    N = sorted(sp.N, key=lambda f: (f.bit_count(), members(f)))
    Nt = sorted(sp.Nt, key=lambda f: (f.bit_count(), members(f)))
    lines.append("N  = {" + "; ".join(face_names(X, f) for f in N) + "}")
    lines.append("Ñ  = {" + "; ".join(face_names(X, f) for f in Nt) + "}")
    lines.append(f"dims (hom, T1, T2) = {sp.piece().dims}")
    basis = sp.t1_basis()
    eqs = []
    for i, lam in enumerate(basis):
        rep = ", ".join(f"{face_names(X, f)}:{_fmt(x)}" for f, x in sorted(lam.items(), key=lambda t: (t[0].bit_count(), members(t[0]))))
        lines.append(f"T1 class {i}: λ = {{{rep}}}")
        e = perturbed_equations(X, avec, key.b, lam, ascii_only=args.ascii)
        eqs.append(e)
        for eq in e:
            lines.append(f"    {eq}")
    doc.update(dim_hom=sp.dim_hom, dim_t1=sp.dim_t1, dim_t2=sp.dim_t2,
               N=[X.names(f) for f in N], Nt=[X.names(f) for f in Nt],
               t1=[{face_names(X, f): _fmt(x) for f, x in lam.items()} for lam in basis],
               equations=eqs)
    _emit(args, "\n".join(lines), doc)
    return EXIT_OK


def _class(X: SimplicialComplex, a: str, b: str, index: int):
    from .deformation import T1Class

    key, avec, _ = _key_and_exponents(X, a, b)
    if not is_relevant(X, key):
        return key, None
    basis = piece_space(X, key).t1_basis()
    if not basis:
        return key, None
    if not 0 <= index < len(basis):
        raise InputError(f"class index {index} out of range (dim T1 = {len(basis)})")
    return key, T1Class(X, key, avec, basis[index])


def cmd_cup(args) -> int:
    from .deformation import cup

    X = _load(args)
    k1, phi = _class(X, args.a1, args.b1, args.i1)
    k2, psi = _class(X, args.a2, args.b2, args.i2)
    if phi is None or psi is None:
        _emit(args, "an input class is zero; the product is zero", {"zero": True, "note": "zero input class"})
        return EXIT_OK
    prod = cup(phi, psi)
    doc = {"zero": prod.is_zero, "note": prod.note,
           "target": None if prod.key is None else {"a": X.names(prod.key.a), "b": X.names(prod.key.b),
                                                    "exponents": list(prod.avec)},
           "coordinates": [_fmt(x) for x in prod.coordinates],
           "cocycle": [{"f": X.names(f), "g": X.names(g), "value": _fmt(x)} for (f, g), x in sorted(prod.cocycle.items())]}
    lines = []
    if prod.note:
        lines.append(f"{prod.note}: the product is zero")
    else:
        lines.append(f"target degree {prod.key.describe(X)}")
        lines.append("coordinates: (" + ", ".join(_fmt(x) for x in prod.coordinates) + ")")
        for (f, g), x in sorted(prod.cocycle.items()):
            lines.append(f"  ({face_names(X, f)} | {face_names(X, g)}) -> {_fmt(x)}")
    _emit(args, "\n".join(lines), doc)
    return EXIT_OK


def cmd_quadratic(args) -> int:
    from .deformation import quadratic_base_equations

    X = _load(args)
    q = quadratic_base_equations(X, args.degree)
    eqs = [e for e in q.render(args.ascii) if e != "0"]
    lines = [f"T1 in coarse degree {args.degree}: {len(q.t1_classes)} coordinates"]
    for name, cls in zip(q.t1_names, q.t1_classes):
        lines.append(f"  {name}: {cls.key.describe(X)} exponents {list(cls.avec)}")
    lines.append(f"T2 in coarse degree {2 * args.degree}: {len(q.t2_labels)} coordinates")
    lines += [f"  {e} = 0" for e in eqs] or ["  no quadratic equations"]
    doc = {"t1": q.t1_names, "t2": q.t2_labels, "equations": eqs}
    _emit(args, "\n".join(lines), doc)
    return EXIT_OK


def cmd_localize(args) -> int:
    from .deformation import T1Class, _t2_classes, localize

    X = _load(args)
    key, avec, explicit = _key_and_exponents(X, args.a, args.b)
    if not explicit and sum(avec) != key.b.bit_count():
        comps = _compositions(key.a, key.b.bit_count(), X.n_ambient)
        if not comps:
            raise InputError("no coarse-degree-0 exponent vector has this support")
        avec = comps[0]
    v = parse_face(X, args.vertex)
    if v.bit_count() != 1:
        raise InputError("--vertex takes a single vertex name")
    vi = v.bit_length() - 1
    if not is_relevant(X, key):
        _emit(args, "the degree carries no classes", {"classes": []})
        return EXIT_OK
    sp = piece_space(X, key)
    classes = _t2_classes(X, key, avec) if args.t2 else [T1Class(X, key, avec, lam) for lam in sp.t1_basis()]
    out = []
    lines = [f"T{2 if args.t2 else 1} at {key.describe(X)} exponents {list(avec)}, localized at {args.vertex}"]
    for i, cls in enumerate(classes):
        loc = localize(cls, vi)
        where = "no piece" if loc.key is None else loc.key.describe(loc.link)
        coords = [_fmt(x) for x in loc.coordinates]
        lines.append(f"  class {i}: link degree {where}, coordinates ({', '.join(coords)})")
        out.append({"link_key": where, "coordinates": coords})
    if not classes:
        lines.append("  no classes in this degree")
    _emit(args, "\n".join(lines), {"classes": out})
    return EXIT_OK


def cmd_t0(args) -> int:
    X = _load(args)
    d = t0(X)
    lines = []
    for v, gens in d.generators.items():
        lines.append(f"a_{X.vertex_names[v]} generated by " + ", ".join(f"x^{{{face_names(X, f)}}}" for f in gens))
    lines.append(f"generated by the Euler-type derivations x_v d/dx_v: {'yes' if d.module_generated_by_delta else 'no'}")
    doc = {"generators": {X.vertex_names[v]: [X.names(f) for f in g] for v, g in d.generators.items()},
           "module_generated_by_delta": d.module_generated_by_delta}
    _emit(args, "\n".join(lines), doc)
    return EXIT_OK


def cmd_check(args) -> int:
    from .checks import run_all

    X = _load(args)
    results = run_all(X, jobs=args.jobs)
    lines = []
    for r in results:
        lines.append(r.line())
        lines += [f"    {f}" for f in r.failures[:20]]
    doc = {r.name: {"checked": r.checked, "failures": r.failures} for r in results}
    _emit(args, "\n".join(lines), doc)
    return EXIT_OK if all(r.passed for r in results) else EXIT_MISMATCH


def cmd_gen(args) -> int:
    try:
        X = parse_generator(args.name)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.json:
        print(json.dumps(complex_to_json(X), ensure_ascii=False))
    else:
        for f in X.facets:
            print(" ".join(X.names(f)) or "{}")
    return EXIT_OK


# -- parser -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("input", nargs="?", help="complex file (JSON or one facet per line)")
    common.add_argument("--gen", metavar="NAME", help="builtin complex: " + ", ".join(GENERATOR_NAMES))
    common.add_argument("--route", choices=(*ROUTES, "all"), default="n")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--ascii", action="store_true", help="ASCII-only equations")
    common.add_argument("--jobs", type=int, default=1, metavar="K")
    common.add_argument("--cap", type=int, metavar="N", help="ambient size cap for non-face enumeration")

    p = _Parser(prog="srcot", description="Cotangent cohomology of Stanley-Reisner rings.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("report", parents=[common], help="all nonzero pieces and coarse slices")
    r.add_argument("--coarse", type=int, action="append", metavar="D", help="coarse degree to tabulate (repeatable)")
    r.set_defaults(fn=cmd_report)

    s = sub.add_parser("piece", parents=[common], help="one multidegree in detail")
    s.add_argument("--a", default="", help="support of a, e.g. '1' or '1^2,3'")
    s.add_argument("--b", required=True)
    s.set_defaults(fn=cmd_piece)

    c = sub.add_parser("cup", parents=[common], help="cup product of two T1 classes")
    for i in ("1", "2"):
        c.add_argument(f"--a{i}", default="")
        c.add_argument(f"--b{i}", required=True)
        c.add_argument(f"--i{i}", type=int, default=0, help="basis index of the class")
    c.set_defaults(fn=cmd_cup)

    q = sub.add_parser("quadratic", parents=[common], help="quadratic base equations")
    q.add_argument("--degree", type=int, default=-1, help="coarse degree of T1 (default -1)")
    q.set_defaults(fn=cmd_quadratic)

    lo = sub.add_parser("localize", parents=[common], help="restrict degree-0 classes to a vertex link")
    lo.add_argument("--a", required=True)
    lo.add_argument("--b", required=True)
    lo.add_argument("--vertex", required=True)
    lo.add_argument("--t2", action="store_true", help="localize T2 instead of T1")
    lo.set_defaults(fn=cmd_localize)

    t = sub.add_parser("t0", parents=[common], help="derivation module generators")
    t.set_defaults(fn=cmd_t0)

    k = sub.add_parser("check", parents=[common], help="run every invariant suite")
    k.set_defaults(fn=cmd_check)

    g = sub.add_parser("gen", help="print a builtin complex")
    g.add_argument("name")
    g.add_argument("--json", action="store_true")
    g.set_defaults(fn=cmd_gen)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        print("srcot: error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    saved_cap = os.environ.get("SRCOT_CAP")
    if getattr(args, "cap", None) is not None:
        # the environment carries the cap into worker processes as well
        os.environ["SRCOT_CAP"] = str(args.cap)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"srcot: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print(f"srcot: {exc}; the kernel-complex route avoids this enumeration (try --route n)", file=sys.stderr)
        return EXIT_CAP
    except _Mismatch as exc:
        print(f"srcot: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    finally:
        if saved_cap is None:
            os.environ.pop("SRCOT_CAP", None)
        else:
            os.environ["SRCOT_CAP"] = saved_cap


if __name__ == "__main__":
    sys.exit(main())
