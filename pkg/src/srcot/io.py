"""Reading complexes and writing/reading machine-readable reports."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from .complex_core import SimplicialComplex, from_facets, members
from .cotangent import CotangentPiece, DegreeKey, coarse_degrees, coarse_slice
from .generators import PRETTY_NAMES


class InputError(ValueError):
    """Malformed complex file; the message carries line or field context."""


def parse_complex_text(text: str, source: str = "<input>") -> SimplicialComplex:
    """JSON ``{"vertices": [...], "facets": [[...], ...]}`` or one facet per line.

    In the line format, names are separated by whitespace or commas, ``#``
    starts a comment, and a line reading ``{}`` is the empty facet.
    """
    stripped = text.lstrip()
    if stripped.startswith("{") and stripped.rstrip() != "{}":
        return _parse_json(text, source)
    facets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "{}":
            facets.append([])
            continue
        names = [t for t in line.replace(",", " ").split() if t]
        if len(set(names)) != len(names):
            raise InputError(f"{source}:{lineno}: duplicate vertex in facet {names}")
        facets.append(names)
    return from_facets(facets)


def _parse_json(text: str, source: str) -> SimplicialComplex:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from None
    if not isinstance(doc, dict) or "facets" not in doc:
        raise InputError(f"{source}: expected an object with a 'facets' field")
    facets = doc["facets"]
    if not isinstance(facets, list):
        raise InputError(f"{source}: 'facets' must be a list")
    for i, f in enumerate(facets):
        if not isinstance(f, list) or not all(isinstance(v, (str, int)) for v in f):
            raise InputError(f"{source}: facets[{i}] must be a list of vertex names")
    verts = doc.get("vertices")
    if verts is not None and (not isinstance(verts, list) or not all(isinstance(v, (str, int)) for v in verts)):
        raise InputError(f"{source}: 'vertices' must be a list of names")
    try:
        return from_facets([[str(v) for v in f] for f in facets],
                           None if verts is None else [str(v) for v in verts])
    except ValueError as exc:
        raise InputError(f"{source}: {exc}") from None


def load_complex(path: str | Path) -> SimplicialComplex:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return parse_complex_text(text, str(path))


def complex_to_json(X: SimplicialComplex) -> dict:
    return {"vertices": list(X.vertex_names), "facets": [X.names(f) for f in X.facets]}


# -- reports -------------------------------------------------------------------------

@dataclass
class PieceRow:
    a: list[str]
    b: list[str]
    dim_hom: int
    dim_t1: int
    dim_t2: int


@dataclass
class ReportDocument:
    vertices: list[str]
    facets: list[list[str]]
    f_vector: list[int]
    route: str
    rows: list[PieceRow]
    coarse_t1: dict[int, int] = field(default_factory=dict)
    coarse_t2: dict[int, int] = field(default_factory=dict)
    name_map: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> str:
        doc = asdict(self)
        doc["coarse_t1"] = {str(k): v for k, v in self.coarse_t1.items()}
        doc["coarse_t2"] = {str(k): v for k, v in self.coarse_t2.items()}
        return json.dumps(doc, ensure_ascii=False, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        doc: dict[str, Any] = json.loads(text)
        return cls(
            vertices=list(doc["vertices"]),
            facets=[list(f) for f in doc["facets"]],
            f_vector=list(doc["f_vector"]),
            route=doc["route"],
            rows=[PieceRow(**r) for r in doc["rows"]],
            coarse_t1={int(k): v for k, v in doc.get("coarse_t1", {}).items()},
            coarse_t2={int(k): v for k, v in doc.get("coarse_t2", {}).items()},
            name_map=dict(doc.get("name_map", {})),
        )

    def totals(self) -> tuple[int, int]:
        return sum(r.dim_t1 for r in self.rows), sum(r.dim_t2 for r in self.rows)


def default_coarse_range(pieces: list[CotangentPiece]) -> range:
    lows = [d for d in (coarse_degrees(pieces, 1)[0], coarse_degrees(pieces, 2)[0]) if d is not None]
    if not lows:
        return range(0)
    return range(min(lows), 2)


def build_report(X: SimplicialComplex, pieces: list[CotangentPiece], route: str,
                 coarse: list[int] | None = None) -> ReportDocument:
    rows = [PieceRow(X.names(p.key.a), X.names(p.key.b), p.dim_hom, p.dim_t1, p.dim_t2) for p in pieces]
    degrees = list(coarse) if coarse is not None else list(default_coarse_range(pieces))
    c1 = {d: coarse_slice(X, 1, d, pieces) for d in degrees}
    c2 = {d: coarse_slice(X, 2, d, pieces) for d in degrees}
    names = {v: PRETTY_NAMES[v] for v in X.vertex_names if v in PRETTY_NAMES}
    return ReportDocument(list(X.vertex_names), [X.names(f) for f in X.facets], list(X.f_vector),
                          route, rows, c1, c2, names)


def render_table(doc: ReportDocument) -> str:
    lines = [f"vertices: {' '.join(doc.vertices)}",
             f"f-vector: {tuple(doc.f_vector)}",
             f"route: {doc.route}"]
    if doc.name_map:
        lines.append("names: " + ", ".join(f"{k}={v}" for k, v in doc.name_map.items()))
    if not doc.rows:
        lines.append("no nonzero pieces")
    else:
        wa = max(3, *(len(",".join(r.a)) for r in doc.rows))
        wb = max(3, *(len(",".join(r.b)) for r in doc.rows))
        lines.append(f"{'a':<{wa}}  {'b':<{wb}}  hom  T1  T2")
        for r in doc.rows:
            lines.append(f"{','.join(r.a) or '-':<{wa}}  {','.join(r.b):<{wb}}  {r.dim_hom:>3} {r.dim_t1:>3} {r.dim_t2:>3}")
    t1, t2 = doc.totals()
    lines.append(f"sum over pieces: T1 {t1}, T2 {t2}")
    if doc.coarse_t1 or doc.coarse_t2:
        lines.append("coarse degree  dim T1_d  dim T2_d")
        for d in sorted(set(doc.coarse_t1) | set(doc.coarse_t2)):
            lines.append(f"{d:>13}  {doc.coarse_t1.get(d, 0):>8}  {doc.coarse_t2.get(d, 0):>8}")
    return "\n".join(lines)


def parse_face(X: SimplicialComplex, text: str) -> int:
    """Comma-separated vertex names (empty string or ``-`` for the empty face)."""
    text = text.strip()
    if text in ("", "-", "∅"):
        return 0
    names = [t.strip() for t in text.split(",") if t.strip()]
    try:
        return X.face_of(names)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None


def parse_exponents(X: SimplicialComplex, text: str) -> tuple[tuple[int, ...], bool]:
    """``"1^2,3"`` to an exponent vector; the flag says whether any power was given."""
    vec = [0] * X.n_ambient
    explicit = False
    text = text.strip()
    if text in ("", "-", "∅"):
        return tuple(vec), False
    for part in (t.strip() for t in text.split(",")):
        if not part:
            continue
        name, hat, power = part.partition("^")
        if hat:
            explicit = True
            try:
                e = int(power)
            except ValueError:
                raise InputError(f"bad exponent in {part!r}") from None
            if e < 1:
                raise InputError(f"exponent must be positive in {part!r}")
        else:
            e = 1
        v = parse_face(X, name).bit_length() - 1
        if vec[v]:
            raise InputError(f"vertex {name!r} repeated")
        vec[v] = e
    return tuple(vec), explicit


def key_from_names(X: SimplicialComplex, a: str, b: str) -> DegreeKey:
    fa, fb = parse_face(X, a), parse_face(X, b)
    if fa & fb:
        raise InputError("a and b must be disjoint")
    if not fb:
        raise InputError("b must be nonempty")
    return DegreeKey(fa, fb)


def face_names(X: SimplicialComplex, f: int) -> str:
    return ",".join(X.vertex_names[v] for v in members(f)) or "∅"
