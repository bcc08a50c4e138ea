"""Cup product, quadratic base equations and localization to vertex links."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .complex_core import Face, SimplicialComplex, bit, members
from .cotangent import (
    DegreeKey,
    PieceSpace,
    _compositions,
    cached_link,
    is_relevant,
    piece_space,
    relevant_degrees,
)
from .linalg import ExactMatrix

__all__ = [
    "T1Class",
    "T2Class",
    "QuadraticObstruction",
    "cup",
    "cup_value",
    "greedy_maximal",
    "t1_slice",
    "t2_slice",
    "quadratic_base_equations",
    "localize",
    "injectivity_check",
]


@dataclass(frozen=True)
class T1Class:
    """A class in ``T^1_{𝐚-b}`` given by a cocycle ``λ`` on ``N_{a-b}`` (faces of ``X``)."""

    X: SimplicialComplex
    key: DegreeKey
    avec: tuple[int, ...]
    cocycle: dict

    def __post_init__(self) -> None:
        if _support(self.avec) != self.key.a:
            raise ValueError("exponent vector support must equal the key's a")

    def value(self, f: Face) -> Fraction:
        return Fraction(self.cocycle.get(f, 0))

    @property
    def space(self) -> PieceSpace:
        return piece_space(self.X, self.key)

    def coordinates(self) -> list[Fraction]:
        return self.space.t1_coordinates(self.cocycle)

    def scaled(self, s: Fraction | int) -> "T1Class":
        return T1Class(self.X, self.key, self.avec, {f: s * x for f, x in self.cocycle.items()})


@dataclass(frozen=True)
class T2Class:
    """A class in ``T^2_{𝐚-b}`` with its cocycle on pairs and its coordinates."""

    X: SimplicialComplex
    key: DegreeKey | None
    avec: tuple[int, ...]
    cocycle: dict
    coordinates: tuple[Fraction, ...]
    note: str = ""

    @property
    def is_zero(self) -> bool:
        return not any(self.coordinates)


def _support(vec: Sequence[int]) -> Face:
    out = 0
    for v, x in enumerate(vec):
        if x:
            out |= bit(v)
    return out


def _key_of(c: Sequence[int]) -> tuple[DegreeKey, tuple[int, ...]]:
    avec = tuple(max(x, 0) for x in c)
    bvec = tuple(max(-x, 0) for x in c)
    if any(x > 1 for x in bvec):
        raise ValueError("b must be squarefree")
    return DegreeKey(_support(avec), _support(bvec)), avec


def greedy_maximal(X: SimplicialComplex, f: Face, b: Face, descending: bool = False) -> Face:
    """A maximal ``d ⊆ b`` with ``f ∪ (b ∖ d) ∉ X``, built vertex by vertex."""
    d = 0
    order = members(b)
    if descending:
        order = order[::-1]
    for v in order:
        if (f | (b & ~(d | bit(v)))) not in X.faces:
            d |= bit(v)
    return d


def cup_value(phi: T1Class, psi: T1Class, f: Face, g: Face, key: DegreeKey,
              descending: bool = False) -> Fraction:
    """The two-line expression for ``(φ ∪ ψ)(f, g)`` at the target ``key``."""
    X = phi.X
    b = key.b
    b1, b2 = phi.key.b, psi.key.b
    a1, a2 = phi.key.a, psi.key.a
    d = greedy_maximal(X, f, b, descending)
    e = greedy_maximal(X, g, b, descending)

    def ev(cls: T1Class, h: Face) -> Fraction:
        if h not in X.faces:
            return Fraction(0)
        assert h in cls.space.N or not cls.value(h), "argument outside N carries a value"
        return cls.value(h)

    t1 = (ev(phi, (f & ~b1) | (b2 & ~d)) - ev(phi, (g & ~b1) | (b2 & ~e))) * ev(psi, (f | g | a2) & ~b2)
    t2 = (ev(psi, (f & ~b2) | (b1 & ~d)) - ev(psi, (g & ~b2) | (b1 & ~e))) * ev(phi, (f | g | a1) & ~b1)
    return t1 + t2


def cup(phi: T1Class, psi: T1Class, descending: bool = False) -> T2Class:
    """``φ ∪ ψ`` in ``T^2`` of the summed degree, with cohomology coordinates."""
    X = phi.X
    if psi.X != X:
        raise ValueError("classes live on different complexes")
    n = X.n_ambient
    c = tuple(phi.avec[v] - (phi.key.b >> v & 1) + psi.avec[v] - (psi.key.b >> v & 1) for v in range(n))
    if phi.key.b & psi.key.b:
        return T2Class(X, None, tuple(max(x, 0) for x in c), {}, (), note="b1 and b2 intersect")
    key, avec = _key_of(c)
    expect_b = (phi.key.b & ~psi.key.a) | (psi.key.b & ~phi.key.a)
    assert key.b == expect_b, "target b differs from (b1∖a2) ∪ (b2∖a1)"
    if not key.b or not is_relevant(X, key):
        return T2Class(X, key, avec, {}, (), note="target degree carries no T^2")
    space = piece_space(X, key)
    if space.dim_t2 == 0:
        return T2Class(X, key, avec, {}, (), note="target degree carries no T^2")
    mu = {}
    for (i1, i2) in space.complex.labels[1]:
        f, g = space._face(i1), space._face(i2)
        val = cup_value(phi, psi, f, g, key, descending)
        if val:
            mu[(f, g)] = val
    # pairs inside Ñ are not cochain coordinates; the formula must vanish there
    nt = sorted(space.Nt)
    for i, f in enumerate(nt):
        for g in nt[i + 1:]:
            if (f | g) in space.Nt:
                assert cup_value(phi, psi, f, g, key, descending) == 0, "cup does not vanish on Ñ"
    coords = space.t2_coordinates(mu)
    return T2Class(X, key, avec, mu, tuple(coords))


# -- slices and quadratic equations ----------------------------------------------------

@dataclass(frozen=True)
class SlicePiece:
    key: DegreeKey
    avec: tuple[int, ...]
    dim: int


def _slice(X: SimplicialComplex, i: int, degree: int) -> list[SlicePiece]:
    out = []
    n = X.n_ambient
    for key in relevant_degrees(X):
        sp = piece_space(X, key)
        dim = sp.dim_t1 if i == 1 else sp.dim_t2
        if not dim:
            continue
        total = key.b.bit_count() + degree
        if key.a == 0:
            if total == 0:
                out.append(SlicePiece(key, (0,) * n, dim))
            continue
        for avec in _compositions(key.a, total, n):
            out.append(SlicePiece(key, avec, dim))
    return out


def t1_slice(X: SimplicialComplex, degree: int) -> tuple[list[SlicePiece], list[T1Class]]:
    """Pieces of ``T^1`` in one coarse degree and a basis of classes over them."""
    pieces = _slice(X, 1, degree)
    classes = []
    for p in pieces:
        for lam in piece_space(X, p.key).t1_basis():
            classes.append(T1Class(X, p.key, p.avec, lam))
    return pieces, classes


def t2_slice(X: SimplicialComplex, degree: int) -> list[SlicePiece]:
    return _slice(X, 2, degree)


@dataclass
class QuadraticObstruction:
    """One quadratic form per ``T^2`` coordinate in the ``t``-coordinates of ``T^1``.

    ``forms[r]`` maps ``(j, k)`` with ``j <= k`` to the coefficient of
    ``t_j t_k``.
    """

    t1_names: list[str]
    t1_classes: list[T1Class]
    t2_labels: list[str]
    forms: list[dict[tuple[int, int], Fraction]] = field(default_factory=list)

    def render(self, ascii_only: bool = False) -> list[str]:
        out = []
        for form in self.forms:
            terms = []
            for (j, k), coef in sorted(form.items()):
                mono = self.t1_names[j] + (self.t1_names[k] if j != k else ("^2" if ascii_only else "²"))
                if j != k and ascii_only:
                    mono = f"{self.t1_names[j]}*{self.t1_names[k]}"
                terms.append((coef, mono))
            out.append(_join_terms(terms, ascii_only) if terms else "0")
        return out


def _join_terms(terms: Iterable[tuple[Fraction, str]], ascii_only: bool) -> str:
    minus = "-" if ascii_only else "−"
    s = ""
    for i, (coef, mono) in enumerate(terms):
        neg = coef < 0
        mag = -coef if neg else coef
        body = mono if mag == 1 else f"{mag}{'*' if ascii_only else ''}{mono}"
        if i == 0:
            s = (minus if neg else "") + body
        else:
            s += f" {minus if neg else '+'} {body}"
    return s


def _t_names(X: SimplicialComplex, classes: Sequence[T1Class]) -> list[str]:
    """``t<a>`` for each class, disambiguated by ``b`` and an index when needed."""
    base = ["t" + ("".join(X.vertex_names[v] for v in members(c.key.a)) or "∅") for c in classes]
    if len(set(base)) == len(base):
        return base
    out = []
    seen: dict[str, int] = {}
    for c, name in zip(classes, base):
        full = f"{name}[{X.label(c.key.b)}]"
        seen[full] = seen.get(full, 0) + 1
        out.append(full if seen[full] == 1 else f"{full}#{seen[full]}")
    return out


def quadratic_base_equations(X: SimplicialComplex, t1_degree: int = -1,
                             t2_degree: int | None = None) -> QuadraticObstruction:
    """Quadratic parts of the base equations restricted to one ``T^1`` slice."""
    if t2_degree is None:
        t2_degree = 2 * t1_degree
    pieces, classes = t1_slice(X, t1_degree)
    names = _t_names(X, classes)
    targets = t2_slice(X, t2_degree)
    offsets: dict[tuple, int] = {}
    labels = []
    for tp in targets:
        offsets[(tp.key, tp.avec)] = len(labels)
        for r in range(tp.dim):
            labels.append(f"T2[{tp.key.describe(X)}]#{r}")
    forms: list[dict[tuple[int, int], Fraction]] = [{} for _ in labels]
    for j, cj in enumerate(classes):
        for k in range(j, len(classes)):
            ck = classes[k]
            prod = cup(cj, ck)
            if prod.key is None or not prod.coordinates:
                continue
            other = cup(ck, cj)
            assert other.coordinates == prod.coordinates, "cup product is not symmetric"
            off = offsets.get((prod.key, prod.avec))
            if off is None:
                assert prod.is_zero, "cup lands outside the requested T^2 slice"
                continue
            scale = Fraction(1, 2) if j == k else Fraction(1)
            for r, x in enumerate(prod.coordinates):
                if x:
                    forms[off + r][(j, k)] = scale * x
    return QuadraticObstruction(names, classes, labels, forms)


# -- localization -------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalizedClass:
    link: SimplicialComplex
    key: DegreeKey | None
    avec: tuple[int, ...]
    cocycle: dict
    coordinates: tuple[Fraction, ...]


def _pull(v: int, b: Face):
    extra = 0 if b >> v & 1 else bit(v)
    return lambda g: g | extra


def localize(cls: T1Class | T2Class, v: int) -> LocalizedClass:
    """Pull a degree-0 class back along ``g ↦ g ∪ (v ∖ b)`` to ``link(v, X)``."""
    X = cls.X
    if not X.vertex_set >> v & 1:
        raise ValueError(f"{v} is not a vertex of the complex")
    if cls.key is None:
        raise ValueError("cannot localize the zero class without a degree")
    if sum(cls.avec) != cls.key.b.bit_count():
        raise ValueError("localization needs a class of coarse degree 0")
    L = cached_link(bit(v), X)
    avec = tuple(0 if w == v else x for w, x in enumerate(cls.avec))
    key = DegreeKey(cls.key.a & ~bit(v), cls.key.b & ~bit(v))
    is_t1 = isinstance(cls, T1Class)
    if not key.b or not is_relevant(L, key):
        return LocalizedClass(L, None, avec, {}, ())
    target = piece_space(L, key)
    up = _pull(v, cls.key.b)
    if is_t1:
        lam = {}
        for g in target.N:
            x = cls.cocycle.get(up(g), 0)
            if x:
                lam[g] = x
        assert target.is_hom(lam), "pulled-back function is not a homomorphism"
        coords = target.t1_coordinates(lam) if target.dim_t1 else []
        return LocalizedClass(L, key, avec, lam, tuple(coords))
    mu = {}
    for (i1, i2) in target.complex.labels[1]:
        f, g = target._face(i1), target._face(i2)
        x = _pair_value(cls.cocycle, up(f), up(g))
        if x:
            mu[(f, g)] = x
    coords = target.t2_coordinates(mu) if target.dim_t2 else []
    return LocalizedClass(L, key, avec, mu, tuple(coords))


def _pair_value(mu: dict, f: Face, g: Face) -> Fraction:
    if (f, g) in mu:
        return mu[(f, g)]
    if (g, f) in mu:
        return -mu[(g, f)]
    return Fraction(0)


def _t2_classes(X: SimplicialComplex, key: DegreeKey, avec: tuple[int, ...]) -> list[T2Class]:
    sp = piece_space(X, key)
    out = []
    for mu in sp.t2_basis():
        out.append(T2Class(X, key, avec, mu, tuple(sp.t2_coordinates(mu))))
    return out


@dataclass
class InjectivityResult:
    i: int
    kernel_dim: int
    pieces: list[tuple[DegreeKey, int, int]]

    @property
    def injective(self) -> bool:
        return self.kernel_dim == 0


def injectivity_check(X: SimplicialComplex, i: int) -> InjectivityResult:
    """Kernel of ``⊕_v`` localization on the coarse-degree-0 part of ``T^i``.

    Classes only depend on the supports of the degree, so one exponent vector
    per key is enough.
    """
    if i not in (1, 2):
        raise ValueError("i must be 1 or 2")
    verts = members(X.vertex_set)
    kernel = 0
    report = []
    for key in relevant_degrees(X):
        sa, sb = key.a.bit_count(), key.b.bit_count()
        if sa == 0 or sa > sb:
            continue
        sp = piece_space(X, key)
        dim = sp.dim_t1 if i == 1 else sp.dim_t2
        if not dim:
            continue
        avec = _compositions(key.a, sb, X.n_ambient)[0]
        if i == 1:
            classes: list = [T1Class(X, key, avec, lam) for lam in sp.t1_basis()]
        else:
            classes = _t2_classes(X, key, avec)
        rows = []
        for cls in classes:
            row: list[Fraction] = []
            for v in verts:
                row.extend(localize(cls, v).coordinates)
            rows.append({j: x for j, x in enumerate(row) if x})
        ncols = max((max(r) + 1 for r in rows if r), default=0)
        rank = ExactMatrix(len(rows), max(ncols, 1), rows).rank() if rows else 0
        report.append((key, dim, dim - rank))
        kernel += dim - rank
    return InjectivityResult(i, kernel, report)
