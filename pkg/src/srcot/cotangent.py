"""Multigraded pieces of Hom(I_X, A_X), T^1 and T^2, and T^0.

A multidegree ``c = 𝐚 - b`` is reduced to its supports ``(a, b)``
(:class:`DegreeKey`); all pieces vanish unless ``a`` is a face and ``b`` is a
nonempty set of vertices of ``link(a, X)``.  Three routes are offered:

* ``piece_via_n``: cohomology of ``ker(K•(N) -> K•(Ñ))`` computed on the link,
* ``piece_via_order``: relative cohomology of the order complexes of ``(N, Ñ)``,
* ``piece_via_u``: relative cohomology of the open sets ``(U_b, Ũ_b)`` of the link.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb
from typing import Iterable, Sequence

from .cohomology import cohomology, kernel_complex, relative_order_cohomology
from .complex_core import (
    Face,
    SimplicialComplex,
    USubset,
    bit,
    canonical_key,
    link,
    members,
    n_sets,
    star_closed,
    subsets,
    u_sets,
)
from .linalg import Quotient

__all__ = [
    "DegreeKey",
    "Multidegree",
    "CotangentPiece",
    "PieceSpace",
    "T0Description",
    "relevant_degrees",
    "piece_space",
    "piece_via_n",
    "piece_direct",
    "piece_via_order",
    "piece_via_u",
    "link_reduction_check",
    "t0",
    "full_report",
    "coarse_slice",
    "exponent_count",
    "is_closed_surface",
    "manifold_degree0_classification",
]


@dataclass(frozen=True)
class DegreeKey:
    """Supports ``(a, b)`` of a multidegree ``𝐚 - b``."""

    a: Face
    b: Face

    def __post_init__(self) -> None:
        if self.a & self.b:
            raise ValueError("a and b must be disjoint")

    @property
    def sort_key(self) -> tuple:
        return canonical_key(self.a) + canonical_key(self.b)

    def __lt__(self, other: "DegreeKey") -> bool:
        return self.sort_key < other.sort_key

    def describe(self, X: SimplicialComplex) -> str:
        return f"({X.label(self.a) or '∅'}) - ({X.label(self.b) or '∅'})"


@dataclass(frozen=True)
class Multidegree:
    """``c = 𝐚 - 𝐛`` with exponent vectors of disjoint support."""

    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.a) != len(self.b):
            raise ValueError("exponent vectors must have the same length")
        if any(x < 0 for x in self.a + self.b):
            raise ValueError("exponents must be nonnegative")
        if any(x and y for x, y in zip(self.a, self.b)):
            raise ValueError("a and b must have disjoint supports")

    @classmethod
    def from_c(cls, c: Sequence[int]) -> "Multidegree":
        return cls(tuple(max(x, 0) for x in c), tuple(max(-x, 0) for x in c))

    @classmethod
    def from_key(cls, key: DegreeKey, n: int, avec: Sequence[int] | None = None) -> "Multidegree":
        a = tuple(avec) if avec is not None else tuple(1 if key.a >> v & 1 else 0 for v in range(n))
        b = tuple(1 if key.b >> v & 1 else 0 for v in range(n))
        md = cls(a, b)
        if md.key.a != key.a:
            raise ValueError("exponent vector support differs from the key")
        return md

    @property
    def c(self) -> tuple[int, ...]:
        return tuple(x - y for x, y in zip(self.a, self.b))

    @property
    def squarefree_b(self) -> bool:
        return all(y <= 1 for y in self.b)

    @property
    def key(self) -> DegreeKey:
        return DegreeKey(_support(self.a), _support(self.b))

    @property
    def degree(self) -> int:
        return sum(self.c)


def _support(vec: Sequence[int]) -> Face:
    f = 0
    for v, x in enumerate(vec):
        if x:
            f |= bit(v)
    return f


@dataclass
class CotangentPiece:
    key: DegreeKey
    dim_hom: int
    dim_t1: int
    dim_t2: int
    t1_basis: list[dict[Face, Fraction]] | None = None
    t2_basis: list[dict[tuple[Face, Face], Fraction]] | None = None

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.dim_hom, self.dim_t1, self.dim_t2)

    @property
    def is_zero(self) -> bool:
        return self.dim_t1 == 0 and self.dim_t2 == 0


# -- degree enumeration -------------------------------------------------------

@lru_cache(maxsize=8192)
def cached_link(a: Face, X: SimplicialComplex) -> SimplicialComplex:
    return link(a, X)


def relevant_degrees(X: SimplicialComplex) -> list[DegreeKey]:
    """All ``(a, b)`` with ``a ∈ X`` and ``∅ ≠ b ⊆ [link(a, X)]``, canonically sorted."""
    keys = []
    for a in X.sorted_faces:
        verts = cached_link(a, X).vertex_set
        for b in subsets(verts):
            if b:
                keys.append(DegreeKey(a, b))
    keys.sort()
    return keys


def is_relevant(X: SimplicialComplex, key: DegreeKey) -> bool:
    if key.a not in X or not key.b:
        return False
    return key.b & ~cached_link(key.a, X).vertex_set == 0


# -- the N route ---------------------------------------------------------------

class PieceSpace:
    """Hom, T^1 and T^2 in one multidegree, with explicit cochain coordinates.

    Everything is computed on ``link(a, X)`` in degree ``∅ - b`` and reported
    back on ``X`` through ``g ↦ g ∪ a``.
    """

    def __init__(self, X: SimplicialComplex, key: DegreeKey):
        self.X = X
        self.key = key
        a, b = key.a, key.b
        if a in X:
            L = cached_link(a, X)
            N, Nt = n_sets(L, 0, b) if not (b & a) else (USubset(L, frozenset()),) * 2
        else:
            L = SimplicialComplex(X.vertex_names, (), check=False)
            N = Nt = USubset(L, frozenset())
        self.link = L
        self.N_link, self.Nt_link = N, Nt
        self.complex = kernel_complex(N, Nt, k_max=2)
        dims = cohomology(self.complex)
        self.dim_hom = dims[0]
        self.dim_t2 = dims[1]
        self.trivial = 1 if b.bit_count() == 1 and len(N) > 0 else 0
        self.dim_t1 = self.dim_hom - self.trivial

    # faces of X (with a added back)
    @cached_property
    def N(self) -> tuple[Face, ...]:
        return tuple(f | self.key.a for f in self.N_link.ordered)

    @cached_property
    def Nt(self) -> frozenset[Face]:
        return frozenset(f | self.key.a for f in self.Nt_link.elements)

    def _face(self, i: int) -> Face:
        return self.complex.elements[i] | self.key.a

    @cached_property
    def _c0_index(self) -> dict[Face, int]:
        return {self._face(t[0]): j for j, t in enumerate(self.complex.labels[0])}

    @cached_property
    def _c1_index(self) -> dict[tuple[Face, Face], tuple[int, int]]:
        out = {}
        for j, (i1, i2) in enumerate(self.complex.labels[1]):
            f, g = self._face(i1), self._face(i2)
            out[(f, g)] = (j, 1)
            out[(g, f)] = (j, -1)
        return out

    @cached_property
    def hom_quotient(self) -> Quotient:
        """Hom modulo the trivial (constant) deformations."""
        z = self.complex.d[0].nullspace()
        triv = []
        if self.trivial:
            triv = [{j: 1 for j in range(len(self.complex.labels[0]))}]
        return Quotient(z, triv)

    @cached_property
    def t2_quotient(self) -> Quotient:
        return self.complex.cocycle_quotient(1)

    def t1_vector(self, lam: dict[Face, Fraction | int]) -> dict[int, Fraction | int]:
        """Cochain coordinates of a function on ``N`` (values on ``Ñ`` must vanish)."""
        vec = {}
        for f, x in lam.items():
            if not x:
                continue
            j = self._c0_index.get(f)
            if j is None:
                raise ValueError(f"{self.X.label(f)!r} is not in N \\ Ñ for {self.key.describe(self.X)}")
            vec[j] = x
        return vec

    def t2_vector(self, mu: dict[tuple[Face, Face], Fraction | int]) -> dict[int, Fraction | int]:
        vec: dict[int, Fraction | int] = {}
        for (f, g), x in mu.items():
            if not x:
                continue
            hit = self._c1_index.get((f, g))
            if hit is None:
                raise ValueError("pair is not a basis pair of the kernel complex")
            j, s = hit
            vec[j] = vec.get(j, 0) + s * x
        return {j: x for j, x in vec.items() if x}

    def is_hom(self, lam: dict[Face, Fraction | int]) -> bool:
        return not self.complex.d[0].apply(self.t1_vector(lam))

    def t1_coordinates(self, lam: dict[Face, Fraction | int]) -> list[Fraction]:
        return self.hom_quotient.coordinates(self.t1_vector(lam))

    def t2_coordinates(self, mu: dict[tuple[Face, Face], Fraction | int]) -> list[Fraction]:
        return self.t2_quotient.coordinates(self.t2_vector(mu))

    def t1_basis(self) -> list[dict[Face, Fraction]]:
        labels = self.complex.labels[0]
        return [{self._face(labels[j][0]): x for j, x in sorted(rep.items())}
                for rep in self.hom_quotient.representatives]

    def hom_basis(self) -> list[dict[Face, Fraction]]:
        labels = self.complex.labels[0]
        return [{self._face(labels[j][0]): x for j, x in sorted(v.items())}
                for v in self.complex.d[0].nullspace()]

    def t2_basis(self) -> list[dict[tuple[Face, Face], Fraction]]:
        labels = self.complex.labels[1]
        out = []
        for rep in self.t2_quotient.representatives:
            out.append({(self._face(labels[j][0]), self._face(labels[j][1])): x for j, x in sorted(rep.items())})
        return out

    def piece(self, with_bases: bool = False) -> CotangentPiece:
        p = CotangentPiece(self.key, self.dim_hom, self.dim_t1, self.dim_t2)
        if with_bases:
            p.t1_basis = self.t1_basis()
            p.t2_basis = self.t2_basis()
        return p


@lru_cache(maxsize=4096)
def piece_space(X: SimplicialComplex, key: DegreeKey) -> PieceSpace:
    return PieceSpace(X, key)


def piece_via_n(X: SimplicialComplex, key: DegreeKey, with_bases: bool = False) -> CotangentPiece:
    """Dimensions from the kernel complex of ``(N, Ñ)`` on ``link(a, X)``."""
    return piece_space(X, key).piece(with_bases)


def piece_direct(X: SimplicialComplex, key: DegreeKey) -> tuple[int, int, int]:
    """Kernel-complex dimensions using ``N_{a-b}(X)`` itself (no link reduction)."""
    N, Nt = n_sets(X, key.a, key.b)
    h = cohomology(kernel_complex(N, Nt))
    triv = 1 if key.b.bit_count() == 1 and len(N) else 0
    return (h[0], h[0] - triv, h[1])


def piece_via_order(X: SimplicialComplex, key: DegreeKey) -> tuple[int, int, int]:
    """``(dim Hom, dim T^1, dim T^2)`` from ``H^{i-1}(N', Ñ')``, reduced iff ``#b = 1``."""
    N, Nt = n_sets(X, key.a, key.b)
    return _relative_dims(N, Nt, key.b.bit_count() == 1)


def piece_via_u(X: SimplicialComplex, key: DegreeKey) -> tuple[int, int, int]:
    """``(dim Hom, dim T^1, dim T^2)`` from the open sets ``U_b, Ũ_b`` of ``link(a, X)``."""
    if key.a not in X:
        return (0, 0, 0)
    L = cached_link(key.a, X)
    U, Ut = u_sets(L, key.b)
    return _relative_dims(U, Ut, key.b.bit_count() == 1)


def _relative_dims(Y: USubset, Z: USubset, single: bool) -> tuple[int, int, int]:
    h = relative_order_cohomology(Y, Z)
    if single:
        hr = relative_order_cohomology(Y, Z, reduced=True)
        return (h[0], hr[0], h[1])
    return (h[0], h[0], h[1])


def link_reduction_check(X: SimplicialComplex, key: DegreeKey) -> bool:
    """Dimensions at ``(a, b)`` on ``X`` agree with ``(∅, b)`` on ``link(a, X)``."""
    direct = piece_direct(X, key)
    if key.a not in X:
        return direct[1:] == (0, 0)
    if not key.a:
        return True
    L = cached_link(key.a, X)
    reduced = piece_direct(L, DegreeKey(0, key.b))
    return direct == reduced


# -- reports ---------------------------------------------------------------------

def full_report(X: SimplicialComplex, route: str = "n", jobs: int = 1) -> list[CotangentPiece]:
    """Nonzero pieces over all relevant degrees, canonically sorted."""
    keys = relevant_degrees(X)
    dims = compute_dims(X, keys, route=route, jobs=jobs)
    out = []
    for key, d in zip(keys, dims):
        p = CotangentPiece(key, *d)
        if not p.is_zero:
            out.append(p)
    return out


def _route_fn(route: str):
    if route == "n":
        return lambda X, k: piece_via_n(X, k).dims
    if route == "order":
        return piece_via_order
    if route == "u":
        return piece_via_u
    if route == "m":
        from .taylor import piece_via_m

        return lambda X, k: piece_via_m(X, k)
    raise ValueError(f"unknown route {route!r}")


def _dims_worker(args):
    X, keys, route = args
    fn = _route_fn(route)
    return [fn(X, k) for k in keys]


def compute_dims(X: SimplicialComplex, keys: Sequence[DegreeKey], route: str = "n",
                 jobs: int = 1) -> list[tuple[int, int, int]]:
    if jobs <= 1 or len(keys) < 2 * jobs:
        return _dims_worker((X, list(keys), route))
    from concurrent.futures import ProcessPoolExecutor

    chunks = [list(keys[i::jobs]) for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_dims_worker, [(X, c, route) for c in chunks]))
    out: list = [None] * len(keys)
    for i, res in enumerate(results):
        out[i::jobs] = res
    return out


def exponent_count(support_size: int, degree: int) -> int:
    """Number of exponent vectors with the given support size and total degree."""
    if support_size == 0:
        return 1 if degree == 0 else 0
    if degree < support_size:
        return 0
    return comb(degree - 1, support_size - 1)


def coarse_slice(X: SimplicialComplex, i: int, d: int,
                 pieces: Iterable[CotangentPiece] | None = None) -> int:
    """``dim T^i_d`` for the usual Z-grading (finite for every ``d``)."""
    if i not in (1, 2):
        raise ValueError("i must be 1 or 2")
    if pieces is None:
        pieces = full_report(X)
    total = 0
    for p in pieces:
        dim = p.dim_t1 if i == 1 else p.dim_t2
        if dim:
            total += dim * exponent_count(p.key.a.bit_count(), p.key.b.bit_count() + d)
    return total


def coarse_degrees(pieces: Iterable[CotangentPiece], i: int) -> tuple[int | None, int | None]:
    """Lowest coarse degree carrying ``T^i`` and the highest (``None`` when unbounded)."""
    lo: int | None = None
    hi: int | None = None
    unbounded = False
    seen = False
    for p in pieces:
        dim = p.dim_t1 if i == 1 else p.dim_t2
        if not dim:
            continue
        seen = True
        sa, sb = p.key.a.bit_count(), p.key.b.bit_count()
        low = sa - sb
        lo = low if lo is None else min(lo, low)
        if sa == 0:
            hi = low if hi is None else max(hi, low)
        else:
            unbounded = True
    if not seen:
        return (None, None)
    return (lo, None if unbounded else hi)


# -- T^0 ---------------------------------------------------------------------------

@dataclass
class T0Description:
    """``T^0 = ⊕_v 𝔞_v ∂/∂x_v``; ``generators[v]`` are the minimal faces generating ``𝔞_v``."""

    generators: dict[int, list[Face]]
    module_generated_by_delta: bool
    vertex_names: tuple[str, ...] = field(default=(), repr=False)


def t0(X: SimplicialComplex) -> T0Description:
    stars = {f: star_closed(f, X).faces for f in X.faces}
    gens: dict[int, list[Face]] = {}
    for v in members(X.vertex_set):
        sv = stars[bit(v)]
        ok = [a for a in X.sorted_faces if stars[a] <= sv]
        minimal = [a for a in ok if not any(b != a and b & a == b for b in ok)]
        gens[v] = minimal
    by_delta = all(g == [bit(v)] for v, g in gens.items())
    assert by_delta == _every_nonmaximal_in_two(X), "T^0 generation criterion mismatch"
    return T0Description(gens, by_delta, X.vertex_names)


def _every_nonmaximal_in_two(X: SimplicialComplex) -> bool:
    facets = set(X.facets)
    for a in X.faces:
        if a in facets:
            continue
        above = sum(1 for g in X.faces if g != a and g & a == a)
        if above < 2:
            return False
    return True


# -- 2-manifolds ----------------------------------------------------------------------

def is_closed_surface(X: SimplicialComplex) -> bool:
    """Every edge lies in two triangles and every vertex link is a cycle."""
    if X.dimension != 2:
        return False
    tri = [f for f in X.faces if f.bit_count() == 3]
    if any(f.bit_count() < 3 for f in X.facets):
        return False
    for e in (f for f in X.faces if f.bit_count() == 2):
        if sum(1 for t in tri if t & e == e) != 2:
            return False
    for v in members(X.vertex_set):
        L = cached_link(bit(v), X)
        if not _is_cycle(L):
            return False
    return True


def _is_cycle(L: SimplicialComplex) -> bool:
    verts = members(L.vertex_set)
    edges = [f for f in L.faces if f.bit_count() == 2]
    if L.dimension != 1 or len(verts) < 3 or len(edges) != len(verts):
        return False
    deg = {v: 0 for v in verts}
    for e in edges:
        for v in members(e):
            deg[v] += 1
    if any(d != 2 for d in deg.values()):
        return False
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        v = stack.pop()
        for e in edges:
            if e >> v & 1:
                w = members(e & ~bit(v))[0]
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return len(seen) == len(verts)


@dataclass
class Degree0Entry:
    key: DegreeKey
    avec: tuple[int, ...]
    dim: int
    tag: str


def manifold_degree0_classification(X: SimplicialComplex) -> tuple[list[Degree0Entry], list[Degree0Entry]]:
    """Nonzero degree-0 pieces of ``T^1`` (tagged i-iv) and of ``T^2`` (tagged ``t2``).

    Raises ``ValueError`` for non-surfaces or for a piece outside the known
    configurations.
    """
    if not is_closed_surface(X):
        raise ValueError("input is not a closed surface triangulation")
    n = X.n_ambient
    t1_out: list[Degree0Entry] = []
    t2_out: list[Degree0Entry] = []
    for key in relevant_degrees(X):
        sa, sb = key.a.bit_count(), key.b.bit_count()
        if sa == 0 or sa > sb:
            continue
        p = piece_via_n(X, key)
        if p.is_zero:
            continue
        for avec in _compositions(key.a, sb, n):
            if p.dim_t1:
                tag = _t1_configuration(X, key, avec)
                if tag is None or p.dim_t1 != 1:
                    raise ValueError(f"degree-0 T^1 piece {key.describe(X)} {avec} matches no configuration")
                t1_out.append(Degree0Entry(key, avec, p.dim_t1, tag))
            if p.dim_t2:
                if not _t2_configuration(X, key, avec):
                    raise ValueError(f"degree-0 T^2 piece {key.describe(X)} {avec} matches no configuration")
                t2_out.append(Degree0Entry(key, avec, p.dim_t2, "t2"))
    return t1_out, t2_out


def _compositions(support: Face, degree: int, n: int) -> list[tuple[int, ...]]:
    verts = members(support)
    out = []

    def rec(i: int, left: int, acc: list[int]):
        if i == len(verts) - 1:
            if left >= 1:
                out.append(acc + [left])
            return
        for x in range(1, left - (len(verts) - i - 1) + 1):
            rec(i + 1, left - x, acc + [x])

    if verts:
        rec(0, degree, [])
    vecs = []
    for parts in out:
        vec = [0] * n
        for v, x in zip(verts, parts):
            vec[v] = x
        vecs.append(tuple(vec))
    return vecs


def _valency(X: SimplicialComplex, v: int) -> int:
    return cached_link(bit(v), X).vertex_set.bit_count()


def _t1_configuration(X: SimplicialComplex, key: DegreeKey, avec: tuple[int, ...]) -> str | None:
    sa, sb = key.a.bit_count(), key.b.bit_count()
    lk = cached_link(key.a, X)
    if sa == 2 and sb == 2 and max(avec) == 1 and key.b == lk.vertex_set:
        return "i"
    if sa == 1:
        v = members(key.a)[0]
        val = _valency(X, v)
        if val == 4 and sb == 2 and key.b not in lk and max(avec) == 2:
            return "ii"
        if val == 3 and sb == 3 and max(avec) == 3:
            return "iii"
        if val == 3 and sb == 2 and max(avec) == 2:
            return "iv"
    return None


def _t2_configuration(X: SimplicialComplex, key: DegreeKey, avec: tuple[int, ...]) -> bool:
    """Vertex of valency >= 6, ``𝐚 = 2a`` and ``b = {u, w}`` without a common neighbour in ``link(a)``.

    The neighbour condition is read inside the link: ``u`` and ``w`` may
    still share neighbours elsewhere in ``X`` (a second apex, say).
    """
    if key.a.bit_count() != 1 or key.b.bit_count() != 2 or max(avec) != 2:
        return False
    v = members(key.a)[0]
    if _valency(X, v) < 6:
        return False
    lk = cached_link(key.a, X)
    if key.b & ~lk.vertex_set or key.b in lk:
        return False
    u, w = members(key.b)
    return not (cached_link(bit(u), lk).vertex_set & cached_link(bit(w), lk).vertex_set)


def only_common_neighbour(X: SimplicialComplex, key: DegreeKey) -> bool:
    """Whether the two vertices of ``b`` have ``a`` as their only common neighbour in ``X``."""
    u, w = members(key.b)
    return cached_link(bit(u), X).vertex_set & cached_link(bit(w), X).vertex_set == key.a
