"""Faces, simplicial complexes and the distinguished face subsets.

Faces are Python ints used as bitmasks over the ambient vertex indices
``0..n``; bit ``v`` set means vertex ``v`` belongs to the face.  Vertex
names live only on :class:`SimplicialComplex` and are used at the ingestion
and rendering boundary.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Face",
    "ResourceCapError",
    "SimplicialComplex",
    "USubset",
    "OrderComplex",
    "bit",
    "members",
    "face_from",
    "canonical_key",
    "sorted_faces",
    "subsets",
    "from_facets",
    "full_simplex",
    "link",
    "star_open",
    "star_closed",
    "join",
    "cone",
    "simplex_boundary",
    "n_sets",
    "u_sets",
    "m_sets",
    "phi_map",
    "order_complex",
    "enumeration_cap",
]

Face = int

DEFAULT_CORE_CAP = 20
DEFAULT_NONFACE_CAP = 14


class ResourceCapError(RuntimeError):
    """Raised when an operation would enumerate more than the configured cap."""


def enumeration_cap(default: int = DEFAULT_NONFACE_CAP) -> int:
    """Ambient-size cap for non-face enumeration; ``SRCOT_CAP`` overrides."""
    env = os.environ.get("SRCOT_CAP")
    if env:
        return int(env)
    return default


def bit(v: int) -> Face:
    return 1 << v


def members(f: Face) -> tuple[int, ...]:
    out = []
    v = 0
    while f:
        if f & 1:
            out.append(v)
        f >>= 1
        v += 1
    return tuple(out)


def face_from(vertices: Iterable[int]) -> Face:
    f = 0
    for v in vertices:
        f |= 1 << v
    return f


def canonical_key(f: Face) -> tuple[int, tuple[int, ...]]:
    """Sort key: cardinality first, then lexicographic on members."""
    m = members(f)
    return (len(m), m)


def sorted_faces(faces: Iterable[Face]) -> list[Face]:
    return sorted(faces, key=canonical_key)


def subsets(f: Face) -> Iterator[Face]:
    """All subsets of ``f`` (including ``0`` and ``f``)."""
    s = f
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & f


class SimplicialComplex:
    """A downward-closed family of faces over ``len(vertex_names)`` vertices.

    The void complex (no faces at all) is distinct from the irrelevant
    complex ``{∅}``.
    """

    def __init__(self, vertex_names: Sequence[str], faces: Iterable[Face], *, check: bool = True):
        self.vertex_names: tuple[str, ...] = tuple(str(v) for v in vertex_names)
        self.faces: frozenset[Face] = frozenset(faces)
        if check:
            self._validate()

    def _validate(self) -> None:
        full = (1 << len(self.vertex_names)) - 1
        for f in self.faces:
            if f < 0 or f & ~full:
                raise ValueError(f"face {members(f)} uses vertices outside the ambient set")
            g = f
            while g:
                low = g & -g
                if f & ~low not in self.faces:
                    raise ValueError(f"not downward closed at {self.label(f)}")
                g ^= low

    # -- basic queries ---------------------------------------------------
    @property
    def n_ambient(self) -> int:
        return len(self.vertex_names)

    @property
    def is_void(self) -> bool:
        return not self.faces

    def __contains__(self, f: Face) -> bool:
        return f in self.faces

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self) -> Iterator[Face]:
        return iter(self.sorted_faces)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.faces == other.faces and self.vertex_names == other.vertex_names

    def __hash__(self) -> int:
        return hash((self.vertex_names, self.faces))

    def __repr__(self) -> str:
        facets = ", ".join("{" + self.label(f) + "}" for f in self.facets)
        return f"SimplicialComplex([{facets}])"

    @cached_property
    def sorted_faces(self) -> tuple[Face, ...]:
        return tuple(sorted_faces(self.faces))

    @cached_property
    def facets(self) -> tuple[Face, ...]:
        out = []
        for f in self.sorted_faces:
            if not any((f | bit(v)) in self.faces for v in range(self.n_ambient) if not f & bit(v)):
                out.append(f)
        return tuple(out)

    @cached_property
    def vertex_set(self) -> Face:
        """Mask of the vertices ``v`` with ``{v}`` a face."""
        m = 0
        for v in range(self.n_ambient):
            if bit(v) in self.faces:
                m |= bit(v)
        return m

    @cached_property
    def dimension(self) -> int:
        if not self.faces:
            return -2
        return max(f.bit_count() for f in self.faces) - 1

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        """Face counts by dimension, starting at dimension -1 (the empty face)."""
        if not self.faces:
            return ()
        counts = [0] * (self.dimension + 2)
        for f in self.faces:
            counts[f.bit_count()] += 1
        return tuple(counts)

    @cached_property
    def indicator(self) -> bytearray:
        """Membership table indexed by face mask (ambient must be small)."""
        if self.n_ambient > 26:
            raise ResourceCapError("indicator table needs an ambient of at most 26 vertices")
        table = bytearray(1 << self.n_ambient)
        for f in self.faces:
            table[f] = 1
        return table

    @cached_property
    def minimal_nonfaces(self) -> tuple[Face, ...]:
        out = []
        for f in self.sorted_faces:
            for v in range(self.n_ambient):
                g = f | bit(v)
                if g == f or g in self.faces:
                    continue
                if all((g & ~bit(w)) in self.faces for w in members(g)):
                    out.append(g)
        return tuple(sorted_faces(set(out)))

    def nonfaces(self, cap: int | None = None) -> list[Face]:
        """All of ``Δ_n \\ X`` in canonical order (bounded by the enumeration cap)."""
        cap = enumeration_cap() if cap is None else cap
        if self.n_ambient > cap:
            raise ResourceCapError(
                f"enumerating non-faces needs 2^{self.n_ambient} subsets; cap is ambient size {cap}"
            )
        full = 1 << self.n_ambient
        return sorted_faces(p for p in range(full) if p not in self.faces)

    def label(self, f: Face) -> str:
        """Comma-separated vertex names; ``""`` for the empty face."""
        return ",".join(self.vertex_names[v] for v in members(f))

    def names(self, f: Face) -> list[str]:
        return [self.vertex_names[v] for v in members(f)]

    def face_of(self, labels: Iterable[str]) -> Face:
        index = {name: i for i, name in enumerate(self.vertex_names)}
        f = 0
        for name in labels:
            if name not in index:
                raise KeyError(f"unknown vertex {name!r}")
            f |= bit(index[name])
        return f

    def restrict(self, faces: Iterable[Face]) -> "SimplicialComplex":
        return SimplicialComplex(self.vertex_names, faces)


@dataclass(frozen=True)
class USubset:
    """A subset of a complex closed under unions that stay faces (property U)."""

    parent: SimplicialComplex
    elements: frozenset[Face]

    def __post_init__(self) -> None:
        if not self.elements <= self.parent.faces:
            raise ValueError("U-subset elements must be faces of the parent")

    @classmethod
    def of(cls, parent: SimplicialComplex, elements: Iterable[Face], check: bool = True) -> "USubset":
        y = cls(parent, frozenset(elements))
        if check and not y.has_property_u():
            raise ValueError("subset does not have property U")
        return y

    def has_property_u(self) -> bool:
        els = list(self.elements)
        faces = self.parent.faces
        for i, f in enumerate(els):
            for g in els[i + 1:]:
                u = f | g
                if u in faces and u not in self.elements:
                    return False
        return True

    @cached_property
    def ordered(self) -> tuple[Face, ...]:
        return tuple(sorted_faces(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Face]:
        return iter(self.ordered)

    def __contains__(self, f: Face) -> bool:
        return f in self.elements


# -- constructors ----------------------------------------------------------

def _closure(facets: Iterable[Face]) -> set[Face]:
    out: set[Face] = set()
    for f in facets:
        if f in out:
            continue
        out.update(subsets(f))
    return out


def from_facets(facet_list: Iterable[Iterable[str]], vertex_names: Sequence[str] | None = None) -> SimplicialComplex:
    """Downward closure of ``facet_list``.

    With ``vertex_names`` omitted the names are inferred and sorted.  Names
    listed but used by no facet become ghost vertices.  An empty facet list
    gives the void complex; a single empty facet gives ``{∅}``.
    """
    facet_list = [list(map(str, f)) for f in facet_list]
    for f in facet_list:
        if len(set(f)) != len(f):
            raise ValueError(f"duplicate vertex in facet {f}")
    if vertex_names is None:
        vertex_names = sorted({v for f in facet_list for v in f}, key=_name_key)
    vertex_names = [str(v) for v in vertex_names]
    if len(set(vertex_names)) != len(vertex_names):
        raise ValueError("duplicate vertex names")
    index = {name: i for i, name in enumerate(vertex_names)}
    masks = []
    for f in facet_list:
        try:
            masks.append(face_from(index[v] for v in f))
        except KeyError as exc:
            raise ValueError(f"facet {f} uses unknown vertex {exc.args[0]!r}") from None
    return SimplicialComplex(vertex_names, _closure(masks), check=False)


def _name_key(name: str):
    return (0, int(name), "") if name.lstrip("-").isdigit() else (1, 0, name)


def full_simplex(g: Face, vertex_names: Sequence[str]) -> SimplicialComplex:
    """The closed simplex ``2^g`` on the given ambient."""
    return SimplicialComplex(vertex_names, subsets(g), check=False)


def link(f: Face, X: SimplicialComplex) -> SimplicialComplex:
    """``{g ∈ X : g ∩ f = ∅, g ∪ f ∈ X}``; void when ``f ∉ X``."""
    if f not in X:
        return SimplicialComplex(X.vertex_names, (), check=False)
    return SimplicialComplex(X.vertex_names, (g for g in X.faces if not g & f and (g | f) in X), check=False)


def star_open(f: Face, X: SimplicialComplex) -> USubset:
    return USubset(X, frozenset(g for g in X.faces if g & f == f))


def star_closed(f: Face, X: SimplicialComplex) -> SimplicialComplex:
    st = SimplicialComplex(X.vertex_names, (g for g in X.faces if (g | f) in X), check=False)
    if f in X:
        assert st == join(full_simplex(f, X.vertex_names), link(f, X)), "closed star ≠ f̄ * link(f)"
    return st


def join(X: SimplicialComplex, Y: SimplicialComplex) -> SimplicialComplex:
    """Join ``{f ∨ g}``.

    Complexes on the same ambient must use disjoint vertex sets; complexes on
    different ambients must have disjoint name lists and are placed side by side.
    """
    if X.vertex_names == Y.vertex_names:
        vx = _used_vertices(X)
        vy = _used_vertices(Y)
        if vx & vy:
            raise ValueError("join needs disjoint vertex sets")
        return SimplicialComplex(X.vertex_names, {f | g for f in X.faces for g in Y.faces}, check=False)
    if set(X.vertex_names) & set(Y.vertex_names):
        raise ValueError("join needs disjoint vertex sets")
    shift = X.n_ambient
    names = X.vertex_names + Y.vertex_names
    return SimplicialComplex(names, {f | (g << shift) for f in X.faces for g in Y.faces}, check=False)


def _used_vertices(X: SimplicialComplex) -> Face:
    m = 0
    for f in X.faces:
        m |= f
    return m


def cone(X: SimplicialComplex, apex: str = "c") -> SimplicialComplex:
    name = apex
    while name in X.vertex_names:
        name += "'"
    c = bit(X.n_ambient)
    faces = set(X.faces) | {f | c for f in X.faces}
    return SimplicialComplex(X.vertex_names + (name,), faces, check=False)


def simplex_boundary(g: Face, vertex_names: Sequence[str]) -> SimplicialComplex:
    """``∂g = 2^g \\ {g}``."""
    return SimplicialComplex(vertex_names, (s for s in subsets(g) if s != g), check=False)


# -- distinguished subsets ------------------------------------------------

def n_sets(X: SimplicialComplex, a: Face, b: Face) -> tuple[USubset, USubset]:
    """The pair ``(N_{a-b}(X), Ñ_{a-b}(X))``."""
    if a & b:
        raise ValueError("a and b must be disjoint")
    faces = X.faces
    n = [f for f in faces if f & a == a and not f & b and (f | b) not in faces]
    bv = members(b)
    if len(bv) >= 2:
        nt = [f for f in n if any((f | (b & ~bit(v))) not in faces for v in bv)]
    else:
        nt = []
    return USubset(X, frozenset(n)), USubset(X, frozenset(nt))


def u_sets(X: SimplicialComplex, b: Face, *, check: bool = True) -> tuple[USubset, USubset]:
    """The pair ``(U_b(X), Ũ_b(X))`` of open sets."""
    if not b:
        raise ValueError("b must be nonempty")
    faces = X.faces
    bv = members(b)
    u = frozenset(f for f in faces if (f | b) not in faces)
    ut = frozenset(f for f in faces if any(((f | b) & ~bit(v)) not in faces for v in bv))
    if check and all((b & ~bit(v)) in faces for v in bv):
        _check_u_complements(X, b, u, ut)
    return USubset(X, u), USubset(X, ut)


def _check_u_complements(X: SimplicialComplex, b: Face, u: frozenset, ut: frozenset) -> None:
    names = X.vertex_names
    rest_u = X.faces - u
    b_face = b in X
    st_b = star_closed(b, X).faces if b_face else frozenset()
    assert rest_u == st_b, "X \\ U_b is not the closed star of b"
    lb = None
    for bp in subsets(b):
        if bp == b:
            continue
        lk = link(bp, X).faces
        lb = lk if lb is None else lb & lk
    bd = simplex_boundary(b, names).faces
    expected = {f | g for f in bd for g in lb}
    if b_face:
        expected |= st_b
    assert X.faces - ut == expected, "X \\ Ũ_b does not match ∂b * L_b (∪ closed star)"


def m_sets(X: SimplicialComplex, a: Face, b: Face, cap: int | None = None
           ) -> tuple[list[Face], list[tuple[Face, Face]]]:
    """``M_{a-b}`` (non-faces) and the ordered pairs ``M^{(2)}_{a-b}``."""
    if a & b:
        raise ValueError("a and b must be disjoint")
    faces = X.faces
    m = [p for p in X.nonfaces(cap) if ((p | a) & ~b) in faces]
    m2 = [(p, q) for p in m for q in m if ((p | q | a) & ~b) in faces]
    return m, m2


def phi_map(p: Face, a: Face, b: Face) -> Face:
    return (p | a) & ~b


# -- order complexes --------------------------------------------------------

class OrderComplex:
    """Flags ``f0 ⊂ f1 ⊂ ... ⊂ fk`` of elements of a face subset.

    Vertices are indices into :attr:`elements` (canonical face order), so
    every chain listed in increasing index order is increasing under
    inclusion.
    """

    def __init__(self, elements: Iterable[Face]):
        self.elements: tuple[Face, ...] = tuple(sorted_faces(set(elements)))
        self.index = {f: i for i, f in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def _up(self) -> list[list[int]]:
        els = self.elements
        up = []
        for i, f in enumerate(els):
            up.append([j for j in range(i + 1, len(els)) if els[j] != f and els[j] & f == f])
        return up

    def chains(self, length: int) -> list[tuple[int, ...]]:
        """All flags with ``length`` elements, lexicographically sorted."""
        if length <= 0:
            return []
        out: list[tuple[int, ...]] = [(i,) for i in range(len(self.elements))]
        up = self._up
        for _ in range(length - 1):
            out = [c + (j,) for c in out for j in up[c[-1]]]
        return sorted(out)

    def simplices(self, dim: int) -> list[tuple[int, ...]]:
        return self.chains(dim + 1)

    def is_cone_on_empty(self) -> bool:
        return bool(self.elements) and self.elements[0] == 0

    def as_complex(self, X: SimplicialComplex | None = None) -> SimplicialComplex:
        """The order complex as a :class:`SimplicialComplex` (vertices = elements)."""
        if X is None:
            names = [",".join(map(str, members(f))) or "∅" for f in self.elements]
        else:
            names = [X.label(f) or "∅" for f in self.elements]
        faces = {0}
        k = 1
        while True:
            ch = self.chains(k)
            if not ch:
                break
            faces.update(face_from(c) for c in ch)
            k += 1
        if not self.elements:
            faces = set()
        return SimplicialComplex(names, faces, check=False)


def order_complex(Y: USubset | Iterable[Face]) -> OrderComplex:
    if isinstance(Y, USubset):
        return OrderComplex(Y.elements)
    return OrderComplex(Y)


def all_k_subsets(f: Face, k: int) -> list[Face]:
    return [face_from(c) for c in combinations(members(f), k)]
