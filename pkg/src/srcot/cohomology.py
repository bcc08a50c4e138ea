"""Cochain complexes over Q and their cohomology dimensions.

Three families of complexes are built here:

* ``K•(Y)`` for a U-subset ``Y``: alternating functions on tuples of
  ``Y``-elements whose union lies in ``Y``;
* the kernel of the restriction ``K•(N) -> K•(Ñ)``;
* ordinary (relative) simplicial cochains, used for order complexes.

Degree-``k`` basis elements are index tuples sorted increasingly, and an
alternating cochain is stored by its values on them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import kernels
from .complex_core import (
    Face,
    OrderComplex,
    SimplicialComplex,
    USubset,
    members,
    order_complex,
)
from .linalg import ExactMatrix, Quotient

__all__ = [
    "CochainComplexQ",
    "CohomologyDims",
    "k_complex",
    "kernel_complex",
    "simplicial_cochain_complex",
    "relative_order_cohomology",
    "cohomology",
]


@dataclass
class CochainComplexQ:
    """Cochain spaces in degrees ``0..k_max`` with differentials ``d^k: C^k -> C^{k+1}``.

    ``labels[k]`` lists the basis of degree ``k``; ``d[k]`` has
    ``len(labels[k+1])`` rows and ``len(labels[k])`` columns.
    """

    labels: list[list[tuple]]
    d: list[ExactMatrix]
    augmentable: bool = True
    elements: tuple = ()
    _ranks: dict[int, int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if len(self.d) != len(self.labels) - 1:
            raise ValueError("need one differential per consecutive pair of degrees")
        for k, m in enumerate(self.d):
            if (m.nrows, m.ncols) != (len(self.labels[k + 1]), len(self.labels[k])):
                raise ValueError(f"d^{k} has the wrong shape")
        for k in range(len(self.d) - 1):
            assert (self.d[k + 1] @ self.d[k]).is_zero(), f"d^{k + 1} d^{k} != 0"

    @property
    def k_max(self) -> int:
        return len(self.labels) - 1

    def dims(self) -> list[int]:
        return [len(b) for b in self.labels]

    def rank(self, k: int) -> int:
        if k < 0 or k >= len(self.d):
            return 0
        if k not in self._ranks:
            self._ranks[k] = self.d[k].rank()
        return self._ranks[k]

    @cached_property
    def index(self) -> list[dict[tuple, int]]:
        return [{lab: i for i, lab in enumerate(b)} for b in self.labels]

    def cocycle_quotient(self, k: int) -> Quotient:
        """``ker d^k / im d^{k-1}`` with explicit representatives."""
        if k >= len(self.d):
            raise ValueError(f"d^{k} was not built; raise k_max")
        z = self.d[k].nullspace()
        if k == 0:
            bnd: list = []
        else:
            bnd = [dict(col) for col in self.d[k - 1].transpose().rows]
        return Quotient(z, bnd)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.dims()))


@dataclass(frozen=True)
class CohomologyDims:
    h: dict[int, int]
    reduced: bool = False

    def __getitem__(self, k: int) -> int:
        return self.h.get(k, 0)

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(self.h[k] for k in sorted(self.h))


def cohomology(C: CochainComplexQ, reduced: bool = False) -> CohomologyDims:
    """Dimensions ``h^k`` for ``k < k_max`` via exact ranks.

    With ``reduced`` set, an augmentable complex with nonzero ``C^0`` loses one
    dimension in degree 0; relative complexes are unaffected.
    """
    dims = C.dims()
    h = {}
    for k in range(C.k_max):
        h[k] = dims[k] - C.rank(k) - C.rank(k - 1)
        assert h[k] >= 0
    if reduced and C.augmentable and dims and dims[0] > 0 and C.k_max > 0:
        h[0] -= 1
    return CohomologyDims(h, reduced)


# -- builders ---------------------------------------------------------------

def _membership(X: SimplicialComplex):
    if X.n_ambient <= 22:
        return X.indicator
    return _SetTable(X.faces)


class _SetTable:
    __slots__ = ("faces",)

    def __init__(self, faces: frozenset):
        self.faces = faces

    def __getitem__(self, f: int) -> bool:
        return f in self.faces


def _coboundary(lower: Sequence[tuple], upper: Sequence[tuple]) -> ExactMatrix:
    """Matrix of ``(dλ)(s) = Σ_v (-1)^v λ(s minus its v-th entry)`` on sorted tuples.

    Faces of ``s`` missing from ``lower`` are treated as zero coordinates.
    """
    idx = {lab: i for i, lab in enumerate(lower)}
    rows = []
    for s in upper:
        r: dict[int, int] = {}
        for v in range(len(s)):
            t = s[:v] + s[v + 1:]
            j = idx.get(t)
            if j is not None:
                r[j] = r.get(j, 0) + (-1 if v % 2 else 1)
        rows.append(r)
    return ExactMatrix(len(upper), len(lower), rows)


def _union_tuples(elements: Sequence[Face], size: int, table) -> list[tuple[int, ...]]:
    if isinstance(table, (bytes, bytearray)):
        return kernels.union_tuples(elements, size, table)
    from . import _pure

    return _pure.union_tuples(elements, size, table)


def _union_complex(Y: USubset, excluded: frozenset[Face], k_max: int) -> CochainComplexQ:
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    els = Y.ordered
    table = _membership(Y.parent)
    skip = {i for i, f in enumerate(els) if f in excluded}
    labels = []
    for k in range(k_max + 1):
        tup = _union_tuples(els, k + 1, table) if els else []
        if skip:
            tup = [t for t in tup if not all(i in skip for i in t)]
        labels.append(tup)
    d = [_coboundary(labels[k], labels[k + 1]) for k in range(k_max)]
    return CochainComplexQ(labels, d, augmentable=not excluded, elements=els)


def k_complex(Y: USubset, k_max: int = 2) -> CochainComplexQ:
    """``K•(Y)`` truncated at degree ``k_max``."""
    return _union_complex(Y, frozenset(), k_max)


def kernel_complex(N: USubset, Nt: USubset, k_max: int = 2) -> CochainComplexQ:
    """``ker(K•(N) -> K•(Ñ))``: cochains vanishing on all tuples inside ``Ñ``."""
    if not Nt.elements <= N.elements:
        raise ValueError("Ñ must be contained in N")
    return _union_complex(N, Nt.elements, k_max)


def simplicial_cochain_complex(X: SimplicialComplex | OrderComplex, relative_to=None,
                               k_max: int = 2) -> CochainComplexQ:
    """Ordered-simplex cochains of ``X`` (relative to a subcomplex when given).

    ``relative_to`` is a subcomplex of a :class:`SimplicialComplex`, or for an
    :class:`OrderComplex` an order complex / set of elements spanning a full
    subcomplex.
    """
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    if isinstance(X, OrderComplex):
        els = X.elements
        if relative_to is None:
            sub: set[int] = set()
        else:
            sub_faces = relative_to.elements if isinstance(relative_to, (OrderComplex, USubset)) else set(relative_to)
            sub = {X.index[f] for f in sub_faces}
            if len(sub) != len(set(sub_faces)):
                raise ValueError("relative subset is not contained in the order complex")
        labels = []
        for k in range(k_max + 1):
            if k + 1 <= 3:
                ch = kernels.chain_tuples(list(els), k + 1) if els else []
            else:
                ch = X.chains(k + 1)
            if sub:
                ch = [c for c in ch if not all(i in sub for i in c)]
            labels.append(sorted(ch))
        d = [_coboundary(labels[k], labels[k + 1]) for k in range(k_max)]
        return CochainComplexQ(labels, d, augmentable=not sub, elements=els)
    A = relative_to
    if A is not None and not A.faces <= X.faces:
        raise ValueError("relative_to must be a subcomplex")
    skip = A.faces if A is not None else frozenset()
    labels = []
    for k in range(k_max + 1):
        labels.append(sorted(members(f) for f in X.faces if f.bit_count() == k + 1 and f not in skip))
    d = [_coboundary(labels[k], labels[k + 1]) for k in range(k_max)]
    return CochainComplexQ(labels, d, augmentable=not skip, elements=tuple(range(X.n_ambient)))


def relative_order_cohomology(Y: Iterable[Face] | USubset, Z: Iterable[Face] | USubset = (),
                              reduced: bool = False, k_max: int = 2) -> CohomologyDims:
    """``H^k(Y', Z')`` for face subsets ``Z ⊆ Y`` via their order complexes."""
    oy = order_complex(Y)
    zs = Z.elements if isinstance(Z, USubset) else frozenset(Z)
    C = simplicial_cochain_complex(oy, relative_to=zs, k_max=k_max)
    return cohomology(C, reduced=reduced)
