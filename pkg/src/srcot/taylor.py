"""Brute-force route through the Taylor resolution of ``I_X``.

Generators ``e_p`` run over *all* non-faces ``p``.  A homomorphism of degree
``c = 𝐚 - 𝐛`` sends ``e_p`` to ``μ(p) x^{p+c}``; it is only nonzero when
``p + c`` is a nonnegative vector whose support is a face.  Relations are
handled the same way, so the linear systems below are stated for arbitrary
exponent vectors ``𝐚, 𝐛`` and specialise to the squarefree description when
``𝐛`` is a 0/1 vector.

Nothing here touches the sets ``N`` or ``Ñ``; the module is meant as an
independent check of :mod:`srcot.cotangent`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .complex_core import (
    Face,
    ResourceCapError,
    SimplicialComplex,
    bit,
    enumeration_cap,
    members,
    phi_map,
)
from .linalg import ExactMatrix, nullspace

__all__ = [
    "TaylorData",
    "MLevelSolution",
    "taylor",
    "hom_via_m",
    "t1_via_m",
    "t2_via_m",
    "solve_m_level",
    "piece_via_m",
    "perturbed_equations",
    "render_monomial",
    "render_equation",
]

Vec = tuple[int, ...]


# -- the resolution ---------------------------------------------------------------

@dataclass(frozen=True)
class TaylorData:
    """Generators ``e_p`` (non-faces), relations ``R_{p,q}`` and ``R_{p,q,r}``.

    A relation is stored as ``{generator: (sign, monomial support)}``; its
    multidegree is the union of the indices.
    """

    X: SimplicialComplex
    generators: tuple[Face, ...]

    def relation(self, p: Face, q: Face) -> dict[Face, tuple[int, Face]]:
        """``R_{p,q} = x^{q∖p} e_p - x^{p∖q} e_q``."""
        return {p: (1, q & ~p), q: (-1, p & ~q)}

    def second_syzygy(self, p: Face, q: Face, r: Face) -> dict[tuple[Face, Face], tuple[int, Face]]:
        """``R_{p,q,r} = x^{r∖(p∪q)} e_{p,q} - x^{q∖(p∪r)} e_{p,r} + x^{p∖(q∪r)} e_{q,r}``."""
        return {(p, q): (1, r & ~(p | q)), (p, r): (-1, q & ~(p | r)), (q, r): (1, p & ~(q | r))}

    @staticmethod
    def degree(*idx: Face) -> Face:
        out = 0
        for f in idx:
            out |= f
        return out

    def spot_check(self, limit: int = 60) -> None:
        """``j(R_{p,q}) = 0`` for ``j(e_p) = x^p`` and ``d(R_{p,q,r}) = 0``."""
        gens = self.generators[:limit]
        for p, q in combinations(gens, 2):
            terms = _expand_relation(self.relation(p, q), lambda g: _mono(g))
            assert not terms, "j(R_{p,q}) != 0"
        for p, q, r in list(combinations(gens, 3))[:limit]:
            acc: dict[Vec, int] = {}
            for (u, v), (s, m) in self.second_syzygy(p, q, r).items():
                for g, (s2, m2) in self.relation(u, v).items():
                    key = (g,) + _mono(m | m2)
                    # x^m x^{m2}: all supports are disjoint from each other here
                    assert not (m & m2)
                    acc[key] = acc.get(key, 0) + s * s2
            assert not any(acc.values()), "d(R_{p,q,r}) != 0"


def _mono(f: Face) -> Vec:
    return tuple(members(f))


def _expand_relation(rel: Mapping[Face, tuple[int, Face]], image) -> dict:
    acc: dict = {}
    for g, (s, m) in rel.items():
        # x^m * x^g as a multiset of exponents
        exps: dict[int, int] = {}
        for v in members(m):
            exps[v] = exps.get(v, 0) + 1
        for v in image(g):
            exps[v] = exps.get(v, 0) + 1
        key = tuple(sorted(exps.items()))
        acc[key] = acc.get(key, 0) + s
    return {k: v for k, v in acc.items() if v}


def taylor(X: SimplicialComplex, cap: int | None = None) -> TaylorData:
    """All non-faces of ``X`` as Taylor generators (cached per complex)."""
    cap = enumeration_cap() if cap is None else cap
    if X.n_ambient > cap:
        raise ResourceCapError(f"{X.n_ambient} vertices exceed the non-face enumeration cap {cap}")
    return _taylor(X)


@lru_cache(maxsize=64)
def _taylor(X: SimplicialComplex) -> TaylorData:
    data = TaylorData(X, tuple(X.nonfaces(X.n_ambient)))
    data.spot_check()
    return data


taylor.cache_clear = _taylor.cache_clear  # type: ignore[attr-defined]


# -- M-level linear systems ----------------------------------------------------------

def _as_vec(x: Face | Sequence[int], n: int) -> Vec:
    if isinstance(x, int):
        return tuple(1 if x >> v & 1 else 0 for v in range(n))
    vec = tuple(x)
    if len(vec) != n:
        raise ValueError(f"exponent vector must have length {n}")
    return vec


class _FaceSet:
    __slots__ = ("faces",)

    def __init__(self, faces):
        self.faces = faces

    def __getitem__(self, f: Face) -> bool:
        return f in self.faces


class _Degree:
    """Helper evaluating ``x^{s + 𝐚 - 𝐛}`` for a squarefree ``s``."""

    def __init__(self, X: SimplicialComplex, avec: Vec, bvec: Vec):
        self.X = X
        self.c = tuple(x - y for x, y in zip(avec, bvec))
        self.a_support = sum(bit(v) for v, x in enumerate(avec) if x)
        self.b_support = sum(bit(v) for v, x in enumerate(bvec) if x)
        self.squarefree_b = all(x <= 1 for x in bvec)
        self.table = X.indicator if X.n_ambient <= 22 else _FaceSet(X.faces)

    def shifted_support(self, s: Face, extra: Face = 0) -> Face | None:
        """Support of ``s + extra + c`` (``extra`` counted a second time) or ``None`` if negative."""
        if self.squarefree_b:
            b = self.b_support
            if b & ~(s | extra):
                return None
            return (s | extra | self.a_support) & ~(b & ~(s & extra))
        out = 0
        for v, cv in enumerate(self.c):
            e = (s >> v & 1) + (extra >> v & 1) + cv
            if e < 0:
                return None
            if e:
                out |= bit(v)
        return out

    def alive(self, s: Face, extra: Face = 0) -> bool:
        """``x^{s + extra + c}`` is a nonzero monomial of ``A_X``."""
        sup = self.shifted_support(s, extra)
        return sup is not None and self.table[sup]


@dataclass
class MLevelSolution:
    """Solution spaces of the M-level systems in one multidegree."""

    avec: Vec
    bvec: Vec
    M: list[Face]
    hom: list[dict[Face, Fraction]]
    trivial: int
    t2_dim: int
    pairs: list[tuple[Face, Face]]

    @property
    def dim_hom(self) -> int:
        return len(self.hom)

    @property
    def dim_t1(self) -> int:
        return self.dim_hom - self.trivial

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.dim_hom, self.dim_t1, self.t2_dim)


def _hom_system(gens: Sequence[Face], deg: _Degree):
    unknowns = [p for p in gens if deg.alive(p)]
    idx = {p: i for i, p in enumerate(unknowns)}
    rows = []
    for p, q in combinations(gens, 2):
        if (p in idx or q in idx) and deg.alive(p | q):
            r = {}
            if p in idx:
                r[idx[p]] = 1
            if q in idx:
                r[idx[q]] = -1
            rows.append(r)
    return unknowns, rows


def hom_via_m(X: SimplicialComplex, a: Face | Sequence[int], b: Face | Sequence[int],
              cap: int | None = None) -> tuple[int, list[dict[Face, Fraction]]]:
    """Dimension and a basis of ``Hom(I_X, A_X)_{𝐚-𝐛}`` as functions ``μ`` on non-faces."""
    n = X.n_ambient
    deg = _Degree(X, _as_vec(a, n), _as_vec(b, n))
    gens = taylor(X, cap).generators
    unknowns, rows = _hom_system(gens, deg)
    basis = nullspace(rows, len(unknowns))
    out = [{unknowns[j]: x for j, x in sorted(v.items())} for v in basis]
    return len(out), out


def t1_via_m(X: SimplicialComplex, a, b, cap: int | None = None) -> int:
    return solve_m_level(X, a, b, cap, with_t2=False).dim_t1


def t2_via_m(X: SimplicialComplex, a, b, cap: int | None = None) -> int:
    return solve_m_level(X, a, b, cap).t2_dim


def solve_m_level(X: SimplicialComplex, a: Face | Sequence[int], b: Face | Sequence[int],
                  cap: int | None = None, with_t2: bool = True) -> MLevelSolution:
    n = X.n_ambient
    avec, bvec = _as_vec(a, n), _as_vec(b, n)
    if any(x and y for x, y in zip(avec, bvec)):
        raise ValueError("a and b must have disjoint supports")
    deg = _Degree(X, avec, bvec)
    gens = taylor(X, cap).generators
    unknowns, rows = _hom_system(gens, deg)
    basis = nullspace(rows, len(unknowns))
    hom = [{unknowns[j]: x for j, x in sorted(v.items())} for v in basis]

    # derivations x^𝐚 ∂/∂x_v exist in degree 𝐚 - e_v and send e_p to p_v x^{p+c}
    trivial = 0
    if sum(bvec) == 1 and unknowns:
        trivial = 1
        assert all(sum(r.values()) == 0 for r in rows if len(r) == 2), "constant is not a homomorphism"

    t2, pairs = _t2_dim(gens, deg, unknowns) if with_t2 else (-1, [])
    return MLevelSolution(avec, bvec, unknowns, hom, trivial, t2, pairs)


def _t2_dim(gens: Sequence[Face], deg: _Degree,
            hom_unknowns: Sequence[Face]) -> tuple[int, list[tuple[Face, Face]]]:
    """``dim`` of relation-homomorphisms modulo Koszul ones and the image of ``Hom(F, A)``."""
    # Only generators lying in some live pair can matter.
    cand = [p for p in gens if _below_live(p, deg)]
    variables: list[tuple[Face, Face]] = []
    for p, q in combinations(cand, 2):
        if not deg.alive(p | q):
            continue
        # Koszul relations x^p e_q - x^q e_p = ± x^{p∩q} R_{p,q} must map to zero
        if deg.alive(p | q, p & q):
            continue
        variables.append((p, q))
    if not variables:
        return 0, variables
    pos = {p: i for i, p in enumerate(cand)}
    # every triple carrying a condition contains at least one variable pair
    rows = _cocycle_rows(cand, variables, pos, deg)
    cocycle_rank = ExactMatrix(len(rows), len(variables), rows, clean=True).rank()
    dim_z = len(variables) - cocycle_rank
    hidx = {p: i for i, p in enumerate(hom_unknowns)}
    cob_rows: list[dict[int, int]] = [{} for _ in variables]
    for j, (p, q) in enumerate(variables):
        if p in hidx:
            cob_rows[j][hidx[p]] = 1
        if q in hidx:
            cob_rows[j][hidx[q]] = cob_rows[j].get(hidx[q], 0) - 1
    cob = ExactMatrix(len(variables), len(hom_unknowns), cob_rows)
    return dim_z - cob.rank(), variables


def _cocycle_rows(cand: Sequence[Face], variables: Sequence[tuple[Face, Face]],
                  pos: dict[Face, int], deg: _Degree) -> list[dict[int, int]]:
    """One row ``μ(p,q) - μ(p,r) + μ(q,r)`` per live triple ``p < q < r``.

    Only triples with ``x^{p∪q∪r+c}`` alive and at least one variable pair
    inside give conditions; non-variable pairs contribute nothing.
    """
    n = len(cand)
    if deg.squarefree_b and isinstance(deg.table, (bytes, bytearray)):
        table = np.frombuffer(deg.table, dtype=np.uint8)
        arr = np.asarray(cand, dtype=np.int64)
        keep = ~np.int64(deg.b_support)
        a = np.int64(deg.a_support)
        vid = np.full((n, n), -1, dtype=np.int64)
        codes = []
        for col, (u, w) in enumerate(variables):
            i, j = pos[u], pos[w]
            vid[i, j] = vid[j, i] = col
            hit = np.nonzero(table[((arr | (u | w)) | a) & keep])[0]
            hit = hit[(hit != i) & (hit != j)]
            if hit.size:
                trip = np.sort(np.stack([np.full(hit.size, i), np.full(hit.size, j), hit]), axis=0)
                codes.append((trip[0] * n + trip[1]) * n + trip[2])
        if not codes:
            return []
        uniq = np.unique(np.concatenate(codes))
        I, J, K = uniq // (n * n), uniq // n % n, uniq % n
        rows = []
        for c1, c2, c3 in zip(vid[I, J].tolist(), vid[I, K].tolist(), vid[J, K].tolist()):
            row = {}
            if c1 >= 0:
                row[c1] = 1
            if c2 >= 0:
                row[c2] = -1
            if c3 >= 0:
                row[c3] = 1
            rows.append(row)
        return rows
    vidx = {pq: i for i, pq in enumerate(variables)}
    triples = set()
    for u, w in variables:
        for r in cand:
            if r != u and r != w and deg.alive(u | w | r):
                triples.add(tuple(sorted((pos[u], pos[w], pos[r]))))
    rows = []
    for i, j, k in sorted(triples):
        p, q, r = cand[i], cand[j], cand[k]
        row: dict[int, int] = {}
        for pair, sgn in (((p, q), 1), ((p, r), -1), ((q, r), 1)):
            col = vidx.get(pair)
            if col is not None:
                row[col] = sgn
        rows.append(row)
    return rows


def _below_live(p: Face, deg: _Degree) -> bool:
    """``p`` lies in some pair ``(p, q)`` with ``x^{p∪q+c}`` alive."""
    sup = deg.shifted_support(p | deg.b_support)
    if sup is None:
        return False
    # enlarging p only enlarges the support, so the smallest candidate is p ∪ b
    return sup in deg.X.faces


def piece_via_m(X: SimplicialComplex, key, cap: int | None = None) -> tuple[int, int, int]:
    """``(dim Hom, dim T^1, dim T^2)`` at a :class:`~srcot.cotangent.DegreeKey`."""
    return solve_m_level(X, key.a, key.b, cap).dims


# -- perturbed equations ------------------------------------------------------------------

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
_SUP = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")
_PRIMES = {"x2": "x′", "y2": "y′", "z2": "z′"}


def _var(name: str, ascii_only: bool) -> str:
    if name.isdigit():
        return f"x{name}" if ascii_only else "x" + name.translate(_SUB)
    if not ascii_only:
        return _PRIMES.get(name, name)
    return name


def render_monomial(X: SimplicialComplex, exps: Sequence[int], ascii_only: bool = False) -> str:
    """``x^𝐞`` with vertex names; empty string for the constant monomial."""
    parts = []
    for v, e in enumerate(exps):
        if not e:
            continue
        var = _var(X.vertex_names[v], ascii_only)
        if e == 1:
            parts.append(var)
        elif ascii_only:
            parts.append(f"{var}^{e}")
        else:
            parts.append(var + str(e).translate(_SUP))
    sep = " " if ascii_only else ""
    if not ascii_only and any(len(_var(X.vertex_names[v], False)) > 1 and not X.vertex_names[v].isdigit()
                              and X.vertex_names[v] not in _PRIMES for v, e in enumerate(exps) if e):
        sep = " "
    return sep.join(parts)


def render_equation(X: SimplicialComplex, p: Face, coeff: Fraction, shifted: Sequence[int],
                    ascii_only: bool = False) -> str:
    lhs = render_monomial(X, _as_vec(p, X.n_ambient), ascii_only)
    rhs = render_monomial(X, shifted, ascii_only)
    eps = "eps" if ascii_only else "ε"
    minus = "-" if ascii_only else "−"
    sign = minus
    if coeff < 0:
        sign, coeff = "+", -coeff
    c = "" if coeff == 1 else f"{coeff} "
    tail = f"{c}{eps}" + (f" {rhs}" if rhs else "")
    return f"{lhs} {sign} {tail}"


def perturbed_equations(X: SimplicialComplex, a: Face | Sequence[int], b: Face,
                        lam: Mapping[Face, Fraction | int], ascii_only: bool = False) -> list[str]:
    """First-order equations ``x^p - ε μ(p) x^{p+𝐚-𝐛}`` for minimal non-faces ``p``.

    ``lam`` is a function on faces (the ``N``-level cocycle); ``μ = λ∘Φ`` is
    checked against the M-level system before anything is rendered.
    """
    n = X.n_ambient
    avec = _as_vec(a, n)
    bvec = _as_vec(b, n)
    if any(x > 1 for x in bvec):
        raise ValueError("b must be squarefree")
    deg = _Degree(X, avec, bvec)
    a_sup = deg.a_support
    gens = taylor(X).generators
    mu = {}
    for p in gens:
        if deg.alive(p):
            mu[p] = Fraction(lam.get(phi_map(p, a_sup, b), 0))
    unknowns, rows = _hom_system(gens, deg)
    idx = {p: i for i, p in enumerate(unknowns)}
    for r in rows:
        if sum(x * mu[unknowns[j]] for j, x in r.items()):
            raise ValueError("λ∘Φ violates the homomorphism conditions")
    assert set(idx) == set(mu)
    out = []
    for p in X.minimal_nonfaces:
        val = mu.get(p, 0)
        if not val:
            continue
        shifted = tuple((p >> v & 1) + avec[v] - bvec[v] for v in range(n))
        out.append(render_equation(X, p, val, shifted, ascii_only))
    return out
