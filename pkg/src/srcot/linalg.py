"""Exact linear algebra over the rationals.

Ranks go through :mod:`srcot.kernels` (integer fraction-free elimination);
nullspaces, spans and quotient coordinates use :class:`fractions.Fraction`
and are only needed when explicit representatives are requested.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

from . import kernels

Vector = dict[int, Fraction]


class ExactMatrix:
    """Sparse ``rows x cols`` matrix with exact rational entries."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[Mapping[int, int | Fraction]] | None = None,
                 *, clean: bool = False):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        # ``clean`` promises dict rows without stored zeros, skipping the copy
        self.rows = list(rows) if clean else [{c: v for c, v in r.items() if v} for r in rows]

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int | Fraction]]) -> "ExactMatrix":
        ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, [{j: x for j, x in enumerate(row) if x} for row in data])

    def to_dense(self) -> list[list[int | Fraction]]:
        return [[r.get(j, 0) for j in range(self.ncols)] for r in self.rows]

    def __repr__(self) -> str:
        return f"ExactMatrix({self.nrows}x{self.ncols}, nnz={sum(map(len, self.rows))})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.nrows, self.ncols, self.rows) == (other.nrows, other.ncols, other.rows)

    def transpose(self) -> "ExactMatrix":
        cols: list[dict[int, int | Fraction]] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return ExactMatrix(self.ncols, self.nrows, cols)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for r in self.rows:
            acc: dict[int, int | Fraction] = {}
            for k, v in r.items():
                for j, w in other.rows[k].items():
                    acc[j] = acc.get(j, 0) + v * w
            out.append(acc)
        return ExactMatrix(self.nrows, other.ncols, out)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def apply(self, x: Mapping[int, int | Fraction]) -> dict[int, int | Fraction]:
        """Matrix times a sparse column vector."""
        out = {}
        for i, r in enumerate(self.rows):
            s = sum(v * x.get(j, 0) for j, v in r.items())
            if s:
                out[i] = s
        return out

    def integer_rows(self) -> list[dict[int, int]]:
        out = []
        for r in self.rows:
            if all(type(v) is int for v in r.values()):
                out.append(r)
                continue
            dens = [v.denominator for v in r.values() if isinstance(v, Fraction)]
            m = lcm(*dens) if dens else 1
            out.append({c: int(v * m) for c, v in r.items()})
        return out

    def rank(self) -> int:
        if self.nrows == 0 or self.ncols == 0:
            return 0
        if self.nrows > PEEL_THRESHOLD:
            return peeled_rank(self.rows, self.ncols)
        return kernels.rank_sparse(self.integer_rows(), self.ncols)

    def rank_by_columns(self) -> int:
        """Rank computed from the transpose (column echelon form)."""
        return self.transpose().rank()

    def nullspace(self) -> list[Vector]:
        return nullspace(self.rows, self.ncols)


PEEL_THRESHOLD = 2000


class _WeightedUnion:
    """Columns expressed as ``x_c = factor * x_root`` or as forced zeros."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.factor: list[int | Fraction] = [1] * n
        self.zero = [False] * n

    def find(self, c: int) -> tuple[int, int | Fraction]:
        path = []
        while self.parent[c] != c:
            path.append(c)
            c = self.parent[c]
        root = c
        # compress: factor relative to the root, accumulated from the top
        acc: int | Fraction = 1
        for node in reversed(path):
            acc = acc * self.factor[node]
            self.factor[node] = acc
            self.parent[node] = root
        if path:
            return root, self.factor[path[0]]
        return root, 1

    def express(self, row: Mapping[int, int | Fraction]) -> dict[int, int | Fraction]:
        out: dict[int, int | Fraction] = {}
        for c, v in row.items():
            if not v:
                continue
            r, f = self.find(c)
            if self.zero[r]:
                continue
            x = out.get(r, 0) + f * v
            if x:
                out[r] = x
            else:
                out.pop(r, None)
        return out


def _ratio(x: int | Fraction, y: int | Fraction) -> int | Fraction:
    if type(x) is int and type(y) is int and x % y == 0:
        return x // y
    return Fraction(x) / y


def peeled_rank(rows: Sequence[Mapping[int, int | Fraction]], ncols: int) -> int:
    """Exact rank, pivoting first on rows with one or two live entries.

    A one-entry row forces its column to zero and a two-entry row identifies
    two columns up to a factor; both are ordinary elimination steps, so the
    rank is the number of such steps plus the rank of what is left.
    """
    uf = _WeightedUnion(ncols)
    rank = 0
    pending = list(rows)
    while True:
        rest = []
        progress = False
        for row in pending:
            r = uf.express(row)
            if not r:
                continue
            if len(r) == 1:
                (c,) = r
                uf.zero[c] = True
                rank += 1
                progress = True
            elif len(r) == 2:
                (c1, v1), (c2, v2) = r.items()
                # v1 x_c1 + v2 x_c2 = 0  =>  x_c1 = (-v2 / v1) x_c2
                uf.parent[c1] = c2
                uf.factor[c1] = _ratio(-v2, v1)
                rank += 1
                progress = True
            else:
                rest.append(r)
        pending = rest
        if not progress or not pending:
            break
    if not pending:
        return rank
    cols = sorted({c for r in pending for c in r})
    idx = {c: i for i, c in enumerate(cols)}
    sub = ExactMatrix(len(pending), len(cols), [{idx[c]: v for c, v in r.items()} for r in pending])
    return rank + kernels.rank_sparse(sub.integer_rows(), len(cols))


def rref(rows: Iterable[Mapping[int, int | Fraction]], ncols: int) -> tuple[list[Vector], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and their pivot columns."""
    pivot_rows: dict[int, Vector] = {}
    for raw in rows:
        row: Vector = {c: Fraction(v) for c, v in raw.items() if v}
        for pc in sorted(pivot_rows):
            rc = row.get(pc)
            if rc:
                for c, v in pivot_rows[pc].items():
                    x = row.get(c, 0) - rc * v
                    if x:
                        row[c] = x
                    else:
                        row.pop(c, None)
        if not row:
            continue
        lead = min(row)
        inv = 1 / row[lead]
        row = {c: v * inv for c, v in row.items()}
        for pc, prow in pivot_rows.items():
            f = prow.get(lead)
            if f:
                for c, v in row.items():
                    x = prow.get(c, 0) - f * v
                    if x:
                        prow[c] = x
                    else:
                        prow.pop(c, None)
        pivot_rows[lead] = row
    piv = sorted(pivot_rows)
    return [pivot_rows[p] for p in piv], piv


def nullspace(rows: Iterable[Mapping[int, int | Fraction]], ncols: int) -> list[Vector]:
    """Basis of ``{x : A x = 0}``, one vector per free column (free entry = 1)."""
    reduced, piv = rref(rows, ncols)
    pivset = set(piv)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        vec: Vector = {free: Fraction(1)}
        for p, r in zip(piv, reduced):
            v = r.get(free)
            if v:
                vec[p] = -v
        basis.append(vec)
    return basis


class Span:
    """Incrementally built span that can express members in its generators."""

    def __init__(self) -> None:
        self._rows: dict[int, tuple[Vector, Vector]] = {}  # pivot -> (row, combination)
        self.generators: list[Vector] = []

    def __len__(self) -> int:
        return len(self.generators)

    def _reduce(self, v: Mapping[int, int | Fraction]) -> tuple[Vector, Vector]:
        row: Vector = {c: Fraction(x) for c, x in v.items() if x}
        comb: Vector = {}
        for pc in sorted(self._rows):
            rc = row.get(pc)
            if not rc:
                continue
            prow, pcomb = self._rows[pc]
            for c, x in prow.items():
                y = row.get(c, 0) - rc * x
                if y:
                    row[c] = y
                else:
                    row.pop(c, None)
            for g, x in pcomb.items():
                y = comb.get(g, 0) + rc * x
                if y:
                    comb[g] = y
                else:
                    comb.pop(g, None)
        return row, comb

    def add(self, v: Mapping[int, int | Fraction]) -> bool:
        """Add ``v`` as a generator if independent; return whether it was added."""
        row, comb = self._reduce(v)
        if not row:
            return False
        idx = len(self.generators)
        self.generators.append({c: Fraction(x) for c, x in v.items() if x})
        # row = v - sum(comb_g * gen_g)
        comb = {g: -x for g, x in comb.items()}
        comb[idx] = Fraction(1)
        lead = min(row)
        inv = 1 / row[lead]
        self._rows[lead] = ({c: x * inv for c, x in row.items()}, {g: x * inv for g, x in comb.items()})
        return True

    def contains(self, v: Mapping[int, int | Fraction]) -> bool:
        row, _ = self._reduce(v)
        return not row

    def express(self, v: Mapping[int, int | Fraction]) -> Vector | None:
        """Coefficients of ``v`` in the generators, or ``None`` if outside the span."""
        row, comb = self._reduce(v)
        if row:
            return None
        return comb


class Quotient:
    """``Z / B`` for a subspace ``B ⊆ Z`` of a coordinate space.

    Representatives are chosen greedily from ``cocycles`` (in order) so that
    they extend a basis of ``B``.
    """

    def __init__(self, cocycles: Sequence[Mapping[int, int | Fraction]],
                 boundaries: Iterable[Mapping[int, int | Fraction]]):
        self._span = Span()
        self._zspan = Span()
        for z in cocycles:
            self._zspan.add(z)
        for b in boundaries:
            self._span.add(b)
        self.n_boundary = len(self._span)
        self.representatives: list[Vector] = []
        for z in cocycles:
            if self._span.add(z):
                self.representatives.append({c: Fraction(x) for c, x in z.items() if x})

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def coordinates(self, v: Mapping[int, int | Fraction]) -> list[Fraction]:
        """Coordinates of the class of ``v``; raises if ``v`` is not a cocycle."""
        if not self._zspan.contains(v):
            raise ValueError("vector is not in the cocycle space")
        comb = self._span.express(v)
        if comb is None:
            raise ValueError("vector is not in the cocycle space")
        return [comb.get(self.n_boundary + i, Fraction(0)) for i in range(self.dim)]

    def is_boundary(self, v: Mapping[int, int | Fraction]) -> bool:
        return all(c == 0 for c in self.coordinates(v))
