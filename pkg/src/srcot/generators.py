"""Builtin example complexes, addressable by ``name[:params]`` strings."""

from __future__ import annotations

import random
from itertools import combinations, product

from .complex_core import SimplicialComplex, from_facets

OCTAHEDRON_NAMES = ("x", "y", "z", "x2", "y2", "z2")
PRETTY_NAMES = {"x2": "x′", "y2": "y′", "z2": "z′"}


def simplex(n: int) -> SimplicialComplex:
    """The full simplex on vertices ``0..n``."""
    _need(n >= 0, "simplex needs n >= 0")
    names = [str(i) for i in range(n + 1)]
    return from_facets([names], names)


def simplex_boundary(n: int) -> SimplicialComplex:
    """Boundary of the ``n``-simplex (vertices ``0..n``)."""
    _need(n >= 1, "simplex-boundary needs n >= 1")
    names = [str(i) for i in range(n + 1)]
    return from_facets([list(c) for c in combinations(names, n)], names)


def ngon(n: int) -> SimplicialComplex:
    """``E_n``: the cycle on vertices ``0..n-1``."""
    _need(n >= 3, "ngon needs n >= 3")
    names = [str(i) for i in range(n)]
    return from_facets([[str(i), str((i + 1) % n)] for i in range(n)], names)


def sphere0() -> SimplicialComplex:
    return from_facets([["0"], ["1"]], ["0", "1"])


def octahedron() -> SimplicialComplex:
    x, y, z, x2, y2, z2 = OCTAHEDRON_NAMES
    facets = [list(t) for t in product((x, x2), (y, y2), (z, z2))]
    return from_facets(facets, OCTAHEDRON_NAMES)


def octahedron_diagonals() -> SimplicialComplex:
    """The octahedron together with its three diagonals ``xx′, yy′, zz′``."""
    x, y, z, x2, y2, z2 = OCTAHEDRON_NAMES
    facets = [list(t) for t in product((x, x2), (y, y2), (z, z2))]
    facets += [[x, x2], [y, y2], [z, z2]]
    return from_facets(facets, OCTAHEDRON_NAMES)


def bipyramid(n: int) -> SimplicialComplex:
    """Suspension of ``E_n``: a 2-sphere with two apexes of valency ``n``."""
    _need(n >= 3, "bipyramid needs n >= 3")
    names = [str(i) for i in range(n)] + ["N", "S"]
    facets = [[str(i), str((i + 1) % n), p] for i in range(n) for p in ("N", "S")]
    return from_facets(facets, names)


def random_complex(seed: int, verts: int, density: float = 0.5) -> SimplicialComplex:
    """Random complex on ``verts`` vertices, each vertex used at least once.

    Candidate facets of size ``s >= 2`` are kept with probability
    ``density ** (s - 1)``.
    """
    _need(1 <= verts <= 20, "random needs 1 <= verts <= 20")
    _need(0.0 <= density <= 1.0, "density must lie in [0, 1]")
    rng = random.Random(seed)
    names = [str(i) for i in range(verts)]
    facets = []
    for size in range(2, verts + 1):
        for c in combinations(names, size):
            if rng.random() < density ** (size - 1):
                facets.append(list(c))
    used = {v for f in facets for v in f}
    facets += [[v] for v in names if v not in used]
    return from_facets(facets, names)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def parse_generator(spec: str) -> SimplicialComplex:
    """Build a complex from ``simplex:n``, ``ngon:n``, ``random:seed=7,verts=6`` etc."""
    name, _, arg = spec.partition(":")
    name = name.strip()
    try:
        if name == "simplex":
            return simplex(int(arg))
        if name == "simplex-boundary":
            return simplex_boundary(int(arg))
        if name == "ngon":
            return ngon(int(arg))
        if name == "bipyramid":
            return bipyramid(int(arg))
        if name == "sphere0":
            return sphere0()
        if name == "octahedron":
            return octahedron()
        if name == "octahedron-diagonals":
            return octahedron_diagonals()
        if name == "random":
            return random_complex(**_random_args(arg))
    except ValueError as exc:
        raise ValueError(f"bad generator {spec!r}: {exc}") from None
    raise ValueError(f"unknown generator {name!r}")


def _random_args(arg: str) -> dict:
    keys = ["seed", "verts", "density"]
    out: dict = {}
    for i, part in enumerate(p for p in arg.split(",") if p):
        if "=" in part:
            k, v = part.split("=", 1)
        else:
            if i >= len(keys):
                raise ValueError("too many random parameters")
            k, v = keys[i], part
        k = k.strip()
        if k not in keys:
            raise ValueError(f"unknown random parameter {k!r}")
        out[k] = float(v) if k == "density" else int(v)
    if "seed" not in out or "verts" not in out:
        raise ValueError("random needs seed and verts")
    return out


GENERATOR_NAMES = ("simplex:n", "simplex-boundary:n", "ngon:n", "bipyramid:n", "sphere0",
                   "octahedron", "octahedron-diagonals", "random:seed,verts[,density]")
