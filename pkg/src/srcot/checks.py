"""Invariant suites used by ``srcot check`` and the test suite.

Each suite returns a :class:`SuiteResult` listing what it looked at and every
failure it found; nothing here raises on a mathematical disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Callable, Sequence

from .cohomology import cohomology, k_complex, relative_order_cohomology
from .complex_core import SimplicialComplex, USubset, n_sets, u_sets
from .cotangent import DegreeKey, cached_link, compute_dims, link_reduction_check, relevant_degrees

ROUTES = ("n", "order", "u", "m")


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f", {len(self.failures)} failures" if self.failures else ""
        return f"{status} {self.name} ({self.checked} checked{extra})"


def route_agreement(X: SimplicialComplex, keys: Sequence[DegreeKey] | None = None,
                    routes: Sequence[str] = ROUTES, jobs: int = 1) -> SuiteResult:
    keys = relevant_degrees(X) if keys is None else list(keys)
    res = SuiteResult("route agreement", len(keys))
    table = {r: compute_dims(X, keys, route=r, jobs=jobs) for r in routes}
    for i, key in enumerate(keys):
        vals = {r: tuple(table[r][i]) for r in routes}
        if len(set(vals.values())) > 1:
            res.failures.append(f"{key.describe(X)}: " + ", ".join(f"{r}={v}" for r, v in vals.items()))
    return res


def u_subsets_of(X: SimplicialComplex, keys: Sequence[DegreeKey] | None = None) -> list[USubset]:
    """Every ``N, Ñ`` on ``X`` and ``U, Ũ`` on the links, without repeats."""
    keys = relevant_degrees(X) if keys is None else keys
    seen: dict[frozenset, USubset] = {}
    for key in keys:
        L = cached_link(key.a, X)
        for Y in (*n_sets(X, key.a, key.b), *u_sets(L, key.b, check=False)):
            seen.setdefault(Y.elements, Y)
    return list(seen.values())


def quasi_isomorphism(X: SimplicialComplex, keys: Sequence[DegreeKey] | None = None) -> SuiteResult:
    """``H^k(K•(Y)) = H^k(Y')`` for ``k = 0, 1`` on every arising U-subset."""
    subsets = u_subsets_of(X, keys)
    res = SuiteResult("quasi-isomorphism", len(subsets))
    for Y in subsets:
        hk = cohomology(k_complex(Y, k_max=2))
        ho = relative_order_cohomology(Y)
        if (hk[0], hk[1]) != (ho[0], ho[1]):
            faces = ", ".join(X.label(f) for f in Y.ordered[:6])
            res.failures.append(f"Y = {{{faces}{', ...' if len(Y) > 6 else ''}}}: "
                                f"K gives {(hk[0], hk[1])}, order complex gives {(ho[0], ho[1])}")
    return res


def link_reduction(X: SimplicialComplex, keys: Sequence[DegreeKey] | None = None) -> SuiteResult:
    keys = relevant_degrees(X) if keys is None else keys
    res = SuiteResult("link reduction", len(keys))
    for key in keys:
        if not link_reduction_check(X, key):
            res.failures.append(key.describe(X))
    return res


def injectivity(X: SimplicialComplex) -> SuiteResult:
    from .deformation import injectivity_check

    res = SuiteResult("localization injectivity")
    for i in (1, 2):
        r = injectivity_check(X, i)
        res.checked += len(r.pieces)
        for key, dim, kern in r.pieces:
            if kern:
                res.failures.append(f"T^{i} at {key.describe(X)}: kernel {kern} of {dim}")
    return res


def cup_consistency(X: SimplicialComplex, degree: int = -1, max_pairs: int = 400) -> SuiteResult:
    """Symmetry of the cup product and independence of the maximal-face choice."""
    from .deformation import cup, t1_slice

    _, classes = t1_slice(X, degree)
    res = SuiteResult("cup symmetry and choice independence")
    for j, k in combinations_with_replacement(range(len(classes)), 2):
        if res.checked >= max_pairs:
            break
        res.checked += 1
        a, b = classes[j], classes[k]
        base = cup(a, b)
        others = {"swapped": cup(b, a), "descending": cup(a, b, descending=True)}
        for label, other in others.items():
            if other.coordinates != base.coordinates:
                res.failures.append(f"classes {j},{k} ({label}): {base.coordinates} vs {other.coordinates}")
    return res


SUITES: dict[str, Callable[[SimplicialComplex], SuiteResult]] = {
    "routes": route_agreement,
    "quasi": quasi_isomorphism,
    "link": link_reduction,
    "injectivity": injectivity,
    "cup": cup_consistency,
}


def run_all(X: SimplicialComplex, jobs: int = 1) -> list[SuiteResult]:
    out = [route_agreement(X, jobs=jobs)]
    out += [fn(X) for name, fn in SUITES.items() if name != "routes"]
    return out
