from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srcot.cotangent import (
    DegreeKey,
    Multidegree,
    coarse_degrees,
    coarse_slice,
    compute_dims,
    exponent_count,
    full_report,
    is_closed_surface,
    is_relevant,
    link_reduction_check,
    manifold_degree0_classification,
    only_common_neighbour,
    piece_direct,
    piece_space,
    piece_via_n,
    piece_via_order,
    piece_via_u,
    relevant_degrees,
    t0,
)
from srcot.generators import bipyramid, ngon, octahedron, random_complex, simplex, simplex_boundary, sphere0

from conftest import small_zoo


def test_degree_key_and_multidegree():
    with pytest.raises(ValueError):
        DegreeKey(0b1, 0b11)
    md = Multidegree.from_c((2, -1, 0, 1))
    assert md.a == (2, 0, 0, 1) and md.b == (0, 1, 0, 0)
    assert md.key == DegreeKey(0b1001, 0b0010)
    assert md.degree == 2
    with pytest.raises(ValueError):
        Multidegree((1, 0), (1, 0))
    with pytest.raises(ValueError):
        Multidegree.from_key(DegreeKey(0b01, 0b10), 2, avec=(0, 0))


def test_relevant_degrees_sorted_and_valid(D):
    keys = relevant_degrees(D)
    assert keys == sorted(keys)
    assert all(is_relevant(D, k) for k in keys)
    assert not is_relevant(D, DegreeKey(D.face_of(["x", "x2"]), D.face_of(["y"])))


def test_sphere0_pieces(S0):
    pieces = full_report(S0)
    assert [(p.key, p.dims) for p in pieces] == [(DegreeKey(0, 0b11), (1, 1, 0))]


def test_simplex_is_rigid():
    assert full_report(simplex(4)) == []


def test_D_piece_table(D):
    by_type = Counter()
    for p in full_report(D):
        by_type[(p.key.a.bit_count(), p.key.b.bit_count(), p.dims)] += 1
    assert by_type == Counter({
        (2, 2, (1, 1, 0)): 12,
        (1, 1, (2, 1, 0)): 24,
        (1, 1, (1, 0, 1)): 6,
        (0, 2, (0, 0, 4)): 3,
        (0, 1, (3, 2, 1)): 6,
    })


def test_D_vertex_piece_by_hand(D):
    # In degree -x': the x'-divisible generators xx'y, xx'y', xx'z, xx'z' are
    # tied together through the triangles at x, while x'yy' and x'zz' are free.
    sp = piece_space(D, DegreeKey(0, D.face_of(["x2"])))
    assert sp.dim_hom == 3 and sp.dim_t1 == 2 and sp.dim_t2 == 1
    comps = {frozenset(D.label(f) for f in lam) for lam in sp.hom_basis()}
    assert len(comps) == 3


@pytest.mark.parametrize("X", small_zoo(), ids=lambda X: repr(X)[:40])
def test_routes_agree_on_zoo(X):
    keys = relevant_degrees(X)
    n = [piece_via_n(X, k).dims for k in keys]
    assert n == [piece_via_order(X, k) for k in keys]
    assert n == [piece_via_u(X, k) for k in keys]
    assert n == compute_dims(X, keys, route="m")


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 5), st.floats(0.2, 0.9))
def test_direct_and_link_routes_agree(seed, verts, density):
    X = random_complex(seed, verts, density)
    for k in relevant_degrees(X):
        assert piece_direct(X, k) == piece_via_n(X, k).dims
        assert link_reduction_check(X, k)


def test_parallel_compute_matches_serial(D):
    keys = relevant_degrees(D)[:40]
    assert compute_dims(D, keys, jobs=2) == compute_dims(D, keys)


def test_unknown_route():
    with pytest.raises(ValueError):
        compute_dims(sphere0(), relevant_degrees(sphere0()), route="zz")


def test_exponent_count():
    assert exponent_count(0, 0) == 1
    assert exponent_count(0, 2) == 0
    assert exponent_count(2, 4) == 3
    assert exponent_count(3, 2) == 0


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_ngon_coarse_slices(n):
    pieces = full_report(ngon(n))
    assert coarse_slice(ngon(n), 1, -1, pieces) == n
    t2 = sum(coarse_slice(ngon(n), 2, d, pieces) for d in range(-n, 3))
    assert t2 == coarse_slice(ngon(n), 2, -2, pieces) == max(0, n * (n - 5) // 2)
    lo, hi = coarse_degrees(pieces, 1)
    assert lo == -1 and hi is None


def test_coarse_slice_rejects_bad_index():
    with pytest.raises(ValueError):
        coarse_slice(sphere0(), 3, 0)


def test_t0_examples(D):
    assert t0(D).module_generated_by_delta
    assert t0(ngon(5)).module_generated_by_delta
    # on a full simplex the ideal is zero and every a_v is the unit ideal
    seg = simplex(1)
    d = t0(seg)
    assert not d.module_generated_by_delta
    assert d.generators[0] == [0]


def test_closed_surface_recognition():
    assert is_closed_surface(octahedron())
    assert is_closed_surface(simplex_boundary(3))
    assert not is_closed_surface(ngon(5))
    assert not is_closed_surface(simplex(2))


def test_surface_classification_small():
    t1, t2 = manifold_degree0_classification(simplex_boundary(3))
    assert {e.tag for e in t1} == {"i", "iii", "iv"} and not t2
    t1, t2 = manifold_degree0_classification(octahedron())
    assert {e.tag for e in t1} == {"i", "ii"} and not t2
    assert all(e.dim == 1 for e in t1)
    with pytest.raises(ValueError):
        manifold_degree0_classification(ngon(4))


def test_surface_t2_needs_valency_six():
    X = bipyramid(7)
    t1, t2 = manifold_degree0_classification(X)
    apexes = {X.face_of(["N"]), X.face_of(["S"])}
    assert t2 and {e.key.a for e in t2} == apexes
    # each apex link is a 7-gon with 7 long chords
    assert len(t2) == 2 * 7


def test_bipyramid_t2_with_second_common_neighbour():
    # 0 and 3 also share the other apex, yet the piece is nonzero
    X = bipyramid(6)
    key = DegreeKey(X.face_of(["N"]), X.face_of(["0", "3"]))
    assert piece_via_n(X, key).dim_t2 == 1
    assert not only_common_neighbour(X, key)
