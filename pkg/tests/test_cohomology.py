import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srcot.cohomology import (
    cohomology,
    k_complex,
    kernel_complex,
    relative_order_cohomology,
    simplicial_cochain_complex,
)
from srcot.complex_core import USubset, from_facets, n_sets, star_open
from srcot.generators import ngon, octahedron, random_complex, simplex, simplex_boundary

from conftest import small_zoo


def test_circle_and_sphere_cohomology():
    h = cohomology(simplicial_cochain_complex(ngon(5), k_max=2))
    assert (h[0], h[1]) == (1, 1)
    h = cohomology(simplicial_cochain_complex(octahedron(), k_max=3))
    assert (h[0], h[1], h[2]) == (1, 0, 1)


def test_reduced_degree_zero():
    two_points = from_facets([["a"], ["b"]])
    C = simplicial_cochain_complex(two_points, k_max=1)
    assert cohomology(C)[0] == 2
    assert cohomology(C, reduced=True)[0] == 1


def test_relative_simplicial_cohomology():
    # (disk, boundary circle) has H^2 = 1 and nothing below
    disk = simplex(2)
    rim = simplex_boundary(2)
    h = cohomology(simplicial_cochain_complex(disk, relative_to=rim, k_max=3))
    assert (h[0], h[1], h[2]) == (0, 0, 1)


def test_relative_order_cohomology_of_open_star():
    E = ngon(6)
    st0 = star_open(1, E)
    # the open star of a vertex is contractible
    h = relative_order_cohomology(st0)
    assert (h[0], h[1]) == (1, 0)


def test_kernel_complex_requires_containment(D):
    N, Nt = n_sets(D, 0, D.face_of(["y", "y2"]))
    with pytest.raises(ValueError):
        kernel_complex(Nt, N)


def test_kernel_complex_at_yy2(D):
    N, Nt = n_sets(D, 0, D.face_of(["y", "y2"]))
    h = cohomology(kernel_complex(N, Nt))
    assert (h[0], h[1]) == (0, 4)
    ho = relative_order_cohomology(N, Nt)
    assert (ho[0], ho[1]) == (0, 4)


def test_coboundary_squares_to_zero_is_enforced(D):
    # construction asserts d∘d = 0; building a deep complex exercises it
    C = k_complex(USubset(D, D.faces), k_max=3)
    assert C.k_max == 3


@pytest.mark.parametrize("X", small_zoo(), ids=lambda X: repr(X)[:40])
def test_k_complex_matches_order_complex(X):
    faces = sorted(X.faces)
    for f in faces[:6]:
        Y = star_open(f, X)
        hk = cohomology(k_complex(Y))
        ho = relative_order_cohomology(Y)
        assert (hk[0], hk[1]) == (ho[0], ho[1])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.integers(3, 5))
def test_k_complex_quasi_iso_on_n_sets(seed, verts):
    X = random_complex(seed, verts)
    for a in sorted(X.faces)[:3]:
        rest = X.vertex_set & ~a
        b = rest & -rest
        if not b:
            continue
        for Y in n_sets(X, a, b):
            hk = cohomology(k_complex(Y))
            ho = relative_order_cohomology(Y)
            assert (hk[0], hk[1]) == (ho[0], ho[1])


def test_euler_characteristic_of_simplex_cochains():
    C = simplicial_cochain_complex(simplex_boundary(3), k_max=2)
    assert C.euler_characteristic() == 4 - 6 + 4
