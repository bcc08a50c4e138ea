from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srcot.complex_core import (
    SimplicialComplex,
    USubset,
    bit,
    cone,
    face_from,
    from_facets,
    join,
    link,
    m_sets,
    members,
    n_sets,
    order_complex,
    phi_map,
    simplex_boundary,
    star_closed,
    star_open,
    subsets,
    u_sets,
)
from srcot.generators import ngon, simplex, sphere0


@st.composite
def complexes(draw, max_verts=6):
    n = draw(st.integers(1, max_verts))
    names = [str(i) for i in range(n)]
    facets = draw(st.lists(st.sets(st.sampled_from(names), max_size=n), max_size=6))
    return from_facets([sorted(f) for f in facets] or [[]], names)


def test_octahedron_with_diagonals_counts(D):
    assert D.n_ambient == 6
    assert D.f_vector == (1, 6, 15, 8)
    assert len(D.facets) == 11  # 8 triangles and the 3 diagonals


def test_full_simplex_face_count():
    for n in range(5):
        assert len(simplex(n)) == 2 ** (n + 1)


def test_sphere0_faces():
    X = sphere0()
    assert sorted(X.faces) == [0, 1, 2]


def test_void_versus_irrelevant():
    void = from_facets([])
    irr = from_facets([[]])
    assert void.is_void and len(void) == 0
    assert not irr.is_void and irr.faces == {0}
    assert void != irr


def test_from_facets_errors():
    with pytest.raises(ValueError, match="duplicate"):
        from_facets([["a", "a"]])
    with pytest.raises(ValueError, match="unknown vertex"):
        from_facets([["a", "q"]], ["a", "b"])
    with pytest.raises(ValueError, match="duplicate vertex names"):
        from_facets([["a"]], ["a", "a"])


def test_ghost_vertex_is_recorded_but_not_a_face():
    X = from_facets([["a", "b"]], ["a", "b", "g"])
    assert X.n_ambient == 3
    assert bit(2) not in X
    assert X.vertex_set == 0b011


def test_inferred_names_sort_numerically():
    X = from_facets([["10", "2"], ["1"]])
    assert X.vertex_names == ("1", "2", "10")


def test_constructor_rejects_non_closed_family():
    with pytest.raises(ValueError, match="downward"):
        SimplicialComplex(["a", "b"], [0, 0b11])


def test_link_of_x_in_D(D):
    x = D.face_of(["x"])
    L = link(x, D)
    rect = from_facets([["y", "z"], ["z", "y2"], ["y2", "z2"], ["z2", "y"], ["x2"]], D.vertex_names)
    assert L == rect


def test_link_trivial_cases(D):
    assert link(0, D) == D
    assert link(D.face_of(["x", "x2"]), D).faces == {0}
    assert link(D.face_of(["x", "x2", "y"]), D).is_void


def test_link_in_ngon_is_s0():
    E = ngon(6)
    assert link(bit(1), E).faces == {0, bit(0), bit(2)}


def test_closed_star_of_x(D):
    x = D.face_of(["x"])
    st_x = star_closed(x, D)
    maximal = {D.label(f) for f in st_x.facets}
    assert maximal == {"x,y,z", "x,y,z2", "x,z,y2", "x,y2,z2", "x,x2"}


def test_open_star_has_property_u(D):
    for v in range(6):
        assert star_open(bit(v), D).has_property_u()


def test_join_and_cone():
    A = from_facets([["a"], ["b"]])
    B = from_facets([["c"], ["d"]])
    J = join(A, B)
    assert J.f_vector == (1, 4, 4)
    with pytest.raises(ValueError):
        join(A, A)
    E = ngon(3)
    assert len(cone(E)) == 2 * len(E)


def test_simplex_boundary_helper():
    g = face_from([0, 1, 2])
    bd = simplex_boundary(g, ["a", "b", "c"])
    assert g not in bd and len(bd) == 7


@settings(max_examples=60, deadline=None)
@given(complexes())
def test_downward_closed_and_facets_maximal(X):
    for f in X.faces:
        for g in subsets(f):
            assert g in X
    for f in X.facets:
        assert not any(g != f and g & f == f for g in X.faces)


@settings(max_examples=60, deadline=None)
@given(complexes(), st.data())
def test_star_is_join_of_simplex_and_link(X, data):
    f = data.draw(st.sampled_from(sorted(X.faces)))
    # star_closed asserts the join identity internally
    st_f = star_closed(f, X)
    assert all((g | f) in X for g in st_f.faces)


@settings(max_examples=60, deadline=None)
@given(complexes(), st.data())
def test_distinguished_subsets_have_property_u(X, data):
    if not X.vertex_set:
        return
    a = data.draw(st.sampled_from(sorted(X.faces)))
    rest = [v for v in members(X.vertex_set) if not a >> v & 1]
    if not rest:
        return
    b = face_from(data.draw(st.sets(st.sampled_from(rest), min_size=1)))
    N, Nt = n_sets(X, a, b)
    assert N.has_property_u() and Nt.has_property_u()
    assert Nt.elements <= N.elements
    U, Ut = u_sets(X, b)
    assert U.has_property_u() and Ut.has_property_u()
    assert Ut.elements <= U.elements


def test_n_sets_of_D_at_yy2(D):
    b = D.face_of(["y", "y2"])
    N, Nt = n_sets(D, 0, b)
    assert len(N) == 10
    assert {D.label(f) for f in N if f.bit_count() == 1} == {"x", "z", "x2", "z2"}
    assert {D.label(f) for f in Nt} == {"x,x2", "z,z2"}


def test_m_sets_and_phi_map_reach_n(D):
    b = D.face_of(["y", "y2"])
    M, M2 = m_sets(D, 0, b)
    N, _ = n_sets(D, 0, b)
    assert {phi_map(p, 0, b) for p in M} == N.elements
    assert all(phi_map(p | q, 0, b) in D for p, q in M2)


def test_u_subset_rejects_non_u_family(D):
    x, x2 = D.face_of(["x"]), D.face_of(["x2"])
    with pytest.raises(ValueError):
        USubset.of(D, [x, x2])


def test_order_complex_cone_point():
    E = ngon(4)
    oc = order_complex(E.faces)
    assert oc.is_cone_on_empty()
    for c in oc.chains(3):
        els = [oc.elements[i] for i in c]
        assert all(els[i] & els[i + 1] == els[i] and els[i] != els[i + 1] for i in range(2))


def test_minimal_nonfaces_of_ngon():
    E = ngon(5)
    mins = {tuple(members(p)) for p in E.minimal_nonfaces}
    assert mins == {(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)}
    assert all(face_from(c) not in E for c in combinations(range(5), 3))
