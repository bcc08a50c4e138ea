from fractions import Fraction

import pytest

from srcot.complex_core import bit
from srcot.cotangent import DegreeKey, piece_space
from srcot.deformation import (
    T1Class,
    cup,
    cup_value,
    greedy_maximal,
    injectivity_check,
    localize,
    quadratic_base_equations,
    t1_slice,
    t2_slice,
)
from srcot.generators import ngon, octahedron, simplex_boundary


def _edge_class(X, v):
    n = X.n_ambient
    key = DegreeKey(bit(v), bit((v - 1) % n) | bit((v + 1) % n))
    avec = tuple(1 if w == v else 0 for w in range(n))
    return T1Class(X, key, avec, {bit(v): Fraction(1)})


def test_t1_class_validates_support():
    X = ngon(7)
    with pytest.raises(ValueError):
        T1Class(X, DegreeKey(bit(1), bit(0) | bit(2)), (0,) * 7, {})


def test_greedy_maximal_choice():
    X = ngon(7)
    b = bit(2) | bit(5)
    f = bit(1)
    d = greedy_maximal(X, f, b)
    assert (f | (b & ~d)) not in X.faces
    for v in (2, 5):
        if not d >> v & 1:
            assert (f | (b & ~(d | bit(v)))) in X.faces


def test_worked_cup_values_heptagon():
    X = ngon(7)
    v = 3
    phi, psi = _edge_class(X, v), _edge_class(X, v + 1)
    key = DegreeKey(0, bit(v - 1) | bit(v + 2))
    assert cup_value(phi, psi, bit(v - 2), 0, key) == 0
    assert cup_value(phi, psi, bit(v), 0, key) == 1


def test_cup_of_adjacent_classes_is_a_generator():
    X = ngon(7)
    prod = cup(_edge_class(X, 3), _edge_class(X, 4))
    assert prod.key == DegreeKey(0, bit(2) | bit(5))
    assert len(prod.coordinates) == 1 and prod.coordinates[0] != 0


def test_cup_of_distant_classes_vanishes():
    X = ngon(7)
    prod = cup(_edge_class(X, 1), _edge_class(X, 4))
    assert prod.is_zero


def test_cup_with_overlapping_b_is_zero():
    X = ngon(7)
    prod = cup(_edge_class(X, 3), _edge_class(X, 5))
    assert prod.note == "b1 and b2 intersect" and prod.is_zero


def test_cup_symmetric_and_choice_free():
    X = ngon(6)
    _, classes = t1_slice(X, -1)
    for a in classes:
        for b in classes:
            c = cup(a, b)
            assert c.coordinates == cup(b, a).coordinates == cup(a, b, descending=True).coordinates


def test_cup_needs_same_complex():
    with pytest.raises(ValueError):
        cup(_edge_class(ngon(7), 1), _edge_class(ngon(8), 2))


def test_heptagon_quadratic_equations():
    q = quadratic_base_equations(ngon(7))
    assert len(q.t1_classes) == 7 and len(q.t2_labels) == 7
    pairs = sorted(tuple(sorted(form)) for form in q.forms)
    names = [q.t1_names[j] + q.t1_names[k] for ((j, k),) in pairs]
    assert sorted(names) == sorted(f"t{v}t{(v + 1) % 7}" if v < 6 else "t0t6" for v in range(7))
    assert all(len(form) == 1 and abs(next(iter(form.values()))) == 1 for form in q.forms)


def test_hexagon_quadratic_equations():
    q = quadratic_base_equations(ngon(6))
    assert len(q.forms) == 3
    want = [{(0, 1), (3, 4)}, {(1, 2), (4, 5)}, {(2, 3), (0, 5)}]
    got = [set(form) for form in q.forms]
    assert sorted(map(sorted, got)) == sorted(map(sorted, want))
    for form in q.forms:
        assert sorted(form.values()) == [-1, 1]


def test_quadratic_render():
    q = quadratic_base_equations(ngon(6))
    lines = q.render()
    assert "−t1t2 + t4t5" in lines
    assert "-t1*t2 + t4*t5" in q.render(ascii_only=True)


def test_t2_slice_of_heptagon():
    pieces = t2_slice(ngon(7), -2)
    assert len(pieces) == 7 and all(p.dim == 1 for p in pieces)


def test_localize_t1_class(D):
    key = DegreeKey(D.face_of(["x"]), D.face_of(["y"]))
    avec = (1, 0, 0, 0, 0, 0)
    (lam,) = piece_space(D, key).t1_basis()
    loc = localize(T1Class(D, key, avec, lam), 0)
    assert loc.key == DegreeKey(0, D.face_of(["y"]))
    assert any(loc.coordinates)


def test_localize_rejects_nonzero_degree():
    X = ngon(7)
    with pytest.raises(ValueError):
        localize(_edge_class(X, 3), 3)
    with pytest.raises(ValueError):
        localize(_edge_class(X, 3), 20)


@pytest.mark.parametrize("X", [octahedron(), simplex_boundary(3), ngon(6)], ids=["oct", "bd3", "E6"])
def test_injectivity(X):
    for i in (1, 2):
        assert injectivity_check(X, i).injective


def test_injectivity_bad_index():
    with pytest.raises(ValueError):
        injectivity_check(ngon(5), 3)
