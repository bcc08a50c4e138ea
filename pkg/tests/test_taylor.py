from fractions import Fraction

import pytest

from srcot.complex_core import ResourceCapError, from_facets
from srcot.cotangent import DegreeKey, piece_space, piece_via_n, relevant_degrees
from srcot.generators import ngon, random_complex, sphere0
from srcot.taylor import (
    hom_via_m,
    perturbed_equations,
    piece_via_m,
    render_equation,
    render_monomial,
    solve_m_level,
    taylor,
)


def test_taylor_generators_are_all_nonfaces(D):
    data = taylor(D)
    assert set(data.generators) == set(D.nonfaces())
    assert set(D.minimal_nonfaces) <= set(data.generators)
    data.spot_check(limit=40)


def test_taylor_relation_shape():
    data = taylor(ngon(4))
    p, q = data.generators[:2]
    rel = data.relation(p, q)
    assert rel[p] == (1, q & ~p) and rel[q] == (-1, p & ~q)
    assert data.degree(p, q) == p | q


def test_cap_is_enforced(monkeypatch):
    X = random_complex(0, 5)
    taylor.cache_clear()
    with pytest.raises(ResourceCapError):
        taylor(X, cap=4)
    monkeypatch.setenv("SRCOT_CAP", "3")
    with pytest.raises(ResourceCapError):
        solve_m_level(X, 0, 1)
    taylor.cache_clear()


def test_hom_of_s0():
    X = sphere0()
    dim, basis = hom_via_m(X, 0, 0b11)
    assert dim == 1 and basis == [{0b11: Fraction(1)}]
    assert solve_m_level(X, 0, 0b11).dims == (1, 1, 0)


def test_m_level_general_exponents_agree_with_support(D):
    # the answer only depends on supports when b is squarefree
    y = D.face_of(["y"])
    for avec in [(1, 0, 0, 0, 0, 0), (3, 0, 0, 0, 0, 0)]:
        assert solve_m_level(D, avec, y).dims == piece_via_n(D, DegreeKey(1, y)).dims


def test_m_level_rejects_overlap():
    with pytest.raises(ValueError):
        solve_m_level(ngon(5), 0b1, 0b1)


def test_non_squarefree_b_vanishes_on_E5():
    X = ngon(5)
    assert solve_m_level(X, 0, (2, 0, 0, 0, 0)).dims[1:] == (0, 0)


@pytest.mark.parametrize("seed", range(6))
def test_m_route_on_random_complexes(seed):
    X = random_complex(seed, 5, 0.6)
    for k in relevant_degrees(X):
        assert piece_via_m(X, k) == piece_via_n(X, k).dims


def test_render_monomial():
    X = ngon(5)
    assert render_monomial(X, (1, 0, 2, 0, 0)) == "x₀x₂²"
    assert render_monomial(X, (1, 0, 2, 0, 0), ascii_only=True) == "x0 x2^2"
    assert render_monomial(X, (0,) * 5) == ""


def test_render_equation_signs():
    X = ngon(5)
    assert render_equation(X, 0b101, Fraction(1), (0, 1, 0, 0, 0)) == "x₀x₂ − ε x₁"
    assert render_equation(X, 0b101, Fraction(-2), (0, 1, 0, 0, 0), ascii_only=True) == "x0 x2 + 2 eps x1"


def test_perturbed_equation_pentagon():
    X = ngon(5)
    key = DegreeKey(0b10, 0b101)
    (lam,) = piece_space(X, key).t1_basis()
    assert perturbed_equations(X, key.a, key.b, lam) == ["x₀x₂ − ε x₁"]


def test_perturbed_equation_triangle():
    X = ngon(3)
    key = DegreeKey(0, 0b111)
    (lam,) = piece_space(X, key).t1_basis()
    assert perturbed_equations(X, 0, key.b, lam) == ["x₀x₁x₂ − ε"]


def test_perturbed_equations_D(D):
    key = DegreeKey(D.face_of(["x", "y"]), D.face_of(["z", "z2"]))
    (lam,) = piece_space(D, key).t1_basis()
    eqs = perturbed_equations(D, key.a, key.b, lam)
    assert "yzz′ − ε xy²" in eqs


def test_perturbed_equations_reject_non_homomorphism():
    X = ngon(5)
    key = DegreeKey(0, 0b101)
    with pytest.raises(ValueError):
        perturbed_equations(X, 0, key.b, {0b10: 1, 0b1000: 0})


def test_non_squarefree_b_rejected_in_rendering():
    with pytest.raises(ValueError):
        perturbed_equations(ngon(5), 0, (2, 0, 0, 0, 0), {})


def test_ghost_vertices_do_not_break_m_route():
    X = from_facets([["a", "b"]], ["a", "b", "g"])
    for k in relevant_degrees(X):
        assert piece_via_m(X, k) == piece_via_n(X, k).dims
