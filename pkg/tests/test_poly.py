import random

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from localeu.errors import EmptySchemeError, ResourceLimitError
from localeu.poly import (
    GREVLEX,
    LEX,
    Ideal,
    MonomialOrder,
    Polynomial,
    Ring,
    dimension_and_degree,
    generic_linear_form,
    intersect,
    is_groebner,
    is_reduced,
    is_squarefree,
    normal_form,
    polynomial_gcd,
    quotient,
    reduced_groebner,
    saturate,
    saturate_by,
    step_budget,
    zero_dim_length,
)

R2 = Ring(("x", "y"))
R3 = Ring(("x", "y", "z"))


def P(text, ring=R3):
    return Polynomial.parse(text, ring)


def ideal(*texts, ring=R3):
    return Ideal([P(t, ring) for t in texts], ring)


# -- polynomials ---------------------------------------------------------------


def test_parse_and_print_canonical():
    f = Polynomial.parse("y*u - x*v")
    assert f.ring.names == ("u", "v", "x", "y")
    assert str(f) == "-v*x + u*y"
    assert Polynomial.parse(str(f), f.ring) == f


def test_parse_rational_and_powers():
    f = P("3/2*x^2 + (x - 1)^3 - x**3")
    assert f == P("-3/2*x^2 + 3*x - 1")


def test_natural_variable_order():
    f = Polynomial.parse("x10 + x2 + x1")
    assert f.ring.names == ("x1", "x2", "x10")


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        Polynomial.parse("x + * y")
    with pytest.raises(ValueError):
        Polynomial.parse("")


def test_no_zero_terms_stored():
    f = P("x + y") - P("x")
    assert all(c != 0 for c in f.terms.values())
    assert f == P("y")


def test_exact_division():
    from localeu.poly import divide_exact

    assert divide_exact(P("x^2 - y^2"), P("x - y")) == P("x + y")
    with pytest.raises(ValueError):
        divide_exact(P("x^2 + 1"), P("x - y"))


# -- Groebner bases -------------------------------------------------------------


def test_groebner_already_reduced():
    I = reduced_groebner(ideal("x", "y"))
    assert set(I.cached_basis[1]) == {P("x"), P("y")}


def test_groebner_inconsistent_system():
    I = ideal("x*y - 1", "x")
    assert I.groebner_basis() == (P("1"),)
    assert I.is_unit()


def test_twisted_cubic_elimination(frozen):
    I = ideal("y - x^2", "z - x^3")
    order = MonomialOrder.elimination(R3, ["x"])
    elim = [g for g in I.groebner_basis(order) if g.degree_in([0]) == 0]
    expected = [Polynomial.parse(s.replace("**", "^"), R3) for s in frozen["twisted cubic elimination"]]
    assert Ideal(elim, R3) == Ideal(expected, R3)
    assert P("z^2 - y^3") in Ideal(elim, R3)


def test_lex_basis_is_groebner():
    I = ideal("x^2 + y*z - 1", "x*y - z", "y^2 - x*z")
    gb = I.groebner_basis(LEX)
    assert is_groebner(gb, LEX)
    assert is_reduced(gb, LEX)


def test_budget_exhaustion_raises():
    I = ideal("x^3 + y^3 + z^3 - 1", "x*y*z - 2", "x^2*y + z - 3")
    with step_budget(10), pytest.raises(ResourceLimitError):
        I.groebner_basis()


small_poly = st.lists(
    st.tuples(st.integers(-3, 3), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)),
    min_size=1, max_size=4,
)


def _build(terms):
    t = {}
    for c, a, b, d in terms:
        t[(a, b, d)] = t.get((a, b, d), 0) + c
    return Polynomial(R3, t)


@given(st.lists(small_poly, min_size=1, max_size=3))
def test_buchberger_certificate_and_reducedness(gens):
    polys = [p for p in map(_build, gens) if p]
    if not polys:
        return
    gb = Ideal(polys, R3).groebner_basis()
    assert is_groebner(gb)
    assert is_reduced(gb)
    for p in polys:
        assert normal_form(p, gb).is_zero()


def _to_sympy(p):
    return sp.sympify(str(p).replace("^", "**"))


@given(st.lists(small_poly, min_size=1, max_size=3))
def test_matches_sympy_reduced_basis(gens):
    polys = [p for p in map(_build, gens) if p]
    if not polys:
        return
    ours = {_to_sympy(g) for g in Ideal(polys, R3).groebner_basis()}
    x, y, z = sp.symbols("x y z")
    theirs = sp.groebner([_to_sympy(p) for p in polys], x, y, z, order="grevlex")
    theirs = {sp.expand(g / sp.Poly(g, x, y, z).LC(order="grevlex")) for g in theirs.exprs}
    assert {sp.expand(g) for g in ours} == theirs


@given(small_poly, small_poly, st.lists(small_poly, min_size=1, max_size=2))
def test_normal_form_is_linear(a, b, gens):
    f, g = _build(a), _build(b)
    basis = Ideal([p for p in map(_build, gens) if p] or [P("x")], R3).groebner_basis()
    assert normal_form(f + g, basis) == normal_form(f, basis) + normal_form(g, basis)


# -- saturation and friends -------------------------------------------------------


def test_saturation_examples(frozen):
    x = P("x", R2)
    assert saturate(Ideal([P("x^2*y", R2)], R2), Ideal([x], R2)) == Ideal([P("y", R2)], R2)
    assert saturate(Ideal([x], R2), Ideal([P("y", R2)], R2)) == Ideal([x], R2)
    got = saturate(ideal("x*y", "x*z"), ideal("x"))
    expected = Ideal([Polynomial.parse(s, R3) for s in frozen["saturate (x*y, x*z) by x"]], R3)
    assert got == expected == ideal("y", "z")


@given(st.lists(small_poly, min_size=1, max_size=2), small_poly)
def test_saturation_is_idempotent(gens, gterms):
    polys = [p for p in map(_build, gens) if p]
    g = _build(gterms)
    if not polys or g.is_zero():
        return
    I = Ideal(polys, R3)
    J = Ideal([g], R3)
    S = saturate(I, J)
    assert saturate(S, J) == S
    assert quotient(S, J) == S


def test_saturation_by_element_matches_ideal_saturation():
    I = ideal("x^2*y - x*z", "x*y^2")
    assert saturate_by(I, P("x")) == saturate(I, ideal("x"))


def test_intersection_and_quotient():
    assert intersect(ideal("x"), ideal("y")) == ideal("x*y")
    assert quotient(ideal("x*y", "x*z"), ideal("x")) == ideal("y", "z")


def test_gcd_and_squarefree():
    g = polynomial_gcd(P("x^2 - y^2"), P("x^2 + 2*x*y + y^2"))
    assert g == P("x + y")
    assert is_squarefree(P("x^2*y + y^3"))
    assert not is_squarefree(P("(x - y)^2*(x + 1)"))
    assert is_squarefree(P("y*u - x*v", Ring(("u", "v", "x", "y"))))


# -- dimension and degree -----------------------------------------------------------


def test_dimension_and_degree_examples(frozen):
    assert dimension_and_degree(ideal("x^2", "y^3", ring=R2)) == (0, frozen["length (x^2, y^3)"])
    assert dimension_and_degree(ideal("x", "y", ring=R2)) == (0, 1)
    assert dimension_and_degree(ideal("x*y", ring=R2)) == (1, 2)
    assert zero_dim_length(ideal("x^3 - y", "y^2 - x*y", ring=R2)) == frozen["length (x^3 - y, y^2 - x*y)"]


def test_unit_ideal_is_empty_scheme():
    with pytest.raises(EmptySchemeError):
        dimension_and_degree(ideal("1", ring=R2))
    assert zero_dim_length(ideal("1", ring=R2)) == 0


def test_two_quadrics_meet_in_degree_four():
    # twisted cubic cone plus the y-axis (and two conjugate lines)
    assert dimension_and_degree(ideal("x^2 - y*z", "x*y - z^2")) == (1, 4)


@pytest.mark.parametrize("seed", range(5))
def test_dimension_degree_coordinate_invariance(seed):
    rng = random.Random(seed)
    # cone over the twisted cubic
    I = ideal("x^2 - y*z", "x*y - z^2", "y^2 - x*z")
    while True:
        A = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
        det = sp.Matrix(A).det()
        if det:
            break
    X = [P(v) for v in R3.names]
    images = [sum((X[j] * A[i][j] for j in range(3)), P("0")) for i in range(3)]
    J = Ideal([g.compose(images) for g in I.generators], R3)
    assert dimension_and_degree(J) == dimension_and_degree(I) == (1, 3)


# -- generic forms --------------------------------------------------------------------


def test_generic_linear_form_is_deterministic():
    R = Ring.from_blocks(x=["a", "b"], y=["p", "q", "r"])
    f = generic_linear_form(R, "x", seed=1, draw=0)
    assert f == generic_linear_form(R, "x", seed=1, draw=0)
    assert f.variables() <= {0, 1}
    assert f.is_homogeneous_in([0, 1]) and f.total_degree() == 1
    assert generic_linear_form(R, "x", seed=1, draw=1) != f
    g = generic_linear_form(R, "y", seed=1, affine=True)
    assert g.total_degree() == 1 and not g.is_homogeneous_in([2, 3, 4])
