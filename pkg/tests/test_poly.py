from __future__ import annotations

from fractions import Fraction

import pytest
from sympy import Poly as SympyPoly
from sympy import discriminant, resultant, symbols

from logdisc.algebra.polykernel import (
    content,
    pseudo_remainder,
    quadric_discriminant,
    split_by_support,
    squarefree_factors,
    strip_common,
    sylvester_resultant,
    trial_divide,
    univariate_discriminant,
)
from logdisc.model.poly import Poly, PolyError, poly_document

NAMES = ("u0", "u1", "u2")


def gens(names=NAMES):
    return [Poly.variable(name, names) for name in names]


def test_product_of_sum_and_difference():
    u0, u1, _ = gens()
    assert (u0 + u1) * (u0 - u1) == u0 * u0 - u1 * u1


def test_operands_over_different_variables_merge_by_name():
    x = Poly.variable("x")
    u = Poly.variable("u")
    total = x * x - u
    assert total.vars == ("x", "u")
    assert total.derivative("x") == 2 * Poly.variable("x")


def test_degree_conventions():
    u0, u1, _ = gens()
    f = u0 * u0 * u1
    assert f.degree() == 3
    assert f.degree("u0") == 2
    assert f.degree("w") == 0
    assert Poly.zero(NAMES).degree() == -1


def test_canonical_scaling():
    u0, u1, _ = gens()
    assert (u0 * Fraction(3, 2) - u1 * 3).canonical() == u0 - u1 * 2
    assert (-(u0 * u0)).canonical() == u0 * u0
    with pytest.raises(PolyError):
        Poly.zero(NAMES).canonical()


def test_render_compact():
    t = Poly.variable("t")
    assert (t * t - t * 5 + 6).render(compact=True) == "t^2-5*t+6"
    assert (t * t - t * 5 + 6).render() == "t^2 - 5*t + 6"


def test_poly_document_lists_terms_in_grevlex_order():
    u0, u1 = gens(("u0", "u1"))
    doc = poly_document(u0 * u0 - u1 * 3)
    assert doc == {"vars": ["u0", "u1"], "terms": [{"c": "1", "e": [2, 0]}, {"c": "-3", "e": [0, 1]}]}


def test_partial_and_evaluate_are_exact():
    u0, u1, u2 = gens()
    f = u0 * u1 + u2 * Fraction(1, 3)
    assert f.evaluate([1, 2, 3]) == Fraction(3)
    assert f.partial({"u2": 3}) == u0 * u1 + 1


def test_homogenize_then_dehomogenize():
    x = Poly.variable("x")
    f = x * x * x + x + 1
    h = f.homogenize("z")
    assert h.is_homogeneous()
    assert h.dehomogenize("z") == f


def test_resultant_of_linear_forms():
    names = ("x", "a", "b")
    x, a, b = gens(names)
    assert sylvester_resultant(x - a, x - b, "x") == a - b


def test_resultant_of_identical_polynomials_vanishes():
    names = ("x", "a")
    x, a = gens(names)
    f = x * x + a * x + 1
    assert sylvester_resultant(f, f, "x").is_zero()


def test_resultant_matches_sympy():
    names = ("x", "a", "b")
    x, a, b = gens(names)
    f = x * x * x + a * x + b
    g = x * x * a - b * x + 1
    X, A, B = symbols("x a b")
    expected = resultant(X**3 + A * X + B, A * X**2 - B * X + 1, X)
    ours = sylvester_resultant(f, g, "x")
    ref = SympyPoly(expected, A, B)
    assert ours.term_count() == len(ref.terms())
    for monom, coeff in ref.terms():
        assert ours.coefficient({"a": monom[0], "b": monom[1]}) == Fraction(int(coeff.p), int(coeff.q))


def test_quadratic_discriminant_is_textbook():
    names = ("x", "a", "b", "c")
    x, a, b, c = gens(names)
    disc = univariate_discriminant(a * x * x + b * x + c, "x")
    assert disc == b * b - a * c * 4


def test_cubic_discriminant_matches_sympy():
    names = ("x", "p", "q")
    x, p, q = gens(names)
    ours = univariate_discriminant(x * x * x + p * x + q, "x")
    X, P, Q = symbols("x p q")
    assert SympyPoly(discriminant(X**3 + P * X + Q, X), P, Q) == SympyPoly(-4 * P**3 - 27 * Q**2, P, Q)
    assert ours == p * p * p * (-4) - q * q * 27


def test_modular_path_agrees_with_direct_determinant():
    from logdisc.config import EliminationSettings

    names = ("x", "a", "b")
    x, a, b = gens(names)
    f = x**4 + a * x * x + b * x + 1
    g = x**3 - b * x + a
    direct = sylvester_resultant(f, g, "x", EliminationSettings(modular_threshold=100))
    modular = sylvester_resultant(f, g, "x", EliminationSettings(modular_threshold=2))
    assert direct == modular


def test_trial_divide_counts_multiplicity():
    u0, u1, _ = gens()
    assert trial_divide(u0 * u0 * u1, u0) == (u1, 2)
    f = u0 + u1
    assert trial_divide(f, u0) == (f, 0)


def test_strip_common_removes_shared_factors():
    u0, u1, u2 = gens()
    f = (u0 + u1) ** 2 * (u1 - u2)
    rest, removed = strip_common(f, (u0 + u1) * u2)
    assert rest == u1 - u2
    assert removed == (u0 + u1) ** 2


def test_content_and_support_split():
    u0, u1, u2 = gens()
    f = (u0 + u1) * (u2 * u2 + 1)
    assert content(f, "u2") == u0 + u1
    pieces = split_by_support(f)
    assert sorted(p.render() for p in pieces) == sorted([(u0 + u1).render(), (u2 * u2 + 1).render()])


def test_squarefree_factors():
    u0, u1, _ = gens()
    factors = dict((p.render(), k) for p, k in squarefree_factors((u0 - u1) ** 3 * (u0 + u1)))
    assert factors == {(u0 - u1).render(): 3, (u0 + u1).render(): 1}


def test_quadric_discriminant_of_unit_form():
    u0, u1, u2 = gens()
    assert quadric_discriminant(u0 * u0 + u1 * u1 + u2 * u2) == 1
    v0, v1 = gens(("v0", "v1"))
    assert quadric_discriminant(v0 * v1 * 2) == -1


def test_pseudo_remainder_has_lower_degree():
    names = ("x", "a")
    x, a = gens(names)
    g = a * x * x + x + 1
    f = x**3 + a
    r = pseudo_remainder(f, g, "x")
    assert r.degree("x") < 2
    # lc(g)^2 * f - r is a multiple of g
    assert (a * a * f - r).exact_div(g) is not None
