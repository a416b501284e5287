from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from logdisc.algebra.polykernel import quadric_discriminant, univariate_discriminant
from logdisc.discriminant import pointline
from logdisc.discriminant.certify import certify_factor, sample_zero_locus
from logdisc.discriminant.degree import (
    NOT_APPLICABLE,
    expected_degree,
    hurwitz_containment_check,
    positivity_scan,
)
from logdisc.discriminant.elimination import (
    EliminationError,
    compute_discriminant,
    default_degree_bound,
    logdisc_elim,
    spurious_linear_forms,
)
from logdisc.discriminant.pointline import (
    FULL_RES_ROUTE_MAX_POINTS,
    PointLineError,
    homogeneous_g1,
    likelihood_pair,
    logdisc_d1,
    res_route,
)
from logdisc.model.arrangement import points_arrangement, simplex_arrangement
from logdisc.model.discriminant import Method
from logdisc.model.poly import Poly, PolyError
from logdisc.model.solutions import Verdict
from logdisc.moduli.m0m import m05_discriminant
from logdisc.numeric.membership import membership_numeric

U3 = ("u0", "u1", "u2")


def three_point_quadric(b: Fraction) -> Poly:
    u0, u1, u2 = (Poly.variable(n, U3) for n in U3)
    return (
        u0 * u0 * (b - 1) ** 2
        + u0 * u1 * (2 * b * (b - 1))
        + u1 * u1 * b**2
        - u0 * u2 * (2 * (b - 1))
        + u1 * u2 * (2 * b)
        + u2 * u2
    )


def test_three_points_give_the_quadric():
    result = logdisc_d1([0, 1, 2])
    assert result.method is Method.DISC_D1
    assert len(result.factors) == 1
    u0, u1, u2 = (Poly.variable(n, U3) for n in U3)
    expected = u0 * u0 + u0 * u1 * 4 + u1 * u1 * 4 - u0 * u2 * 2 + u1 * u2 * 4 + u2 * u2
    assert result.factors[0].poly == expected
    assert result.factors[0].certified
    assert result.total_degree == 2 == result.expected_degree
    assert "ternary quadric discriminant -16" in result.notes


@pytest.mark.parametrize("b", [Fraction(2), Fraction(5, 3), Fraction(-4), Fraction(1, 7)])
def test_three_point_quadric_and_its_discriminant(b):
    g1, _ = likelihood_pair([0, 1, b])
    disc = univariate_discriminant(g1, "x")
    assert disc == three_point_quadric(b)
    assert quadric_discriminant(disc) == -4 * b**2 * (b - 1) ** 2
    assert logdisc_d1([0, 1, b]).factors[0].poly == three_point_quadric(b).canonical()


def test_bihomogeneous_equation():
    g = homogeneous_g1([0, 1, 2])
    assert g.vars == ("x0", "x1", "u0", "u1", "u2")
    assert g.is_homogeneous(["x0", "x1"])
    assert g.dehomogenize("x0") == likelihood_pair([0, 1, 2], var="x1")[0]


def test_resultant_route_splits_off_linear_factors():
    quotient, multiplicities = res_route([0, 1, 2])
    assert multiplicities == [1, 1, 1, 1]
    assert quotient.canonical() == logdisc_d1([0, 1, 2]).factors[0].poly


def test_four_points_give_a_quartic_surface():
    result = logdisc_d1([0, 1, 2, 3])
    factor = result.factors[0].poly
    assert factor.degree() == 4
    assert factor.is_homogeneous()
    assert factor.vars == ("u0", "u1", "u2", "u3")
    assert any("agrees (full)" in note for note in result.notes)


def _degree_law_cases():
    for count in (3, 4, 5, 6, 7):
        for trial in range(10):
            fast = count == 3 or (count <= 5 and trial == 0)
            marks = () if fast else (pytest.mark.slow,)
            yield pytest.param(count, trial, marks=marks, id=f"{count}-points-{trial}")


@pytest.mark.parametrize("count, trial", _degree_law_cases())
def test_degree_law_on_random_points(count, trial):
    rng = np.random.default_rng(1000 * count + trial)
    points = [int(v) for v in rng.choice(np.arange(-40, 41), size=count, replace=False)]
    result = logdisc_d1(points, seed=trial)
    assert result.total_degree == 2 * (count - 2) == result.expected_degree
    assert result.factors[0].poly.is_homogeneous()
    assert result.factors[0].certified
    assert not any("DISAGREES" in note for note in result.notes)
    if count > FULL_RES_ROUTE_MAX_POINTS:
        assert any("probabilistic" in note for note in result.notes)


def test_resultant_route_as_the_reported_factor():
    result = logdisc_d1([0, 1, 2], via_resultant=True)
    assert result.method is Method.RES_D1
    assert result.factors[0].poly == logdisc_d1([0, 1, 2]).factors[0].poly
    assert result.factors[0].certified
    assert compute_discriminant(points_arrangement([0, 1, 2]), method="res").method is Method.RES_D1


def test_failed_cross_check_leaves_the_factor_uncertified(monkeypatch, caplog):
    u0, u1, u2 = (Poly.variable(n, U3) for n in U3)
    monkeypatch.setattr(pointline, "res_route", lambda points: (u0 * u1 + u2 * u2, [1, 1, 1, 1]))
    result = logdisc_d1([0, 1, 2])
    factor = result.factors[0]
    assert not factor.certified
    assert factor.note == "resultant cross-check failed"
    assert any("DISAGREES" in note for note in result.notes)
    assert "cross-check failed" in caplog.text


def test_extra_linear_multiplicity_fails_the_cross_check(monkeypatch):
    quotient, _ = res_route([0, 1, 2])
    monkeypatch.setattr(pointline, "res_route", lambda points: (quotient, [1, 2, 1, 1]))
    assert not logdisc_d1([0, 1, 2]).factors[0].certified


@pytest.mark.parametrize("points", [[0, 1, 3], pytest.param([0, 1, 3, 7, 12], marks=pytest.mark.slow)])
def test_discriminant_follows_permutations_of_the_points(points):
    base = logdisc_d1(points).factors[0].poly
    order = list(range(len(points)))[::-1]
    order[0], order[1] = order[1], order[0]
    permuted = logdisc_d1([points[i] for i in order]).factors[0].poly
    names = base.vars
    assert base.rename({names[old]: names[new] for new, old in enumerate(order)}).with_vars(names).canonical() == permuted


@pytest.mark.parametrize("scale, shift", [(2, 0), (Fraction(-1, 3), 5), (7, Fraction(1, 2))])
def test_discriminant_is_invariant_under_affine_changes_of_the_line(scale, shift):
    points = [0, 1, 3]
    moved = [scale * p + shift for p in points]
    assert logdisc_d1(moved).factors[0].poly == logdisc_d1(points).factors[0].poly


def test_two_points_give_the_constant_discriminant():
    result = logdisc_d1([0, 1])
    assert len(result.factors) == 1
    factor = result.factors[0]
    assert factor.poly.is_constant()
    assert factor.note == "constant"
    assert result.total_degree == 0 == result.expected_degree
    assert any("Delta_log = 1" in note for note in result.notes)


def test_repeated_points_are_rejected():
    with pytest.raises(PointLineError, match="repeated points"):
        logdisc_d1([0, 1, 1])


def test_dispatch_on_the_line():
    arr = points_arrangement([0, 1, 2])
    assert compute_discriminant(arr).method is Method.DISC_D1
    assert compute_discriminant(arr, method="d1").factors[0].poly == logdisc_d1([0, 1, 2]).factors[0].poly


def test_dispatch_errors(m05):
    with pytest.raises(EliminationError, match="d = 1"):
        compute_discriminant(m05, method="d1")
    with pytest.raises(EliminationError, match="Unknown method"):
        compute_discriminant(m05, method="groebner")


def test_expected_degree(m05, generic_lines):
    assert expected_degree(points_arrangement([0, 1, 5])) == 2
    assert expected_degree(generic_lines) == 12
    assert expected_degree(m05) == NOT_APPLICABLE
    assert default_degree_bound(m05) == 24


def test_spurious_forms_of_m05(m05):
    sets = spurious_linear_forms(m05)
    assert [0] in sets and [0, 1, 2, 3, 4] in sets
    # coordinate supports and the parallel classes
    assert [0, 2, 4] in sets and [1, 3, 4] in sets
    assert [0, 2] in sets and [1, 3] in sets


def test_m05_discriminant_by_elimination(m05):
    result = logdisc_elim(m05, seed=0)
    assert not result.partial
    assert [f.poly for f in result.factors] == [m05_discriminant()]
    assert result.factors[0].certified
    assert result.total_degree == 4
    assert any(entry.reason.startswith("wall trace") for entry in result.ledger)
    assert all(not entry.poly.is_constant() and entry.multiplicity >= 1 for entry in result.ledger)
    assert len(result.to_dict()["ledger"]) == len(result.ledger)


@pytest.mark.parametrize("d", [2, pytest.param(3, marks=pytest.mark.slow), pytest.param(4, marks=pytest.mark.slow)])
def test_simplex_has_no_discriminant(d):
    result = logdisc_elim(simplex_arrangement(d), seed=0)
    assert result.factors == []


@pytest.mark.slow
def test_reducible_six_planes(reducible_six_planes):
    names = reducible_six_planes.u_names
    u = [Poly.variable(n, names) for n in names]
    first = u[0] * u[0] * 144 + u[0] * u[1] * 120 + u[0] * u[2] * 168 + u[1] * u[1] * 25 - u[1] * u[2] * 70 + u[2] * u[2] * 49
    second = u[3] * u[3] - u[3] * u[4] * 2 + u[3] * u[5] * 4 + u[4] * u[4] + u[4] * u[5] * 4 + u[5] * u[5] * 4
    result = logdisc_elim(reducible_six_planes, seed=0)
    certified = {f.poly for f in result.factors if f.certified}
    assert first in certified and second in certified


@pytest.mark.slow
def test_generic_lines_have_degree_twelve(generic_lines):
    result = logdisc_elim(generic_lines, seed=0)
    assert len(result.factors) == 1
    assert result.factors[0].degree == 12
    assert result.factors[0].certified


def test_positivity_of_m05_discriminant():
    report = positivity_scan(m05_discriminant(), 2000, seed=0, witnesses=[[Fraction(-1, 2), 1, 2, Fraction(-1, 2), -1]])
    assert report.passed
    assert report.min_value > 0
    assert report.witnesses[0][1] == Fraction(-7, 16)
    assert report.to_dict()["witnesses"][0]["value"] == "-7/16"


def test_positivity_of_a_monomial():
    names = ("u0", "u1")
    f = Poly.variable("u0", names) * Poly.variable("u1", names)
    assert positivity_scan(f, 100).passed


def test_positivity_detects_sign_changes():
    names = ("u0", "u1")
    f = Poly.variable("u0", names) - Poly.variable("u1", names)
    report = positivity_scan(f, 200, seed=1)
    assert not report.passed
    assert report.nonpositive_points


def test_positivity_scan_rejects_inhomogeneous_input():
    names = ("u0", "u1")
    f = Poly.variable("u0", names) * Poly.variable("u1", names) + 1
    with pytest.raises(PolyError, match="homogeneous"):
        positivity_scan(f, 10)


def test_hurwitz_containment():
    names = ("u0", "u1", "u2")
    u0, u1, u2 = (Poly.variable(n, names) for n in names)
    f = u0 * u1 + u2 * u2
    g = u0 - u2
    report = hurwitz_containment_check([f, g], f * f * g * (u1 + u2) * 3)
    assert report.contained
    assert report.multiplicities == [2, 1]
    assert report.cofactor == u1 + u2
    assert not hurwitz_containment_check([u0 + u1], f).contained


def test_sampled_zero_is_on_the_hypersurface():
    f = m05_discriminant()
    point = sample_zero_locus(f, np.random.default_rng(4))
    assert point is not None
    if all(isinstance(v, Fraction) for v in point):
        assert abs(f.evaluate(point)) < 1e-20
    else:
        assert abs(f.evaluate(point, coerce=complex)) < 1e-6


def test_certify_rejects_a_spurious_factor(m05):
    names = m05.u_names
    spurious = Poly.variable("u0", names) + Poly.variable("u1", names) * 3 - Poly.variable("u4", names) * 2
    assert not certify_factor(m05, spurious, np.random.default_rng(0)).certified


@pytest.mark.slow
def test_zero_set_consistency_of_the_m05_discriminant(m05):
    f = m05_discriminant()
    rng = np.random.default_rng(8)
    verdicts = []
    while len(verdicts) < 50:
        point = sample_zero_locus(f, rng)
        if point is not None:
            verdicts.append(membership_numeric(m05, point, seed=len(verdicts)).verdict)
    assert Verdict.OUTSIDE not in verdicts
    assert verdicts.count(Verdict.NEAR_DISCRIMINANT) >= 45
    for trial in range(50):
        u = [Fraction(int(v), 7) for v in rng.integers(1, 50, size=5)]
        assert membership_numeric(m05, u, seed=trial).verdict is Verdict.OUTSIDE
