from __future__ import annotations

import numpy as np
import pytest

from logdisc.matroid.characteristic import characteristic_polynomial, ml_degree, region_counts
from logdisc.matroid.validate import (
    MAX_SUBSET_FORMS,
    check_size,
    irreducibility_hypothesis,
    is_uniform_A,
    is_uniform_L,
    sample_generic_arrangement,
    validate,
)
from logdisc.model.arrangement import (
    ArrangementError,
    affine_change,
    make_arrangement,
    permute_forms,
    points_arrangement,
    scale_forms,
    simplex_arrangement,
)
from logdisc.model.poly import Poly
from logdisc.moduli.m0m import m0m_arrangement


def test_m05_lines(m05):
    assert m05.d == 2
    assert m05.n_plus_1 == 5
    assert m05.render_forms() == ["x1", "x2", "x1-1", "x2-1", "-x1+x2"]
    assert m05.labels == ("s13", "s14", "s23", "s24", "s34")
    assert m05.label_map()["u4"] == "s34"


def test_three_points_on_a_line():
    arr = make_arrangement(1, [0, -1, -3], [[1], [1], [1]])
    assert arr.n == 2
    assert arr == points_arrangement([0, 1, 3])


def test_zero_row_is_rejected():
    with pytest.raises(ArrangementError, match="not essential/non-central"):
        make_arrangement(2, [0, 1, 2], [[1, 0], [0, 1], [0, 0]])


def test_central_arrangement_is_rejected():
    with pytest.raises(ArrangementError, match="not essential/non-central"):
        make_arrangement(2, [0, 0, 0], [[1, 0], [0, 1], [1, 1]])


def test_repeated_hyperplane_is_rejected():
    with pytest.raises(ArrangementError, match="repeated hyperplane 0,2"):
        make_arrangement(1, [1, 2, 2], [[1], [1], [2]])


def test_validate_m05(m05):
    report = validate(m05)
    assert report.essential
    # x1, x2 and x2 - x1 all pass through the origin
    assert not report.uniform_L
    assert not report.uniform_A
    assert not report.doubly_uniform
    assert report.flats_at_infinity
    assert report.witness == [0, 2]


def test_validate_generic(generic_lines):
    report = validate(generic_lines)
    assert report.doubly_uniform
    assert not report.flats_at_infinity
    assert report.witness is None
    assert irreducibility_hypothesis(generic_lines) is not None


def test_simplex_is_essential(simplex2):
    assert validate(simplex2).essential


def test_characteristic_polynomial_m05(m05):
    t = Poly.variable("t")
    chi = characteristic_polynomial(m05)
    assert chi == t * t - t * 5 + 6
    assert chi.render(compact=True) == "t^2-5*t+6"
    assert region_counts(m05) == (12, 2)
    assert ml_degree(m05) == 2


def test_characteristic_polynomial_points():
    t = Poly.variable("t")
    assert characteristic_polynomial(points_arrangement([0, 1, 5])) == t - 3
    assert region_counts(points_arrangement([0, 1, 5, 7])) == (5, 3)


def test_simplex_has_one_bounded_region(simplex2):
    t = Poly.variable("t")
    assert characteristic_polynomial(simplex2) == t * t - t * 3 + 3
    assert region_counts(simplex2) == (7, 1)
    assert ml_degree(simplex_arrangement(3)) == 1


def test_ml_degree_of_generic_arrangement(generic_lines):
    # C(n, d) for n + 1 = 5 lines in the plane
    assert ml_degree(generic_lines) == 6


@pytest.mark.parametrize("m, expected", [(5, 2), (6, 6)])
def test_ml_degree_of_moduli_arrangements(m, expected):
    arr, _ = m0m_arrangement(m)
    assert ml_degree(arr) == expected


def test_invariants_survive_coordinate_changes(m05):
    chi = characteristic_polynomial(m05)
    moved = affine_change(m05, [[2, 1], [1, 1]], [3, -1])
    assert characteristic_polynomial(moved) == chi
    assert characteristic_polynomial(scale_forms(m05, [2, -1, 3, 5, -7])) == chi
    assert characteristic_polynomial(permute_forms(m05, [4, 3, 2, 1, 0])) == chi


def test_sampled_arrangements_are_doubly_uniform():
    rng = np.random.default_rng(11)
    for d, count in [(1, 4), (2, 5), (3, 6)]:
        arr = sample_generic_arrangement(d, count, rng)
        assert is_uniform_L(arr) and is_uniform_A(arr)


def test_size_cap():
    arr = points_arrangement(range(MAX_SUBSET_FORMS + 1))
    with pytest.raises(ArrangementError, match="size cap"):
        check_size(arr)
