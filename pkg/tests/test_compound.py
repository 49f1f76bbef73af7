import math
from fractions import Fraction

import numpy as np
import pytest

from simpson_nd.compound import (
    AffineMap,
    CompoundEstimate,
    compound_apply,
    convergence_order,
    convergence_study,
    exact_children_area,
    map_rule,
    reference_integral,
    subdivide_triangle,
)
from simpson_nd.errors import DegenerateErrors, SingularMap, UnsupportedRegion
from simpson_nd.exactness import exactness_degree
from simpson_nd.models.region import Cube, UnitDisc
from simpson_nd.models.polynomial import graded_monomials
from simpson_nd.models.rule import cr1, cr3, cr4, triangle_midedge

HALF = Fraction(1, 2)
SQUARE_EXP = (math.e - 1) ** 2


def exp_sum(x, y):
    return np.exp(x + y)


def test_identity_map_returns_the_rule():
    rule = cr4()
    assert map_rule(rule, AffineMap.identity(2)) is rule


def test_scaled_square_rule():
    mapped = map_rule(cr4(), AffineMap(((HALF, 0), (0, HALF)), (0, 0)))
    assert mapped.weight_sum() == Fraction(1, 4)
    assert (Fraction(1, 4), Fraction(1, 4)) in mapped.nodes


def test_mapped_midedge_keeps_its_degree():
    affine = AffineMap.onto_triangle((0, 0), (2, 0), (1, 3))
    mapped = map_rule(triangle_midedge(), affine)
    assert mapped.weight_sum() == 3
    assert exactness_degree(mapped, 3).degree == 2


def test_singular_map_is_rejected():
    with pytest.raises(SingularMap):
        map_rule(cr4(), AffineMap(((1, 2), (2, 4)), (0, 0)))
    with pytest.raises(SingularMap):
        map_rule(cr4(), AffineMap.identity(3))


def test_level_zero_is_the_rule_itself():
    estimate = compound_apply(cr4(), 0, lambda x, y: 1.0)
    assert estimate.cells == 1
    assert estimate.estimate == pytest.approx(1.0, abs=1e-15)


def test_cr4_compound_on_exp():
    estimate = compound_apply(cr4(), 4, exp_sum)
    assert estimate.cells == 256
    assert estimate.estimate == pytest.approx(SQUARE_EXP, abs=1e-6)


def test_simpson_compound_on_the_interval():
    estimate = compound_apply(cr1(1), 3, np.exp)
    assert estimate.cells == 8
    assert estimate.estimate == pytest.approx(math.e - 1, abs=1e-6)


def test_cr3_on_the_interval_converges_with_order_four():
    estimates = [compound_apply(cr3(1), level, np.exp) for level in range(1, 6)]
    assert [e.cells for e in estimates] == [2, 4, 8, 16, 32]
    assert convergence_order(estimates, math.e - 1) == pytest.approx(4.0, abs=0.1)


def test_reference_integral_on_the_unit_interval():
    assert reference_integral(cr1(1).region, np.exp) == pytest.approx(math.e - 1, rel=1e-12)
    assert reference_integral(cr3(1).region, np.exp) == pytest.approx(math.e - 1, rel=1e-12)


@pytest.mark.parametrize("rule", [cr1(1), cr4(), triangle_midedge()], ids=lambda r: r.label)
def test_cell_weights_add_up_to_the_volume(rule):
    volume = float(rule.region.volume())
    for level in range(4):
        estimate = compound_apply(rule, level, lambda *xs: np.ones_like(xs[0]))
        assert estimate.estimate == pytest.approx(volume, rel=1e-13)


@pytest.mark.parametrize("rule, degree", [(cr4(), 3), (triangle_midedge(), 2)], ids=["CR4", "TriangleMidedge"])
def test_compounding_keeps_every_exact_monomial_exact(rule, degree):
    for alpha in graded_monomials(2, degree):
        exact = float(rule.region.moment(alpha))
        for level in range(4):
            estimate = compound_apply(rule, level, lambda x, y: x ** alpha[0] * y ** alpha[1])
            assert estimate.estimate == pytest.approx(exact, rel=1e-12), (alpha, level)


def test_midedge_compound_is_exact_for_quadratics():
    for level in range(4):
        estimate = compound_apply(triangle_midedge(), level, lambda x, y: x ** 2)
        assert estimate.cells == 4 ** level
        assert estimate.estimate == pytest.approx(1 / 12, rel=1e-12)


def test_workers_do_not_change_the_estimate():
    serial = compound_apply(cr4(), 3, exp_sum)
    threaded = compound_apply(cr4(), 3, exp_sum, workers=4)
    assert threaded.cells == serial.cells
    assert threaded.estimate == pytest.approx(serial.estimate, rel=1e-14)


def test_compounding_needs_a_supported_region():
    with pytest.raises(UnsupportedRegion):
        compound_apply(cr1(3), 1, lambda x, y, z: x)
    with pytest.raises(ValueError):
        compound_apply(cr4(), -1, exp_sum)


def test_cr4_converges_with_order_four():
    estimates = [compound_apply(cr4(), level, exp_sum) for level in range(1, 5)]
    assert convergence_order(estimates, SQUARE_EXP) == pytest.approx(4.0, abs=0.3)


def test_midedge_converges_at_least_cubically():
    estimates = [compound_apply(triangle_midedge(), level, exp_sum) for level in range(1, 6)]
    assert convergence_order(estimates, 1.0) >= 2.7


def test_degenerate_error_sequences():
    flat = [CompoundEstimate(level, 4 ** level, 1.0) for level in range(3)]
    with pytest.raises(DegenerateErrors):
        convergence_order(flat, 1.0)
    growing = [CompoundEstimate(level, 4 ** level, 1.0 + 0.1 * (level + 1)) for level in range(3)]
    with pytest.raises(DegenerateErrors):
        convergence_order(growing, 1.0)
    with pytest.raises(DegenerateErrors):
        convergence_order(flat[:2], 0.0)


def test_convergence_study_rows():
    rows = convergence_study(cr4(), [1, 2, 3], exp_sum, SQUARE_EXP)
    assert [row.level for row in rows] == [1, 2, 3]
    assert rows[0].ratio is None
    assert rows[2].ratio == pytest.approx(16.0, rel=0.1)


def test_children_cover_the_parent():
    children = subdivide_triangle(((0, 0), (3, 0), (1, 2)))
    assert len(children) == 4
    assert exact_children_area(((0, 0), (3, 0), (1, 2))) == (3, 3)


def test_reference_integrals():
    assert reference_integral(Cube(2), lambda x, y: math.exp(x + y)) == pytest.approx(SQUARE_EXP, rel=1e-10)
    assert reference_integral(triangle_midedge().region, lambda x, y: math.exp(x + y)) == pytest.approx(1.0, rel=1e-10)
    assert reference_integral(UnitDisc(), lambda x, y: x * x) == pytest.approx(math.pi / 4, rel=1e-10)


def test_reference_integral_over_a_polygon(trapezoid_region):
    assert reference_integral(trapezoid_region, lambda x, y: x * y) == pytest.approx(17 / 24, rel=1e-10)
