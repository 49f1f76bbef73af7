import math
from fractions import Fraction

import pytest

from simpson_nd.errors import NodeOutsideRegion, RegionMismatch
from simpson_nd.exactness import (
    degree_targets,
    derive_lambda_rule,
    exactness_degree,
    lambda_from_equations,
    residual,
    solve_lambda,
    solve_weights,
)
from simpson_nd.models.polynomial import MonomialPoly, graded_monomials, monomial_value, unit_index
from simpson_nd.models.region import Cube, Simplex, UnitDisc
from simpson_nd.models.report import Infeasible, Underdetermined, UniqueSolution
from simpson_nd.models.rule import (
    CATALOG,
    CubatureRule,
    cr1,
    cr3,
    cr4,
    cr5,
    midpoint_rule,
    named_rule,
    vertex_rule,
)
from simpson_nd.models.scalar import PiMultiple

TRAPEZOID_NODES = [(Fraction(5, 9), Fraction(7, 9)), (0, 0), (1, 0), (0, 1), (1, 2)]


@pytest.mark.parametrize("name", list(CATALOG))
def test_named_rules_reach_their_claimed_degree(name):
    rule = named_rule(name, 3 if CATALOG[name].takes_dimension else None)
    report = exactness_degree(rule, rule.claimed_degree + 2)
    assert report.degree == rule.claimed_degree
    assert report.failing is not None
    assert sum(report.failing) == rule.claimed_degree + 1


def test_cr3_failure_witness():
    report = exactness_degree(cr3(3), 5)
    assert report.degree == 3
    assert report.failing == (4, 0, 0)
    assert report.residual == Fraction(1, 120)
    assert report.tested == 5


def test_cr4_report():
    report = exactness_degree(cr4(), 4)
    assert report.degree == 3
    assert report.failing == (4, 0)
    assert report.residual == Fraction(5, 24) - Fraction(1, 5)
    assert residual(cr4(), (3, 1)) == 0
    assert residual(cr4(), (1, 3)) == 0


def test_midpoint_rule_is_exact_for_linear_functions():
    report = exactness_degree(midpoint_rule(Simplex(2)), 2)
    assert report.degree == 1
    assert report.residual == Fraction(1, 18) - Fraction(1, 12)


def test_report_without_failure():
    report = exactness_degree(cr4(), 2)
    assert report.degree == 2
    assert report.failing is None
    assert report.to_dict()["failing"] is None


def test_degree_minus_one_for_a_wrong_constant():
    rule = CubatureRule(Cube(2), ((Fraction(1, 2), Fraction(1, 2)),), (Fraction(2),))
    assert exactness_degree(rule, 3).degree == -1


@pytest.mark.parametrize("n", range(3, 7))
def test_cr1_mixed_cubic_residual(n):
    alpha = (1, 1, 1) + (0,) * (n - 3)
    expected = Fraction(1, (n + 1) * math.factorial(n + 2)) - Fraction(1, math.factorial(n + 3))
    assert residual(cr1(n), alpha) == expected


def test_cr5_cubic_residual():
    assert residual(cr5(), (3, 0)) == Fraction(336001, 762048) - Fraction(9, 20)


@pytest.mark.parametrize("n", range(1, 6))
def test_lambda_on_simplices(n):
    region = Simplex(n)
    targets = [tuple(a + b for a, b in zip(unit_index(n, 0), unit_index(n, n - 1)))] if n > 1 else [(2,)]
    outcome = solve_lambda(midpoint_rule(region), vertex_rule(region), targets)
    if n == 1:
        assert outcome.values == (Fraction(2, 3),)
    else:
        assert outcome.values == (Fraction(n + 1, n + 2),)


@pytest.mark.parametrize("n", range(1, 5))
def test_lambda_on_cubes(n):
    outcome = solve_lambda(midpoint_rule(Cube(n)), vertex_rule(Cube(n)), [unit_index(n, 0, 2)])
    assert isinstance(outcome, UniqueSolution)
    assert outcome.values == (Fraction(2, 3),)


def test_derived_rules_agree_with_cr1_and_cr3():
    for region, named in ((Simplex(3), cr1(3)), (Cube(3), cr3(3))):
        outcome, rule = derive_lambda_rule(region, degree_targets(3, 2))
        assert isinstance(outcome, UniqueSolution)
        for alpha in graded_monomials(3, 4):
            mono = MonomialPoly.monomial(alpha)
            assert rule.apply_poly(mono) == named.apply_poly(mono)


def test_hexagon_lambda_is_infeasible(hexagon):
    outcome, rule = derive_lambda_rule(hexagon, [(2, 0), (0, 2)])
    assert isinstance(outcome, Infeasible)
    assert rule is None
    assert len(outcome.equations) == 2
    assert outcome.mismatch != 0


def test_trapezoid_lambda_fails_on_xy(trapezoid_region):
    outcome, _ = derive_lambda_rule(trapezoid_region, [(1, 0), (0, 1), (1, 1)])
    assert isinstance(outcome, Infeasible)
    assert "x*y" in outcome.equations


def test_disc_uses_the_four_point_circle_rule():
    outcome, rule = derive_lambda_rule(UnitDisc(), [(2, 0)])
    assert outcome.values == (Fraction(1, 2),)
    assert rule.weights[0] == PiMultiple(Fraction(1, 2))


def test_all_zero_equations_are_underdetermined():
    outcome = lambda_from_equations([("x", Fraction(0), Fraction(0))])
    assert isinstance(outcome, Underdetermined)


def test_lambda_equations_must_agree():
    outcome = lambda_from_equations([("a", Fraction(1), Fraction(1, 2)), ("b", Fraction(2), Fraction(3))])
    assert isinstance(outcome, Infeasible)
    assert outcome.equations == ("a", "b")
    assert outcome.mismatch == -2


def test_solve_lambda_rejects_different_regions():
    with pytest.raises(RegionMismatch):
        solve_lambda(midpoint_rule(Cube(2)), vertex_rule(Simplex(2)), [(2, 0)])


def test_trapezoid_weight_system_is_infeasible(trapezoid_region):
    outcome = solve_weights(trapezoid_region, TRAPEZOID_NODES, degree_targets(2, 2))
    assert isinstance(outcome, Infeasible)
    assert outcome.mismatch != 0


def test_infeasibility_witness_combines_the_equations(trapezoid_region):
    targets = degree_targets(2, 2)
    outcome = solve_weights(trapezoid_region, TRAPEZOID_NODES, targets)
    rows = [[monomial_value(alpha, node) for node in TRAPEZOID_NODES] for alpha in targets]
    rhs = [trapezoid_region.moment(alpha) for alpha in targets]
    y = outcome.multipliers
    assert len(y) == len(targets)
    for column in range(len(TRAPEZOID_NODES)):
        assert sum(k * row[column] for k, row in zip(y, rows)) == 0
    assert sum(k * value for k, value in zip(y, rhs)) == outcome.mismatch
    assert "x*y" in outcome.equations


def test_trapezoid_weights_without_xy(trapezoid_region):
    outcome = solve_weights(trapezoid_region, TRAPEZOID_NODES, degree_targets(2, 2, exclude=[(1, 1)]))
    assert outcome.values == (
        Fraction(81, 80),
        Fraction(23, 240),
        Fraction(17, 120),
        Fraction(29, 240),
        Fraction(31, 240),
    )


def test_unique_weights_zero_every_target(trapezoid_region):
    targets = degree_targets(2, 2, exclude=[(1, 1)])
    outcome = solve_weights(trapezoid_region, TRAPEZOID_NODES, targets)
    rule = CubatureRule(trapezoid_region, TRAPEZOID_NODES, outcome.values)
    assert all(residual(rule, alpha) == 0 for alpha in targets)


def test_cr1_weights_from_the_weight_system():
    region = Simplex(2)
    nodes = [region.centroid()] + region.vertices()
    outcome = solve_weights(region, nodes, degree_targets(2, 2))
    assert outcome.values == (Fraction(3, 8), Fraction(1, 24), Fraction(1, 24), Fraction(1, 24))


def test_solve_weights_checks_membership():
    with pytest.raises(NodeOutsideRegion):
        solve_weights(Simplex(2), [(1, 1)], [(0, 0)])


def test_degree_targets_exclusion():
    targets = degree_targets(2, 2, exclude=[(1, 1)])
    assert (1, 1) not in targets
    assert targets[0] == (0, 0)
    assert len(targets) == 5
