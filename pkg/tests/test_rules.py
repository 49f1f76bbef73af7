import math
import random
from fractions import Fraction

import pytest

from simpson_nd.errors import NodeNotOnBoundary, NodeOutsideRegion, RegionMismatch, UnknownRule, UnsupportedRegion
from simpson_nd.models.polynomial import MonomialPoly, graded_monomials
from simpson_nd.models.region import Cube, Simplex, UnitDisc, trapezoid
from simpson_nd.models.rule import (
    CATALOG,
    CubatureRule,
    blend,
    boundary_rule,
    catalog_rules,
    cr1,
    cr2,
    cr4,
    cr5,
    cr5_root,
    cr6,
    disc_vertex_rule,
    midpoint_rule,
    named_rule,
    rule_properties,
    simplex_face_centroids,
    triangle_midedge,
    vertex_rule,
)
from simpson_nd.models.scalar import PiMultiple, is_rational, quadratic, sign, to_float


def test_midpoint_and_vertex_rules_on_the_triangle():
    m = midpoint_rule(Simplex(2))
    assert m.nodes == ((Fraction(1, 3), Fraction(1, 3)),)
    assert m.weights == (Fraction(1, 2),)
    t = vertex_rule(Simplex(2))
    assert len(t) == 3
    assert t.weights == (Fraction(1, 6),) * 3


def test_cr1_weights_in_the_plane():
    rule = cr1(2)
    assert rule.weights[0] == Fraction(3, 8)
    assert rule.weights[1:] == (Fraction(1, 24),) * 3
    assert rule.lam == Fraction(3, 4)
    assert rule.claimed_degree == 2


@pytest.mark.parametrize("n", range(1, 6))
def test_cr1_weight_formulas(n):
    rule = cr1(n)
    assert rule.weights[0] == Fraction(n + 1, (n + 2) * math.factorial(n))
    assert set(rule.weights[1:]) == {Fraction(1, math.factorial(n + 2))}
    assert rule.weight_sum() == Fraction(1, math.factorial(n))


def test_cr2_in_three_dimensions():
    rule = cr2(3)
    assert rule.lam == Fraction(-4, 5)
    assert rule.weights[0] == Fraction(-2, 15)
    assert rule.weights[1:] == (Fraction(3, 40),) * 4
    assert rule_properties(rule)["positive_weights"] is False


def test_cr2_in_the_plane_drops_the_centroid():
    rule = cr2(2)
    assert len(rule) == 3
    assert set(rule.nodes) == set(triangle_midedge().nodes)


def test_face_centroids_are_opposite_their_vertex():
    centroids = simplex_face_centroids(2)
    assert centroids[0] == (Fraction(1, 2), Fraction(1, 2))
    assert centroids[1] == (0, Fraction(1, 2))
    assert centroids[2] == (Fraction(1, 2), 0)


def test_cr4_weights():
    rule = cr4()
    assert rule.weights[0] == Fraction(1, 3)
    assert rule.weights[1:] == (Fraction(1, 6),) * 4


def test_cr5_nodes_live_in_the_quadratic_field():
    rule = cr5()
    d = cr5_root()
    assert d == quadratic(Fraction(11, 18), Fraction(1, 458), 3893)
    assert 18549 * d * d - 22671 * d + 6583 == 0
    assert rule.lam == Fraction(163, 392)
    assert any(not is_rational(x) for node in rule.nodes for x in node)
    assert rule.weight_sum() == Fraction(3, 2)
    assert all(sign(w) > 0 for w in rule.weights)


def test_cr5_summary_properties():
    props = rule_properties(cr5())
    assert props == {"positive_weights": True, "interior_nodes": 1, "boundary_nodes": 4}


def test_conjugate_root_builds_a_second_rule():
    rule = named_rule("CR5Conjugate")
    assert rule.nodes != cr5().nodes
    assert cr5_root(conjugate=True) == quadratic(Fraction(11, 18), Fraction(-1, 458), 3893)


def test_cr6_weights_are_pi_multiples():
    rule = cr6()
    assert rule.weights[0] == PiMultiple(Fraction(1, 2))
    assert rule.weights[1:] == (PiMultiple(Fraction(1, 8)),) * 4
    assert rule.apply_poly(MonomialPoly.monomial((4, 0))) == PiMultiple(Fraction(1, 4))


@pytest.mark.parametrize("k", [3, 4, 6, 8, 12])
def test_circle_rules_integrate_constants(k):
    rule = disc_vertex_rule(k)
    assert rule.weight_sum() == PiMultiple(1)
    assert all(UnitDisc().on_boundary(node) for node in rule.nodes)
    assert rule.apply_poly(MonomialPoly.monomial((1, 0))) == 0


def test_unsupported_circle_rule():
    with pytest.raises(UnsupportedRegion):
        disc_vertex_rule(5)


def test_triangle_midedge_cubic():
    assert triangle_midedge().apply_poly(MonomialPoly.monomial((3, 0))) == Fraction(1, 24)


def test_blend_requires_a_shared_region():
    with pytest.raises(RegionMismatch):
        blend(Fraction(1, 2), midpoint_rule(Simplex(2)), vertex_rule(Cube(2)))


def test_boundary_rule_rejects_interior_nodes():
    with pytest.raises(NodeNotOnBoundary):
        boundary_rule(Cube(2), [(Fraction(1, 2), Fraction(1, 2))])


def test_rule_nodes_must_lie_in_the_region():
    with pytest.raises(NodeOutsideRegion):
        CubatureRule(Simplex(2), ((1, 1),), (Fraction(1, 2),))


def test_apply_fn_matches_apply_poly():
    rule = cr5()
    poly = MonomialPoly.monomial((2, 1)) + MonomialPoly.monomial((0, 2)) * 3
    assert rule.apply_fn(poly) == pytest.approx(to_float(rule.apply_poly(poly)), rel=1e-12)


def test_cr1_apply_fn_on_exp():
    # integral of exp(x + y) over the standard triangle is 1
    assert cr1(2).apply_fn(lambda x, y: math.exp(x + y)) == pytest.approx(1.0, abs=0.02)


@pytest.mark.parametrize("name", list(CATALOG))
def test_rule_json_round_trip(name):
    rule = named_rule(name, 3 if CATALOG[name].takes_dimension else None)
    again = CubatureRule.from_dict(rule.to_dict())
    assert again == rule
    assert again.lam == rule.lam
    assert again.claimed_degree == rule.claimed_degree


def test_named_rule_lookup():
    assert named_rule("cr3(3)").region == Cube(3)
    assert named_rule("CR3", 4).region == Cube(4)
    assert named_rule("CR1").region == Simplex(2)
    assert named_rule("trianglemidedge").label == "TriangleMidedge"
    with pytest.raises(UnknownRule):
        named_rule("CR9")
    with pytest.raises(UnknownRule):
        named_rule("CR1", 0)


def test_catalog_rules_cover_the_catalog():
    rules = catalog_rules(2)
    assert [r.label for r in rules] == ["CR1(2)", "CR2(2)", "CR3(2)", "CR4", "CR5", "CR5Conjugate", "CR6", "TriangleMidedge"]


def test_trapezoid_vertex_rule():
    rule = vertex_rule(trapezoid())
    assert rule.weights == (Fraction(3, 8),) * 4


def _random_poly(rng, dimension, degree=4):
    alphas = list(graded_monomials(dimension, degree))
    terms = {rng.choice(alphas): Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(4)}
    return MonomialPoly(dimension, terms)


@pytest.mark.parametrize(
    "m, t",
    [
        (midpoint_rule(Simplex(2)), vertex_rule(Simplex(2))),
        (midpoint_rule(Cube(3)), vertex_rule(Cube(3))),
        (midpoint_rule(trapezoid()), vertex_rule(trapezoid())),
    ],
    ids=["triangle", "cube3", "trapezoid"],
)
def test_blend_is_affine_in_lambda(m, t):
    rng = random.Random(31)
    for _ in range(25):
        lam = Fraction(rng.randint(-20, 20), rng.randint(1, 20))
        poly = _random_poly(rng, m.dimension)
        blended = blend(lam, m, t).apply_poly(poly)
        assert blended == lam * m.apply_poly(poly) + (1 - lam) * t.apply_poly(poly)


@pytest.mark.parametrize("name", list(CATALOG))
@pytest.mark.parametrize("dimension", [2, 3])
def test_float_application_matches_exact_application_across_the_catalog(name, dimension):
    rule = named_rule(name, dimension if CATALOG[name].takes_dimension else None)
    rng = random.Random(17)
    for _ in range(10):
        poly = _random_poly(rng, rule.dimension)
        assert rule.apply_fn(poly) == pytest.approx(to_float(rule.apply_poly(poly)), rel=1e-10, abs=1e-10)
