"""Parameterised boundary-node systems, their published solution families, and the
interpolation identities behind the named rules.

The systems are residual evaluators: each takes a parameter point and returns
L(f) - I(f) for the monomials of the system. Published solution sets are checked
by exact substitution rather than recomputed.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import least_squares

from simpson_nd.errors import DenominatorZero, SingularInterpolation
from simpson_nd.exactness import lambda_from_equations
from simpson_nd.models.polynomial import MultiIndex, check_index, monomial_label, monomial_value, unit_index
from simpson_nd.models.region import Cube, Region, Simplex, as_point, trapezoid
from simpson_nd.models.report import SystemResiduals, UniqueSolution
from simpson_nd.models.rule import (
    CR5_LAMBDA,
    CubatureRule,
    blend,
    boundary_rule,
    cr5_root,
    midpoint_rule,
    square_boundary_nodes,
    trapezoid_nodes,
)
from simpson_nd.models.scalar import ONE, ZERO, Scalar, as_scalar, format_scalar, is_zero
from simpson_nd.utils import polyroots
from simpson_nd.utils.linalg import determinant, solve_linear

logger = logging.getLogger(__name__)

X, Y = (1, 0), (0, 1)
XX, YY, XY = (2, 0), (0, 2), (1, 1)

TRIANGLE_MONOMIALS = (X, Y, XX, YY, XY)
SQUARE_MONOMIALS = (X, Y, XX, YY, XY, (3, 0), (0, 3), (2, 1), (1, 2))
TRAPEZOID_MONOMIALS = (X, Y, XY, XX, YY)


def blend_residuals(region: Region, nodes: Sequence, lam, monomials: Sequence[MultiIndex]) -> SystemResiduals:
    """Residuals of lam*M + (1-lam)*T with T the equal-weight rule on `nodes`.

    Nodes are not validated, so points outside the parameter ranges can still be
    evaluated.
    """
    lam = as_scalar(lam)
    points = [as_point(node) for node in nodes]
    vol = region.volume()
    centre = region.centroid()
    share = vol / len(points)
    names, values = [], []
    for alpha in monomials:
        alpha = check_index(alpha, region.dimension)
        m_value = vol * monomial_value(alpha, centre)
        t_value = share * sum((monomial_value(alpha, p) for p in points), ZERO)
        names.append(monomial_label(alpha))
        values.append(lam * m_value + (ONE - lam) * t_value - region.moment(alpha))
    return SystemResiduals(tuple(names), tuple(values))


def triangle_nodes(a, b, c) -> List[Tuple[Scalar, Scalar]]:
    a, b, c = as_scalar(a), as_scalar(b), as_scalar(c)
    return [(a, ZERO), (ZERO, b), (c, ONE - c)]


def triangle_system(a, b, c, lam) -> SystemResiduals:
    """Residuals for x, y, x^2, y^2, xy with nodes (a,0), (0,b), (c,1-c) on the triangle."""
    return blend_residuals(Simplex(2), triangle_nodes(a, b, c), lam, TRIANGLE_MONOMIALS)


def triangle_family_lambda(c) -> Scalar:
    """lam solving -12c^2 + 12 lam c^2 + 4 lam - 3 + 12c - 12 lam c = 0."""
    c = as_scalar(c)
    denominator = 12 * c * c - 12 * c + 4
    if is_zero(denominator):
        raise DenominatorZero(f"lambda is undefined at c = {format_scalar(c)}")
    return (12 * c * c - 12 * c + 3) / denominator


def triangle_printed_lambda(c) -> Optional[Scalar]:
    """(12c^2 + 3 - 12c) / (-12c^2 + 4 - 12c), as printed alongside the family."""
    c = as_scalar(c)
    denominator = -12 * c * c + 4 - 12 * c
    if is_zero(denominator):
        return None
    return (12 * c * c + 3 - 12 * c) / denominator


def triangle_printed_selector(c) -> Scalar:
    """(1/12)(9c^2 - 1 + 3c - 24c^3 + 24c^4)/(3c^2 - 1 + 3c) - 1/12."""
    c = as_scalar(c)
    denominator = 3 * c * c - 1 + 3 * c
    if is_zero(denominator):
        raise DenominatorZero(f"the x^2 selector is undefined at c = {format_scalar(c)}")
    numerator = 9 * c * c - 1 + 3 * c - 24 * c ** 3 + 24 * c ** 4
    return numerator / denominator / 12 - Fraction(1, 12)


@dataclass(frozen=True)
class TriangleFamilyCheck:
    c: Scalar
    lam: Scalar
    residuals: SystemResiduals
    printed_lambda: Optional[Scalar]
    printed_selector_residual: Scalar

    @property
    def solved(self) -> bool:
        return self.residuals.all_zero()

    @property
    def printed_lambda_matches(self) -> bool:
        return self.printed_lambda is not None and self.printed_lambda == self.lam

    def rule(self) -> CubatureRule:
        region = Simplex(2)
        sides = boundary_rule(region, triangle_nodes(ONE - self.c, self.c, self.c))
        return blend(self.lam, midpoint_rule(region), sides, label=f"triangle family c={format_scalar(self.c)}")

    def to_dict(self):
        return {
            "c": format_scalar(self.c),
            "lambda": format_scalar(self.lam),
            "solved": self.solved,
            "printed_lambda": format_scalar(self.printed_lambda) if self.printed_lambda is not None else None,
            "printed_lambda_matches": self.printed_lambda_matches,
            "printed_selector_residual": format_scalar(self.printed_selector_residual),
            **self.residuals.to_dict(),
        }


def verify_triangle_family(c) -> TriangleFamilyCheck:
    """Substitute b = c, a = 1 - c and lam from the family polynomial into the triangle system."""
    c = as_scalar(c)
    lam = triangle_family_lambda(c)
    residuals = triangle_system(ONE - c, c, c, lam)
    check = TriangleFamilyCheck(c, lam, residuals, triangle_printed_lambda(c), triangle_printed_selector(c))
    if not check.printed_lambda_matches:
        logger.warning(
            "printed lambda %s differs from the family lambda %s at c = %s",
            format_scalar(check.printed_lambda) if check.printed_lambda is not None else "undefined",
            format_scalar(lam),
            format_scalar(c),
        )
    return check


def triangle_selector_roots() -> List[Fraction]:
    """Rational c making the printed x^2 selector vanish: numerator minus denominator."""
    numerator = [-1, 3, 9, -24, 24]
    denominator = [-1, 3, 3]
    return polyroots.rational_roots(polyroots.add(numerator, polyroots.scale(denominator, -1)))


def square_system(a, b, c, d, lam) -> SystemResiduals:
    """Nine residuals (x, y, x^2, y^2, xy, x^3, y^3, x^2y, xy^2) for nodes (a,0), (0,b), (c,1), (1,d)."""
    return blend_residuals(Cube(2), square_boundary_nodes(a, b, c, d), lam, SQUARE_MONOMIALS)


def square_family_lambda(d) -> Scalar:
    d = as_scalar(d)
    return (6 * d * d - 6 * d + 2) / (6 * d * d - 6 * d + 3)


def square_printed_selector(d) -> Scalar:
    """-(1/24)(-9d^2 + 7d - 3 + 2d^3)/(2d^2 - 2d + 1) - 1/8, the x^3y condition."""
    d = as_scalar(d)
    value = -(-9 * d * d + 7 * d - 3 + 2 * d ** 3) / (2 * d * d - 2 * d + 1) / 24
    return value - Fraction(1, 8)


@dataclass(frozen=True)
class SquareFamilyCheck:
    d: Scalar
    lam: Scalar
    residuals: SystemResiduals
    x3y_residual: Scalar
    printed_selector_residual: Scalar

    @property
    def solved(self) -> bool:
        return self.residuals.all_zero()

    def rule(self) -> CubatureRule:
        region = Cube(2)
        d = self.d
        sides = boundary_rule(region, square_boundary_nodes(d, ONE - d, ONE - d, d))
        return blend(self.lam, midpoint_rule(region), sides, label=f"square family d={format_scalar(d)}")

    def to_dict(self):
        return {
            "d": format_scalar(self.d),
            "lambda": format_scalar(self.lam),
            "solved": self.solved,
            "x3y_residual": format_scalar(self.x3y_residual),
            "printed_selector_residual": format_scalar(self.printed_selector_residual),
            **self.residuals.to_dict(),
        }


def verify_square_family(d) -> SquareFamilyCheck:
    """Substitute a = d, b = c = 1 - d and lam = (6d^2-6d+2)/(6d^2-6d+3)."""
    d = as_scalar(d)
    lam = square_family_lambda(d)
    nodes = square_boundary_nodes(d, ONE - d, ONE - d, d)
    residuals = blend_residuals(Cube(2), nodes, lam, SQUARE_MONOMIALS)
    x3y = blend_residuals(Cube(2), nodes, lam, [(3, 1)]).residuals[0]
    return SquareFamilyCheck(d, lam, residuals, x3y, square_printed_selector(d))


def square_selector_roots() -> List[Fraction]:
    """Rational d with L(x^3y) = 1/8: -N = 3D for the printed numerator N and denominator D."""
    numerator = [-3, 7, -9, 2]
    denominator = [1, -2, 2]
    return polyroots.rational_roots(polyroots.add(numerator, polyroots.scale(denominator, 3)))


def square_lambda_zero_discriminant() -> Fraction:
    """Discriminant of 6d^2 - 6d + 2; negative, so lam never vanishes on the family."""
    return polyroots.quadratic_discriminant([2, -6, 6])


def trapezoid_system(a, b, c, d, lam) -> SystemResiduals:
    """Five residuals (x, y, xy, x^2, y^2) for nodes (a,0), (1,c), (0,b), (d,d+1)."""
    nodes = [(a, 0), (1, c), (0, b), (d, as_scalar(d) + 1)]
    return blend_residuals(trapezoid(), nodes, lam, TRAPEZOID_MONOMIALS)


def trapezoid_family_point(conjugate: bool = False) -> Tuple[Scalar, Scalar, Scalar, Scalar, Scalar]:
    """(a, b, c, d, lam) from 392lam - 163, 9a+9d-11, 81b-99d+20, 180d-191+81c and the d quadratic."""
    d = cr5_root(conjugate)
    (a, _), (_, c), (_, b), _ = trapezoid_nodes(d)
    return a, b, c, d, CR5_LAMBDA


def trapezoid_d_roots_check() -> Tuple[Scalar, Scalar]:
    """18549d^2 - 22671d + 6583 evaluated at both published roots."""
    values = []
    for conjugate in (False, True):
        d = cr5_root(conjugate)
        values.append(18549 * d * d - 22671 * d + 6583)
    return values[0], values[1]


SIMPLEX3_NAMES = ("x", "y", "z", "x*y", "x*z", "y*z", "x^2", "y^2", "z^2")


def simplex3_face_nodes(a: Sequence) -> List[Tuple[Scalar, Scalar, Scalar]]:
    """Q1 = (a1,a2,0), Q2 = (a3,0,a4), Q3 = (0,a5,a6), Q4 = (a7,a8,1-a7-a8)."""
    a1, a2, a3, a4, a5, a6, a7, a8 = (as_scalar(v) for v in a)
    return [(a1, a2, ZERO), (a3, ZERO, a4), (ZERO, a5, a6), (a7, a8, ONE - a7 - a8)]


def _simplex3_quadratic_sums(a: Sequence):
    a1, a2, a3, a4, a5, a6, a7, a8 = (as_scalar(v) for v in a)
    top = ONE - a7 - a8
    return (
        (a1 * a2 + a7 * a8, Fraction(1, 120)),
        (a3 * a4 + a7 * top, Fraction(1, 120)),
        (a5 * a6 + a8 * top, Fraction(1, 120)),
        (a1 * a1 + a3 * a3 + a7 * a7, Fraction(1, 60)),
        (a2 * a2 + a5 * a5 + a8 * a8, Fraction(1, 60)),
        (a4 * a4 + a6 * a6 + top * top, Fraction(1, 60)),
    )


def simplex3_face_system(a: Sequence, lam) -> SystemResiduals:
    """Nine residuals for one point on each face of the 3-simplex.

    The three linear equations are in their simplified node-placement form; the six
    quadratic ones read lam/96 + (1-lam)/24 * s - I.
    """
    if len(a) != 8:
        raise ValueError("the face system has eight placement parameters")
    a1, a2, a3, a4, a5, a6, a7, a8 = (as_scalar(v) for v in a)
    lam = as_scalar(lam)
    values = [a1 + a3 + a7 - 1, a2 + a5 + a8 - 1, a4 + a6 - a7 - a8]
    for total, target in _simplex3_quadratic_sums(a):
        values.append(lam / 96 + (ONE - lam) / 24 * total - target)
    return SystemResiduals(SIMPLEX3_NAMES, tuple(values))


def simplex3_face_rule(a: Sequence, lam) -> CubatureRule:
    region = Simplex(3)
    faces = boundary_rule(region, simplex3_face_nodes(a))
    return blend(lam, midpoint_rule(region), faces, label="simplex:3 face rule")


def _placement_ok(a: Sequence) -> bool:
    return all(v >= 0 for v in a) and all(a[j] + a[j + 1] <= 1 for j in (0, 2, 4, 6))


@dataclass(frozen=True)
class VertexPlacement:
    a: Tuple[int, ...]
    lam: Scalar


def search_simplex3_vertex_solutions() -> List[VertexPlacement]:
    """Every 0/1 placement solving the face system, with lam solved exactly."""
    hits = []
    for a in itertools.product((0, 1), repeat=8):
        if not _placement_ok(a):
            continue
        residuals = simplex3_face_system(a, ZERO)
        if not all(is_zero(r) for r in residuals.residuals[:3]):
            continue
        equations = [
            (name, Fraction(1, 96) - total / 24, target - total / 24)
            for name, (total, target) in zip(SIMPLEX3_NAMES[3:], _simplex3_quadratic_sums(a))
        ]
        outcome = lambda_from_equations(equations)
        if isinstance(outcome, UniqueSolution):
            hits.append(VertexPlacement(tuple(a), outcome.values[0]))
    logger.info("vertex placements solving the face system: %d", len(hits))
    return hits


@dataclass(frozen=True)
class ProbeResult:
    best_norm: float
    best_point: Tuple[float, ...]
    starts: int


def probe_simplex3_lambda_zero(starts: int = 20, seed: int = 0) -> ProbeResult:
    """Least-squares search for a lam = 0 placement. A small norm would contradict the
    claimed nonexistence; a large one is evidence, not proof."""
    rng = np.random.default_rng(seed)

    def equations(a):
        a1, a2, a3, a4, a5, a6, a7, a8 = a
        top = 1 - a7 - a8
        sums = (
            (a1 * a2 + a7 * a8, 1 / 120),
            (a3 * a4 + a7 * top, 1 / 120),
            (a5 * a6 + a8 * top, 1 / 120),
            (a1 * a1 + a3 * a3 + a7 * a7, 1 / 60),
            (a2 * a2 + a5 * a5 + a8 * a8, 1 / 60),
            (a4 * a4 + a6 * a6 + top * top, 1 / 60),
        )
        out = [a1 + a3 + a7 - 1, a2 + a5 + a8 - 1, a4 + a6 - a7 - a8]
        out += [total / 24 - target for total, target in sums]
        out += [max(0.0, a[j] + a[j + 1] - 1) for j in (0, 2, 4, 6)]
        return np.asarray(out)

    best_norm, best_point = np.inf, None
    for _ in range(starts):
        start = rng.uniform(0.0, 0.5, size=8)
        fit = least_squares(equations, start, bounds=(0.0, 1.0))
        norm = float(np.linalg.norm(fit.fun))
        if norm < best_norm:
            best_norm, best_point = norm, tuple(float(v) for v in fit.x)
    logger.info("lam = 0 probe: best residual norm %.3e over %d starts", best_norm, starts)
    return ProbeResult(best_norm, best_point, starts)


def interp_matrix_quadratic(a, b, c, d) -> Tuple[List[List[Scalar]], Scalar]:
    """Basis {x^2, y^2, x, y, 1} at (a,0), (0,b), (c,1), (1,d), (1/2,1/2)."""
    half = Fraction(1, 2)
    points = square_boundary_nodes(a, b, c, d) + [(half, half)]
    matrix = [[x * x, y * y, x, y, ONE] for x, y in points]
    return matrix, determinant(matrix)


def interp_matrix_bilinear(a, b, c, d) -> Tuple[List[List[Scalar]], Scalar]:
    """Basis {xy, x, y, 1}; rows as printed, i.e. at (a,0), (0,b), (1,c), (d,1)."""
    a, b, c, d = (as_scalar(v) for v in (a, b, c, d))
    matrix = [
        [ZERO, a, ZERO, ONE],
        [ZERO, ZERO, b, ONE],
        [c, ONE, c, ONE],
        [d, d, ONE, ONE],
    ]
    return matrix, determinant(matrix)


def bilinear_closed_form(a, b, c, d) -> Scalar:
    """cab - ac - cdb - dab + dac + db."""
    a, b, c, d = (as_scalar(v) for v in (a, b, c, d))
    return c * a * b - a * c - c * d * b - d * a * b + d * a * c + d * b


def integrate_interpolant(region: Region, basis: Sequence, nodes: Sequence, data: Sequence) -> Scalar:
    """Integral of the unique p in span(basis) with p(node_i) = data_i."""
    alphas = [check_index(alpha, region.dimension) for alpha in basis]
    points = [as_point(node) for node in nodes]
    if len(alphas) != len(points) or len(points) != len(data):
        raise ValueError("interpolation needs as many basis monomials as nodes and data values")
    matrix = [[monomial_value(alpha, p) for alpha in alphas] for p in points]
    if is_zero(determinant(matrix)):
        raise SingularInterpolation(f"no unique interpolant in span({', '.join(monomial_label(a) for a in alphas)})")
    outcome = solve_linear(matrix, [as_scalar(v) for v in data])
    return sum((coef * region.moment(alpha) for coef, alpha in zip(outcome.values, alphas)), ZERO)


def interpolation_weights(region: Region, basis: Sequence, nodes: Sequence) -> List[Scalar]:
    """Weights of the rule 'integrate the interpolant': indicator data at each node."""
    count = len(nodes)
    return [
        integrate_interpolant(region, basis, nodes, [ONE if j == i else ZERO for j in range(count)])
        for i in range(count)
    ]


def cr1_interpolation_basis(n: int, j: int = 0, k: int = 1) -> List[MultiIndex]:
    """{1, x_1, ..., x_n, x_j x_k}; any pair j != k gives the same rule."""
    if j == k:
        raise ValueError("the quadratic basis function needs two distinct variables")
    zero = (0,) * n
    mixed = tuple(a + b for a, b in zip(unit_index(n, j), unit_index(n, k)))
    return [zero] + [unit_index(n, i) for i in range(n)] + [mixed]


def tangent_plane_integral(region: Region, value, gradient: Sequence) -> Scalar:
    """Integral of f(c) + grad f(c) . (x - c) with c the centroid; equals vol * f(c)."""
    centre = region.centroid()
    vol = region.volume()
    total = as_scalar(value) * vol
    for k, g in enumerate(gradient):
        total = total + as_scalar(g) * (region.moment(unit_index(region.dimension, k)) - centre[k] * vol)
    return total
