"""Reproducible claims about the named rules, their families and the negative results.

Each claim is a named check returning (confirmed, detail). `run_claims` evaluates
them, optionally on a thread pool, and always returns results in suite order.
"""
import logging
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

import numpy as np

from simpson_nd.compound import compound_apply, convergence_order, reference_integral
from simpson_nd.errors import CubatureError
from simpson_nd.exactness import degree_targets, derive_lambda_rule, exactness_degree, residual, solve_weights
from simpson_nd.families import (
    cr1_interpolation_basis,
    interp_matrix_bilinear,
    interp_matrix_quadratic,
    interpolation_weights,
    simplex3_face_rule,
    simplex3_face_system,
    square_selector_roots,
    triangle_selector_roots,
    verify_square_family,
    verify_triangle_family,
)
from simpson_nd.models.polynomial import MonomialPoly, unit_index
from simpson_nd.models.region import Cube, Simplex, regular_hexagon, standard_triangle, trapezoid
from simpson_nd.models.report import Infeasible, UniqueSolution
from simpson_nd.models.rule import CubatureRule, cr1, cr2, cr3, cr4, cr5, cr6, triangle_midedge
from simpson_nd.models.scalar import PiMultiple, eq, format_scalar, sign

logger = logging.getLogger(__name__)

Outcome = Tuple[bool, str]

TRAPEZOID_NODES = ((Fraction(5, 9), Fraction(7, 9)), (0, 0), (1, 0), (0, 1), (1, 2))
TRAPEZOID_WEIGHTS = tuple(Fraction(*w) for w in ((81, 80), (23, 240), (17, 120), (29, 240), (31, 240)))


@dataclass(frozen=True)
class Claim:
    name: str
    description: str
    check: Callable[[], Outcome]


@dataclass(frozen=True)
class ClaimResult:
    name: str
    description: str
    confirmed: bool
    detail: str

    def line(self) -> str:
        mark = "✓" if self.confirmed else "✗"
        return f"{mark} {self.name}: {self.detail}"

    def to_dict(self):
        return {
            "name": self.name,
            "description": self.description,
            "confirmed": self.confirmed,
            "detail": self.detail,
        }


def weight_map(rule: CubatureRule) -> Dict[tuple, object]:
    """Node -> weight, so rules can be compared regardless of node order."""
    return dict(zip(rule.nodes, rule.weights))


def _degree_failures(builder, dimensions, expected, max_degree) -> List[str]:
    failures = []
    for n in dimensions:
        report = exactness_degree(builder(n), max_degree)
        want = expected(n)
        if report.degree != want:
            failures.append(f"{report.label} certified {report.degree}, expected {want}")
    return failures


def _summary(failures: List[str], ok_text: str) -> Outcome:
    return (not failures, "; ".join(failures) if failures else ok_text)


def check_cr1() -> Outcome:
    # CR1(1) is Simpson's rule and gains a degree
    failures = _degree_failures(cr1, range(1, 7), lambda n: 3 if n == 1 else 2, 4)
    for n in range(3, 7):
        alpha = (1, 1, 1) + (0,) * (n - 3)
        want = Fraction(1, (n + 1) * math.factorial(n + 2)) - Fraction(1, math.factorial(n + 3))
        got = residual(cr1(n), alpha)
        if not eq(got, want):
            failures.append(f"CR1({n}) x1*x2*x3 residual {format_scalar(got)}, expected {format_scalar(want)}")
    return _summary(failures, "degree 2 for n = 2..6, mixed cubic residual 1/((n+1)(n+2)!) - 1/(n+3)!")


def check_cr2() -> Outcome:
    failures = _degree_failures(cr2, range(2, 6), lambda n: 2, 3)
    for n in range(3, 6):
        rule = cr2(n)
        centre_weight = weight_map(rule).get(Simplex(n).centroid())
        if centre_weight is None or sign(centre_weight) >= 0:
            failures.append(f"CR2({n}) centroid weight is not negative")
    if weight_map(cr2(2)) != weight_map(triangle_midedge()):
        failures.append("CR2(2) differs from TriangleMidedge")
    return _summary(failures, "degree 2 for n = 2..5, negative centroid weight for n >= 3, CR2(2) = TriangleMidedge")


def check_cr3() -> Outcome:
    failures = _degree_failures(cr3, range(1, 7), lambda n: 3, 4)
    for n in range(1, 7):
        got = residual(cr3(n), unit_index(n, 0, 4))
        if not eq(got, Fraction(5, 24) - Fraction(1, 5)):
            failures.append(f"CR3({n}) x1^4 residual {format_scalar(got)}")
    simpson = {(Fraction(0),): Fraction(1, 6), (Fraction(1, 2),): Fraction(2, 3), (Fraction(1),): Fraction(1, 6)}
    if weight_map(cr3(1)) != simpson:
        failures.append("CR3(1) is not Simpson's rule")
    return _summary(failures, "degree 3 for n = 1..6, x1^4 residual 1/120, CR3(1) = Simpson")


def check_cr4() -> Outcome:
    rule = cr4()
    failures = []
    report = exactness_degree(rule, 4)
    if report.degree != 3:
        failures.append(f"certified {report.degree}")
    for alpha in ((3, 1), (1, 3)):
        if not eq(residual(rule, alpha), 0):
            failures.append(f"residual at {alpha} is nonzero")
    if not eq(residual(rule, (4, 0)), Fraction(5, 24) - Fraction(1, 5)):
        failures.append("x^4 residual differs from 5/24 - 1/5")
    return _summary(failures, "degree 3, exact on x^3y and xy^3, x^4 residual 1/120")


def check_cr5() -> Outcome:
    rule = cr5()
    failures = []
    report = exactness_degree(rule, 3)
    if report.degree != 2:
        failures.append(f"certified {report.degree}")
    want = Fraction(336001, 762048) - Fraction(9, 20)
    got = residual(rule, (3, 0))
    if not eq(got, want):
        failures.append(f"x^3 residual {format_scalar(got)}, expected {format_scalar(want)}")
    return _summary(failures, f"degree 2 with nodes in Q(√3893), x^3 residual {format_scalar(want)}")


def check_cr6() -> Outcome:
    rule = cr6()
    failures = []
    report = exactness_degree(rule, 4)
    if report.degree != 3:
        failures.append(f"certified {report.degree}")
    got = residual(rule, (4, 0))
    if not eq(got, PiMultiple(Fraction(1, 4)) - PiMultiple(Fraction(1, 8))):
        failures.append(f"x^4 residual {format_scalar(got)}")
    return _summary(failures, "degree 3 on the disc, x^4 residual π/4 - π/8")


def check_midedge() -> Outcome:
    rule = triangle_midedge()
    failures = []
    report = exactness_degree(rule, 3)
    if report.degree != 2:
        failures.append(f"certified {report.degree}")
    cube = rule.apply_poly(MonomialPoly.monomial((3, 0)))
    if not eq(cube, Fraction(1, 24)) or not eq(rule.region.moment((3, 0)), Fraction(1, 20)):
        failures.append(f"L(x^3) = {format_scalar(cube)}")
    return _summary(failures, "degree 2, L(x^3) = 1/24 against 1/20")


def check_negative_results() -> Outcome:
    failures = []
    outcome, _ = derive_lambda_rule(regular_hexagon(), degree_targets(2, 2))
    if not isinstance(outcome, Infeasible):
        failures.append(f"hexagon lambda system is {outcome.kind}")
    full = solve_weights(trapezoid(), TRAPEZOID_NODES, degree_targets(2, 2))
    if not isinstance(full, Infeasible):
        failures.append(f"trapezoid weight system is {full.kind}")
    reduced = solve_weights(trapezoid(), TRAPEZOID_NODES, degree_targets(2, 2, exclude=[(1, 1)]))
    if not isinstance(reduced, UniqueSolution) or tuple(reduced.values) != TRAPEZOID_WEIGHTS:
        failures.append("trapezoid weights without xy differ")
    return _summary(failures, "hexagon and five-node trapezoid infeasible, weights without xy reproduced")


def check_families(seed: int = 2024) -> Outcome:
    rng = random.Random(seed)
    failures = []
    for _ in range(20):
        c = Fraction(rng.randint(0, 1000), 1000)
        if not verify_triangle_family(c).solved:
            failures.append(f"triangle family fails at c = {c}")
        d = Fraction(rng.randint(0, 1000), 1000)
        if not verify_square_family(d).solved:
            failures.append(f"square family fails at d = {d}")
    if triangle_selector_roots() != [Fraction(0), Fraction(1, 2)]:
        failures.append(f"triangle selector roots {triangle_selector_roots()}")
    if square_selector_roots() != [Fraction(0), Fraction(1, 2), Fraction(1)]:
        failures.append(f"square selector roots {square_selector_roots()}")
    thirds = [Fraction(1, 3)] * 8
    if not simplex3_face_system(thirds, Fraction(-4, 5)).all_zero():
        failures.append("face centroids with lambda = -4/5 do not solve the simplex:3 system")
    elif weight_map(simplex3_face_rule(thirds, Fraction(-4, 5))) != weight_map(cr2(3)):
        failures.append("face-centroid rule differs from CR2(3)")
    return _summary(failures, "40 random family members solved, selector roots {0, 1/2} and {0, 1/2, 1}, CR2(3) recovered")


def check_interpolation() -> Outcome:
    failures = []
    for n in range(2, 5):
        rule = cr1(n)
        if interpolation_weights(Simplex(n), cr1_interpolation_basis(n), rule.nodes) != list(rule.weights):
            failures.append(f"CR1({n}) interpolant weights differ")
    midedge = triangle_midedge()
    if interpolation_weights(Simplex(2), [(0, 0), (1, 0), (0, 1)], midedge.nodes) != list(midedge.weights):
        failures.append("TriangleMidedge interpolant weights differ")
    square = cr4()
    if interpolation_weights(Cube(2), [(2, 0), (0, 2), (1, 0), (0, 1), (0, 0)], square.nodes) != list(square.weights):
        failures.append("CR4 interpolant weights differ")
    half = Fraction(1, 2)
    if interp_matrix_quadratic(half, half, half, half)[1] != Fraction(1, 16):
        failures.append("quadratic interpolation determinant at the midpoints is not 1/16")
    if interp_matrix_quadratic(1, 0, 0, 1)[1] != 0:
        failures.append("quadratic interpolation determinant at (1,0,0,1) is not 0")
    if interp_matrix_bilinear(half, half, half, half)[1] != 0 or interp_matrix_bilinear(1, 0, 0, 1)[1] != 0:
        failures.append("bilinear interpolation determinant is not singular")
    return _summary(failures, "CR1, TriangleMidedge and CR4 weights from their interpolants, determinants 1/16 and 0")


def check_moments() -> Outcome:
    failures = []
    triangle, simplex = standard_triangle(), Simplex(2)
    for alpha in degree_targets(2, 4):
        if triangle.moment(alpha) != simplex.moment(alpha):
            failures.append(f"polygon moment {alpha} differs from the simplex moment")
    return _summary(failures, "polygon moments of the standard triangle match simplex:2 up to degree 4")


def check_convergence() -> Outcome:
    def fn(x, y):
        return np.exp(x + y)

    failures = []
    levels = range(1, 6)
    square_ref = (math.e - 1) ** 2
    order = convergence_order([compound_apply(cr4(), k, fn) for k in levels], square_ref)
    if abs(order - 4.0) > 0.3:
        failures.append(f"CR4 compound order {order:.2f}")
    triangle_ref = reference_integral(Simplex(2), fn)
    tri_order = convergence_order([compound_apply(triangle_midedge(), k, fn) for k in levels], triangle_ref)
    if tri_order < 2.7:
        failures.append(f"TriangleMidedge compound order {tri_order:.2f}")
    return _summary(failures, f"CR4 order {order:.2f}, TriangleMidedge order {tri_order:.2f}")


CLAIMS: List[Claim] = [
    Claim("cr1", "CR1 on simplices is exact to degree 2", check_cr1),
    Claim("cr2", "CR2 on simplices is exact to degree 2 with a negative centroid weight", check_cr2),
    Claim("cr3", "CR3 on cubes is exact to degree 3", check_cr3),
    Claim("cr4", "CR4 on the square is exact to degree 3", check_cr4),
    Claim("cr5", "CR5 on the trapezoid is exact to degree 2", check_cr5),
    Claim("cr6", "CR6 on the disc is exact to degree 3", check_cr6),
    Claim("midedge", "edge-midpoint triangle rule is exact to degree 2", check_midedge),
    Claim("negative", "hexagon and trapezoid systems without solutions", check_negative_results),
    Claim("families", "triangle, square and simplex:3 solution families", check_families),
    Claim("interpolation", "rules as integrals of interpolants", check_interpolation),
    Claim("moments", "polygon and simplex moments agree", check_moments),
    Claim("convergence", "compound convergence orders", check_convergence),
]


def _evaluate(claim: Claim) -> ClaimResult:
    try:
        confirmed, detail = claim.check()
    except CubatureError as exc:
        confirmed, detail = False, f"{type(exc).__name__}: {exc}"
    logger.info("claim %s: %s", claim.name, "confirmed" if confirmed else "not confirmed")
    return ClaimResult(claim.name, claim.description, confirmed, detail)


def run_claims(workers: int = 1, names=None) -> List[ClaimResult]:
    claims = [c for c in CLAIMS if names is None or c.name in names]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_evaluate, claims))
    return [_evaluate(claim) for claim in claims]
