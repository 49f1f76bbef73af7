"""Exactness certification and the linear systems for lambda and for free weights."""
import logging
from typing import Iterable, List, Optional, Sequence, Tuple

from simpson_nd.errors import DimensionMismatch, NodeOutsideRegion, RegionMismatch
from simpson_nd.models.polynomial import MonomialPoly, MultiIndex, check_index, graded_monomials, monomial_label, monomial_value
from simpson_nd.models.region import Region, UnitDisc, as_point
from simpson_nd.models.report import (
    ExactnessReport,
    Infeasible,
    LinearSolveOutcome,
    Underdetermined,
    UniqueSolution,
)
from simpson_nd.models.rule import CubatureRule, blend, disc_vertex_rule, midpoint_rule, vertex_rule
from simpson_nd.models.scalar import ZERO, Scalar, format_scalar, is_rational, is_zero
from simpson_nd.utils.linalg import solve_linear

logger = logging.getLogger(__name__)


def residual(rule: CubatureRule, alpha) -> Scalar:
    """L(x^alpha) - I(x^alpha)."""
    alpha = check_index(alpha, rule.dimension)
    return rule.apply_poly(MonomialPoly.monomial(alpha)) - rule.region.moment(alpha)


def exactness_degree(rule: CubatureRule, max_degree: int) -> ExactnessReport:
    """Scan monomials in graded lexicographic order and stop at the first nonzero residual."""
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    for alpha in graded_monomials(rule.dimension, max_degree):
        value = residual(rule, alpha)
        logger.debug("%s: residual of %s is %s", rule.label, monomial_label(alpha), format_scalar(value))
        if not is_zero(value):
            report = ExactnessReport(rule.label, sum(alpha) - 1, alpha, value, max_degree)
            break
    else:
        report = ExactnessReport(rule.label, max_degree, None, None, max_degree)
    logger.info("%s certified to degree %d", rule.label, report.degree)
    return report


def degree_targets(dimension: int, max_degree: int, exclude: Iterable = ()) -> List[MultiIndex]:
    """Every multi-index with |alpha| <= max_degree, constant included, minus `exclude`."""
    dropped = {tuple(alpha) for alpha in exclude}
    return [alpha for alpha in graded_monomials(dimension, max_degree) if alpha not in dropped]


def solve_lambda(m: CubatureRule, t: CubatureRule, targets: Sequence) -> LinearSolveOutcome:
    """Find lambda with lam*M(x^a) + (1-lam)*T(x^a) = I(x^a) for every target a.

    Each target gives lam*(M - T) = I - T. The first equation with a nonzero
    coefficient fixes lambda, the rest must agree with it.
    """
    if m.region != t.region:
        raise RegionMismatch(f"midpoint rule on {m.region.label}, boundary rule on {t.region.label}")
    region = m.region
    equations = []
    for alpha in targets:
        alpha = check_index(alpha, region.dimension)
        mono = MonomialPoly.monomial(alpha)
        t_value = t.apply_poly(mono)
        equations.append((monomial_label(alpha), m.apply_poly(mono) - t_value, region.moment(alpha) - t_value))
    outcome = lambda_from_equations(equations)
    if isinstance(outcome, UniqueSolution):
        logger.info("lambda on %s is %s", region.label, format_scalar(outcome.values[0]))
    else:
        logger.info("no unique lambda on %s: %s", region.label, outcome.kind)
    return outcome


def lambda_from_equations(equations: Iterable[Tuple[str, Scalar, Scalar]]) -> LinearSolveOutcome:
    """Solve the one-unknown system coefficient * lam = rhs, equation by equation."""
    lam: Optional[Scalar] = None
    source: Optional[str] = None
    for name, coefficient, rhs in equations:
        if is_zero(coefficient):
            if not is_zero(rhs):
                return Infeasible("inconsistent", (name,), mismatch=rhs)
            continue
        if lam is None:
            lam, source = rhs / coefficient, name
            continue
        mismatch = coefficient * lam - rhs
        if not is_zero(mismatch):
            return Infeasible("inconsistent", (source, name), mismatch=mismatch)
    if lam is None:
        return Underdetermined((ZERO,), 1)
    if not is_rational(lam):
        return Infeasible("non-rational", (source,), mismatch=lam)
    return UniqueSolution((lam,))


def solve_weights(region: Region, nodes: Sequence, targets: Sequence) -> LinearSolveOutcome:
    """One unknown weight per node; one equation sum_i w_i node_i^a = I(x^a) per target."""
    points = [as_point(node) for node in nodes]
    for point in points:
        if len(point) != region.dimension:
            raise DimensionMismatch(f"node {point} does not live in {region.label}")
        if not region.contains(point):
            raise NodeOutsideRegion(f"({', '.join(map(format_scalar, point))}) lies outside {region.label}")
    alphas = [check_index(alpha, region.dimension) for alpha in targets]
    rows = [[monomial_value(alpha, point) for point in points] for alpha in alphas]
    rhs = [region.moment(alpha) for alpha in alphas]
    outcome = solve_linear(rows, rhs, [monomial_label(alpha) for alpha in alphas])
    logger.info("weight system on %s with %d nodes: %s", region.label, len(points), outcome.kind)
    return outcome


def default_boundary_rule(region: Region) -> CubatureRule:
    if isinstance(region, UnitDisc):
        return disc_vertex_rule(4)
    return vertex_rule(region)


def derive_lambda_rule(region: Region, targets: Sequence) -> Tuple[LinearSolveOutcome, Optional[CubatureRule]]:
    """Midpoint plus vertex rule, solve for lambda, blend when a rational lambda exists."""
    m = midpoint_rule(region)
    t = default_boundary_rule(region)
    outcome = solve_lambda(m, t, targets)
    if isinstance(outcome, UniqueSolution):
        lam = outcome.values[0]
        return outcome, blend(lam, m, t, label=f"L[{format_scalar(lam)}] on {region.label}")
    return outcome, None
