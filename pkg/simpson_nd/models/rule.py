"""Cubature rules: the midpoint, vertex and boundary rules, their blends, and the named catalog."""
from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from simpson_nd.errors import (
    DimensionMismatch,
    IncompatibleScalars,
    NodeNotOnBoundary,
    NodeOutsideRegion,
    RegionMismatch,
    UnknownRule,
    UnsupportedRegion,
)
from simpson_nd.models.polynomial import MonomialPoly
from simpson_nd.models.region import (
    Cube,
    Point,
    Region,
    Simplex,
    UnitDisc,
    as_point,
    region_from_dict,
    trapezoid,
)
from simpson_nd.models.scalar import (
    ONE,
    ZERO,
    PiMultiple,
    Scalar,
    as_scalar,
    format_scalar,
    is_rational,
    is_zero,
    quadratic,
    scalar_from_dict,
    scalar_to_dict,
    sign,
    to_float,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CubatureRule:
    """Weighted node list over a region: L(f) = sum_i w_i f(node_i)."""

    region: Region
    nodes: Tuple[Point, ...]
    weights: Tuple[Scalar, ...]
    label: str = ""
    lam: Optional[Scalar] = field(default=None, compare=False)
    claimed_degree: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        nodes = tuple(as_point(node) for node in self.nodes)
        weights = tuple(as_scalar(w) for w in self.weights)
        if not nodes:
            raise ValueError("a cubature rule needs at least one node")
        if len(nodes) != len(weights):
            raise ValueError(f"{len(nodes)} nodes but {len(weights)} weights")
        for node in nodes:
            if len(node) != self.region.dimension:
                raise DimensionMismatch(f"node {node} does not live in {self.region.label}")
            if not self.region.contains(node):
                raise NodeOutsideRegion(f"node ({', '.join(map(format_scalar, node))}) lies outside {self.region.label}")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def dimension(self) -> int:
        return self.region.dimension

    def __len__(self) -> int:
        return len(self.nodes)

    def weight_sum(self) -> Scalar:
        return sum(self.weights, ZERO)

    def apply_poly(self, poly: MonomialPoly) -> Scalar:
        """Exact sum of w_i * p(node_i).

        Pi-weighted terms are accumulated as a coefficient of pi, so symmetric
        irrational nodes on the disc cancel before the product with pi is formed.
        """
        if poly.dimension != self.dimension:
            raise DimensionMismatch(f"polynomial in {poly.dimension} variables applied to a rule on {self.region.label}")
        plain: Scalar = ZERO
        pi_part: Scalar = ZERO
        has_pi = False
        for node, weight in zip(self.nodes, self.weights):
            value = poly.evaluate(node)
            if isinstance(weight, PiMultiple):
                has_pi = True
                pi_part = pi_part + weight.coefficient * value
            else:
                plain = plain + weight * value
        if not has_pi:
            return plain
        if not is_rational(pi_part):
            raise IncompatibleScalars(f"({format_scalar(pi_part)})·π is not representable")
        return plain + PiMultiple(pi_part)

    def apply_fn(self, fn: Callable[..., float]) -> float:
        terms = []
        for node, weight in zip(self.nodes, self.weights):
            terms.append(to_float(weight) * float(fn(*(to_float(x) for x in node))))
        return math.fsum(terms)

    def float_nodes(self) -> List[Tuple[float, ...]]:
        return [tuple(to_float(x) for x in node) for node in self.nodes]

    def float_weights(self) -> List[float]:
        return [to_float(w) for w in self.weights]

    def to_dict(self):
        data = {
            "label": self.label,
            "region": self.region.to_dict(),
            "nodes": [[scalar_to_dict(x) for x in node] for node in self.nodes],
            "weights": [scalar_to_dict(w) for w in self.weights],
        }
        if self.lam is not None:
            data["lambda"] = scalar_to_dict(self.lam)
        if self.claimed_degree is not None:
            data["claimed_degree"] = self.claimed_degree
        return data

    @classmethod
    def from_dict(cls, data) -> CubatureRule:
        lam = data.get("lambda")
        return cls(
            region=region_from_dict(data["region"]),
            nodes=tuple(tuple(scalar_from_dict(x) for x in node) for node in data["nodes"]),
            weights=tuple(scalar_from_dict(w) for w in data["weights"]),
            label=data.get("label", ""),
            lam=scalar_from_dict(lam) if lam is not None else None,
            claimed_degree=data.get("claimed_degree"),
        )

    def describe(self) -> str:
        lines = [f"{self.label or 'rule'} on {self.region.label} ({len(self)} nodes)"]
        for node, weight in zip(self.nodes, self.weights):
            coords = ", ".join(format_scalar(x) for x in node)
            lines.append(f"  {format_scalar(weight):>28}  ≈ {to_float(weight):.10f}  at ({coords})")
        return "\n".join(lines)


def midpoint_rule(region: Region) -> CubatureRule:
    return CubatureRule(region, (region.centroid(),), (region.volume(),), label=f"M[{region.label}]")


def vertex_rule(region: Region) -> CubatureRule:
    corners = region.vertices()
    weight = region.volume() / len(corners)
    return CubatureRule(region, tuple(corners), (weight,) * len(corners), label=f"T[{region.label}]")


def boundary_rule(region: Region, nodes: Sequence, label: Optional[str] = None) -> CubatureRule:
    """Equal weights volume/k at k boundary nodes."""
    points = [as_point(node) for node in nodes]
    if not points:
        raise ValueError("boundary_rule needs at least one node")
    for point in points:
        if len(point) != region.dimension or not region.on_boundary(point):
            raise NodeNotOnBoundary(f"({', '.join(map(format_scalar, point))}) is not on the boundary of {region.label}")
    weight = region.volume() / len(points)
    return CubatureRule(region, tuple(points), (weight,) * len(points), label=label or f"T[{region.label}]")


def blend(lam, m: CubatureRule, t: CubatureRule, label: Optional[str] = None) -> CubatureRule:
    """lam*M + (1 - lam)*T; nodes whose weight vanishes are dropped."""
    if m.region != t.region:
        raise RegionMismatch(f"cannot blend a rule on {m.region.label} with one on {t.region.label}")
    lam = as_scalar(lam)
    nodes, weights = [], []
    for factor, rule in ((lam, m), (ONE - lam, t)):
        for node, weight in zip(rule.nodes, rule.weights):
            scaled = factor * weight
            if not is_zero(scaled):
                nodes.append(node)
                weights.append(scaled)
    return CubatureRule(
        m.region,
        tuple(nodes),
        tuple(weights),
        label=label or f"L[{format_scalar(lam)}]",
        lam=lam,
    )


_COS_FIRST_QUADRANT = {
    0: ONE,
    30: quadratic(0, Fraction(1, 2), 3),
    45: quadratic(0, Fraction(1, 2), 2),
    60: Fraction(1, 2),
    90: ZERO,
}

DISC_VERTEX_COUNTS = (3, 4, 6, 8, 12)


def _cos_degrees(degrees: int) -> Scalar:
    degrees %= 360
    if degrees > 180:
        degrees = 360 - degrees
    if degrees > 90:
        return -_COS_FIRST_QUADRANT[180 - degrees]
    return _COS_FIRST_QUADRANT[degrees]


def disc_vertex_rule(k: int) -> CubatureRule:
    """Equal weights pi/k at the k-th roots of unity."""
    if k not in DISC_VERTEX_COUNTS:
        raise UnsupportedRegion(f"no exact circle rule with {k} nodes (choose from {DISC_VERTEX_COUNTS})")
    step = 360 // k
    nodes = tuple((_cos_degrees(j * step), _cos_degrees(90 - j * step)) for j in range(k))
    return CubatureRule(UnitDisc(), nodes, (PiMultiple(Fraction(1, k)),) * k, label=f"T[circle:{k}]")


def simplex_face_centroids(n: int) -> List[Point]:
    """Centroid of the face opposite each vertex P_0, ..., P_n."""
    corners = Simplex(n).vertices()
    centroids = []
    for k in range(n + 1):
        face = [corner for j, corner in enumerate(corners) if j != k]
        centroids.append(tuple(sum((p[i] for p in face), ZERO) / n for i in range(n)))
    return centroids


def cr1(n: int) -> CubatureRule:
    region = Simplex(n)
    rule = blend(Fraction(n + 1, n + 2), midpoint_rule(region), vertex_rule(region), label=f"CR1({n})")
    return _with_claim(rule, 2)


def cr2(n: int) -> CubatureRule:
    region = Simplex(n)
    lam = Fraction(-(n - 2) * (n + 1), n + 2)
    faces = boundary_rule(region, simplex_face_centroids(n))
    return _with_claim(blend(lam, midpoint_rule(region), faces, label=f"CR2({n})"), 2)


def cr3(n: int) -> CubatureRule:
    region = Cube(n)
    return _with_claim(blend(Fraction(2, 3), midpoint_rule(region), vertex_rule(region), label=f"CR3({n})"), 3)


def square_boundary_nodes(a, b, c, d) -> List[Point]:
    """(a,0), (0,b), (c,1), (1,d): one node on each side of the unit square."""
    return [as_point(p) for p in ((a, 0), (0, b), (c, 1), (1, d))]


def cr4() -> CubatureRule:
    region = Cube(2)
    half = Fraction(1, 2)
    sides = boundary_rule(region, square_boundary_nodes(half, half, half, half))
    return _with_claim(blend(Fraction(1, 3), midpoint_rule(region), sides, label="CR4"), 3)


CR5_LAMBDA = Fraction(163, 392)


def trapezoid_nodes(d) -> List[Point]:
    """Nodes (a,0), (1,c), (0,b), (d,d+1) with a, b, c tied to d by the degree-2 system."""
    d = as_scalar(d)
    a = Fraction(11, 9) - d
    b = (99 * d - 20) / 81
    c = (191 - 180 * d) / 81
    return [(a, ZERO), (ONE, c), (ZERO, b), (d, d + 1)]


def cr5_root(conjugate: bool = False) -> Scalar:
    """d = 11/18 ± (1/458)√3893, the two roots of 18549d² - 22671d + 6583."""
    offset = Fraction(-1 if conjugate else 1, 458)
    return quadratic(Fraction(11, 18), offset, 3893)


def cr5(conjugate: bool = False) -> CubatureRule:
    region = trapezoid()
    sides = boundary_rule(region, trapezoid_nodes(cr5_root(conjugate)))
    name = "CR5Conjugate" if conjugate else "CR5"
    return _with_claim(blend(CR5_LAMBDA, midpoint_rule(region), sides, label=name), 2)


def cr6() -> CubatureRule:
    region = UnitDisc()
    return _with_claim(blend(Fraction(1, 2), midpoint_rule(region), disc_vertex_rule(4), label="CR6"), 3)


def triangle_midedge() -> CubatureRule:
    region = Simplex(2)
    half = Fraction(1, 2)
    edges = boundary_rule(region, [(half, ZERO), (ZERO, half), (half, half)])
    return _with_claim(blend(ZERO, midpoint_rule(region), edges, label="TriangleMidedge"), 2)


def _with_claim(rule: CubatureRule, degree: int) -> CubatureRule:
    logger.debug("built %s with %d nodes", rule.label, len(rule))
    return replace(rule, claimed_degree=degree)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    region: str
    claimed_degree: int
    summary: str
    takes_dimension: bool = False


CATALOG: Dict[str, CatalogEntry] = {
    entry.name: entry
    for entry in (
        CatalogEntry("CR1", "simplex:n", 2, "centroid and vertices, lambda = (n+1)/(n+2)", True),
        CatalogEntry("CR2", "simplex:n", 2, "centroid and face centroids, lambda = -(n-2)(n+1)/(n+2)", True),
        CatalogEntry("CR3", "cube:n", 3, "centre and vertices, lambda = 2/3", True),
        CatalogEntry("CR4", "cube:2", 3, "centre and side midpoints, lambda = 1/3"),
        CatalogEntry("CR5", "trapezoid", 2, "centroid and one node per side, lambda = 163/392"),
        CatalogEntry("CR5Conjugate", "trapezoid", 2, "conjugate node placement of CR5"),
        CatalogEntry("CR6", "disc", 3, "centre and four points on the circle, lambda = 1/2"),
        CatalogEntry("TriangleMidedge", "simplex:2", 2, "edge midpoints, lambda = 0"),
    )
}

_BUILDERS = {
    "CR1": cr1,
    "CR2": cr2,
    "CR3": cr3,
    "CR4": cr4,
    "CR5": cr5,
    "CR5CONJUGATE": lambda: cr5(conjugate=True),
    "CR6": cr6,
    "TRIANGLEMIDEDGE": triangle_midedge,
}

_NAME_WITH_DIMENSION = re.compile(r"^\s*([A-Za-z0-9]+)\s*(?:\(\s*(\d+)\s*\))?\s*$")


def named_rule(name: str, dimension: Optional[int] = None) -> CubatureRule:
    """Look up a catalog rule: "CR3", dimension=3 or simply "CR3(3)"."""
    match = _NAME_WITH_DIMENSION.match(name or "")
    if not match:
        raise UnknownRule(f"unknown rule '{name}'")
    key = match.group(1).upper()
    if match.group(2) is not None:
        dimension = int(match.group(2))
    builder = _BUILDERS.get(key)
    if builder is None:
        raise UnknownRule(f"unknown rule '{name}' (known: {', '.join(CATALOG)})")
    if key in ("CR1", "CR2", "CR3"):
        dimension = 2 if dimension is None else dimension
        if dimension < 1:
            raise UnknownRule(f"{key} needs a dimension >= 1, got {dimension}")
        return builder(dimension)
    return builder()


def catalog_rules(dimension: int = 2) -> List[CubatureRule]:
    return [named_rule(name, dimension if entry.takes_dimension else None) for name, entry in CATALOG.items()]


def rule_properties(rule: CubatureRule):
    """Sign of the weights and where the nodes sit relative to the boundary."""
    on_boundary = sum(1 for node in rule.nodes if rule.region.on_boundary(node))
    return {
        "positive_weights": all(sign(w) > 0 for w in rule.weights),
        "interior_nodes": len(rule) - on_boundary,
        "boundary_nodes": on_boundary,
    }
