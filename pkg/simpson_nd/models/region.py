"""Integration regions with exact volume, centroid and monomial moments."""
from __future__ import annotations

import itertools
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from simpson_nd.errors import DimensionMismatch, InvalidRegion, NoVertices
from simpson_nd.models.polynomial import MultiIndex, check_index, unit_index
from simpson_nd.models.scalar import (
    ONE,
    ZERO,
    PiMultiple,
    Scalar,
    as_scalar,
    compare,
    is_zero,
    quadratic,
    scalar_from_dict,
    scalar_to_dict,
    sign,
)

logger = logging.getLogger(__name__)

Point = Tuple[Scalar, ...]


def as_point(coords) -> Point:
    return tuple(as_scalar(c) for c in coords)


class Region(ABC):
    """A closed region in R^n. Subclasses supply moments and membership tests."""

    dimension: int

    @abstractmethod
    def moment(self, alpha) -> Scalar:
        """Exact integral of x^alpha over the region."""

    @abstractmethod
    def contains(self, point) -> bool:
        """Closed membership: boundary points count as inside."""

    @abstractmethod
    def on_boundary(self, point) -> bool:
        ...

    @abstractmethod
    def to_dict(self):
        ...

    @property
    @abstractmethod
    def label(self) -> str:
        ...

    def volume(self) -> Scalar:
        return self.moment((0,) * self.dimension)

    def centroid(self) -> Point:
        vol = self.volume()
        return tuple(self.moment(unit_index(self.dimension, k)) / vol for k in range(self.dimension))

    def vertices(self) -> List[Point]:
        raise NoVertices(f"{self.label} has no vertices")

    def _check_point(self, point) -> Point:
        point = as_point(point)
        if len(point) != self.dimension:
            raise DimensionMismatch(f"point {point} has {len(point)} coordinates, {self.label} has dimension {self.dimension}")
        return point

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Simplex(Region):
    """The standard n-simplex: origin plus the n unit points."""

    dimension: int

    def __post_init__(self):
        if self.dimension < 1:
            raise InvalidRegion(f"simplex dimension must be >= 1, got {self.dimension}")

    @property
    def label(self) -> str:
        return f"simplex:{self.dimension}"

    def moment(self, alpha) -> Scalar:
        # Dirichlet: prod(alpha_i!) / (n + |alpha|)!
        alpha = check_index(alpha, self.dimension)
        numerator = math.prod(math.factorial(a) for a in alpha)
        return Fraction(numerator, math.factorial(self.dimension + sum(alpha)))

    def vertices(self) -> List[Point]:
        origin = (ZERO,) * self.dimension
        units = [tuple(Fraction(c) for c in unit_index(self.dimension, k)) for k in range(self.dimension)]
        return [origin] + units

    def contains(self, point) -> bool:
        point = self._check_point(point)
        total = sum(point, ZERO)
        return all(sign(x) >= 0 for x in point) and compare(total, ONE) <= 0

    def on_boundary(self, point) -> bool:
        point = self._check_point(point)
        if not self.contains(point):
            return False
        return any(is_zero(x) for x in point) or compare(sum(point, ZERO), ONE) == 0

    def to_dict(self):
        return {"simplex": self.dimension}


@dataclass(frozen=True)
class Cube(Region):
    """The unit cube [0,1]^n."""

    dimension: int

    def __post_init__(self):
        if self.dimension < 1:
            raise InvalidRegion(f"cube dimension must be >= 1, got {self.dimension}")

    @property
    def label(self) -> str:
        return f"cube:{self.dimension}"

    def moment(self, alpha) -> Scalar:
        alpha = check_index(alpha, self.dimension)
        return math.prod((Fraction(1, a + 1) for a in alpha), start=ONE)

    def vertices(self) -> List[Point]:
        return [tuple(Fraction(c) for c in corner) for corner in itertools.product((0, 1), repeat=self.dimension)]

    def contains(self, point) -> bool:
        point = self._check_point(point)
        return all(sign(x) >= 0 and compare(x, ONE) <= 0 for x in point)

    def on_boundary(self, point) -> bool:
        point = self._check_point(point)
        if not self.contains(point):
            return False
        return any(is_zero(x) or compare(x, ONE) == 0 for x in point)

    def to_dict(self):
        return {"cube": self.dimension}


def _cross(o: Point, a: Point, b: Point) -> Scalar:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _within_box(p: Point, a: Point, b: Point) -> bool:
    for k in range(2):
        lo, hi = (a[k], b[k]) if compare(a[k], b[k]) <= 0 else (b[k], a[k])
        if compare(p[k], lo) < 0 or compare(p[k], hi) > 0:
            return False
    return True


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    return is_zero(_cross(a, b, p)) and _within_box(p, a, b)


def _segments_meet(a: Point, b: Point, c: Point, d: Point) -> bool:
    d1, d2 = sign(_cross(c, d, a)), sign(_cross(c, d, b))
    d3, d4 = sign(_cross(a, b, c)), sign(_cross(a, b, d))
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    return (
        (d1 == 0 and _within_box(a, c, d))
        or (d2 == 0 and _within_box(b, c, d))
        or (d3 == 0 and _within_box(c, a, b))
        or (d4 == 0 and _within_box(d, a, b))
    )


def _signed_area(vertices: Sequence[Point]) -> Scalar:
    total: Scalar = ZERO
    for (x0, y0), (x1, y1) in zip(vertices, list(vertices[1:]) + [vertices[0]]):
        total = total + x0 * y1 - x1 * y0
    return total / 2


@dataclass(frozen=True)
class Polygon(Region):
    """Simple planar polygon, stored counterclockwise."""

    vertex_list: Tuple[Point, ...]
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        points = tuple(as_point(v) for v in self.vertex_list)
        if len(points) < 3:
            raise InvalidRegion("a polygon needs at least three vertices")
        if any(len(p) != 2 for p in points):
            raise InvalidRegion("polygon vertices must be planar points")
        for k, p in enumerate(points):
            if p == points[(k + 1) % len(points)]:
                raise InvalidRegion(f"repeated vertex {p}")
        area = _signed_area(points)
        if is_zero(area):
            raise InvalidRegion("polygon has zero area")
        if sign(area) < 0:
            logger.debug("reversing clockwise polygon %s", self.name or "")
            points = tuple(reversed(points))
        _check_simple(points)
        object.__setattr__(self, "vertex_list", points)

    @property
    def dimension(self) -> int:
        return 2

    @property
    def label(self) -> str:
        return self.name or "polygon"

    def edges(self):
        points = self.vertex_list
        return [(points[k], points[(k + 1) % len(points)]) for k in range(len(points))]

    def moment(self, alpha) -> Scalar:
        # Green's theorem over each edge x = x0 + t*dx, y = y0 + t*dy, t in [0, 1]
        p, q = check_index(alpha, 2)
        total: Scalar = ZERO
        for (x0, y0), (x1, y1) in self.edges():
            dx, dy = x1 - x0, y1 - y0
            if is_zero(dx):
                continue
            edge: Scalar = ZERO
            for i in range(p + 1):
                xi = math.comb(p, i) * x0 ** (p - i) * dx ** i
                for j in range(q + 2):
                    yj = math.comb(q + 1, j) * y0 ** (q + 1 - j) * dy ** j
                    edge = edge + xi * yj / (i + j + 1)
            total = total + edge * dx
        return -total / (q + 1)

    def vertices(self) -> List[Point]:
        return list(self.vertex_list)

    def on_boundary(self, point) -> bool:
        point = self._check_point(point)
        return any(_on_segment(point, a, b) for a, b in self.edges())

    def contains(self, point) -> bool:
        point = self._check_point(point)
        if self.on_boundary(point):
            return True
        px, py = point
        inside = False
        for (xa, ya), (xb, yb) in self.edges():
            if (compare(ya, py) > 0) != (compare(yb, py) > 0):
                crossing = xa + (xb - xa) * (py - ya) / (yb - ya)
                if compare(px, crossing) < 0:
                    inside = not inside
        return inside

    def translate(self, shift) -> Polygon:
        sx, sy = as_point(shift)
        return Polygon(tuple((x + sx, y + sy) for x, y in self.vertex_list), name=self.name)

    def to_dict(self):
        return {"polygon": [[scalar_to_dict(x), scalar_to_dict(y)] for x, y in self.vertex_list]}


def _check_simple(points: Sequence[Point]) -> None:
    count = len(points)
    edges = [(points[k], points[(k + 1) % count]) for k in range(count)]
    for i in range(count):
        for j in range(i + 1, count):
            if j == i + 1 or (i == 0 and j == count - 1):
                continue
            if _segments_meet(*edges[i], *edges[j]):
                raise InvalidRegion(f"polygon edges {i} and {j} intersect")


def _disc_moment(m: int, n: int) -> PiMultiple:
    if m % 2 or n % 2:
        return PiMultiple(0)
    if m == 0 and n == 0:
        return PiMultiple(1)
    if n == 0 or m == 0:
        k = m or n
        return PiMultiple(
            Fraction(
                math.factorial(k - 1),
                (k + 2) * 2 ** (k - 2) * math.factorial(k // 2 - 1) * math.factorial(k // 2),
            )
        )
    denominator = (
        (m + n + 2)
        * 2 ** (m + n - 3)
        * math.factorial(n // 2 - 1)
        * math.factorial(m // 2 - 1)
        * math.factorial((m + n) // 2)
    )
    return PiMultiple(Fraction(math.factorial(n - 1) * math.factorial(m - 1), denominator))


@dataclass(frozen=True)
class UnitDisc(Region):
    """Closed unit disc centred at the origin."""

    @property
    def dimension(self) -> int:
        return 2

    @property
    def label(self) -> str:
        return "disc"

    def moment(self, alpha) -> Scalar:
        m, n = check_index(alpha, 2)
        return _disc_moment(m, n)

    def centroid(self) -> Point:
        return (ZERO, ZERO)

    def contains(self, point) -> bool:
        x, y = self._check_point(point)
        return compare(x * x + y * y, ONE) <= 0

    def on_boundary(self, point) -> bool:
        x, y = self._check_point(point)
        return compare(x * x + y * y, ONE) == 0

    def to_dict(self):
        return {"disc": True}


def trapezoid() -> Polygon:
    return Polygon(((0, 0), (1, 0), (1, 2), (0, 1)), name="trapezoid")


def regular_hexagon() -> Polygon:
    """Hexagon with side 2 and vertices (1+√3, 0), (1, 1), (-1, 1), ..."""
    r = quadratic(1, 1, 3)
    return Polygon(
        ((r, ZERO), (1, 1), (-1, 1), (-r, ZERO), (-1, -1), (1, -1)),
        name="hexagon",
    )


def standard_triangle() -> Polygon:
    return Polygon(((0, 0), (1, 0), (0, 1)), name="triangle")


_NAMED_POLYGONS = {
    "trapezoid-paper": trapezoid,
    "hexagon-paper": regular_hexagon,
    "trapezoid": trapezoid,
    "hexagon": regular_hexagon,
    "triangle-polygon": standard_triangle,
}


def region_from_alias(alias: str) -> Region:
    """simplex:N, cube:N, disc, triangle, square or a name in _NAMED_POLYGONS."""
    text = alias.strip().lower()
    if text in _NAMED_POLYGONS:
        return _NAMED_POLYGONS[text]()
    if text == "disc":
        return UnitDisc()
    if text == "triangle":
        return Simplex(2)
    if text == "square":
        return Cube(2)
    kind, _, size = text.partition(":")
    if kind in ("simplex", "cube") and size.isdigit():
        return Simplex(int(size)) if kind == "simplex" else Cube(int(size))
    raise InvalidRegion(f"unknown region alias '{alias}'")


def _read_coordinate(value) -> Scalar:
    if isinstance(value, dict):
        return scalar_from_dict(value)
    return as_scalar(value)


def region_from_dict(data) -> Region:
    if "simplex" in data:
        return Simplex(int(data["simplex"]))
    if "cube" in data:
        return Cube(int(data["cube"]))
    if "disc" in data:
        return UnitDisc()
    if "polygon" in data:
        return Polygon(
            tuple(tuple(_read_coordinate(c) for c in vertex) for vertex in data["polygon"]),
            name=data.get("name"),
        )
    raise InvalidRegion(f"unrecognised region encoding: {data!r}")


def volume(region: Region) -> Scalar:
    return region.volume()


def centroid(region: Region) -> Point:
    return region.centroid()


def moment(region: Region, alpha: MultiIndex) -> Scalar:
    return region.moment(alpha)


def vertices(region: Region) -> List[Point]:
    return region.vertices()
