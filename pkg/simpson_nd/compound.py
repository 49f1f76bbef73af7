"""Compound rules on subdivided intervals, squares and triangles, and convergence fits."""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from simpson_nd.errors import DegenerateErrors, SingularMap, UnsupportedRegion
from simpson_nd.models.region import Cube, Polygon, Region, Simplex, UnitDisc, as_point
from simpson_nd.models.rule import CubatureRule
from simpson_nd.models.scalar import ONE, ZERO, Scalar, as_scalar, is_zero, sign
from simpson_nd.utils.linalg import determinant

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AffineMap:
    """x -> matrix @ x + offset with exact entries."""

    matrix: Tuple[Tuple[Scalar, ...], ...]
    offset: Tuple[Scalar, ...]

    def __post_init__(self):
        matrix = tuple(tuple(as_scalar(v) for v in row) for row in self.matrix)
        offset = tuple(as_scalar(v) for v in self.offset)
        if any(len(row) != len(matrix) for row in matrix) or len(offset) != len(matrix):
            raise ValueError("affine map needs a square matrix and a matching offset")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "offset", offset)

    @classmethod
    def identity(cls, dimension: int) -> "AffineMap":
        rows = tuple(tuple(ONE if i == j else ZERO for j in range(dimension)) for i in range(dimension))
        return cls(rows, (ZERO,) * dimension)

    @classmethod
    def onto_triangle(cls, p0, p1, p2) -> "AffineMap":
        """Standard triangle (0,0), (1,0), (0,1) onto p0, p1, p2."""
        p0, p1, p2 = as_point(p0), as_point(p1), as_point(p2)
        matrix = ((p1[0] - p0[0], p2[0] - p0[0]), (p1[1] - p0[1], p2[1] - p0[1]))
        return cls(matrix, p0)

    @property
    def dimension(self) -> int:
        return len(self.offset)

    def determinant(self) -> Scalar:
        return determinant(self.matrix)

    def is_identity(self) -> bool:
        return self == AffineMap.identity(self.dimension)

    def __call__(self, point) -> Tuple[Scalar, ...]:
        point = as_point(point)
        return tuple(
            sum((a * x for a, x in zip(row, point)), ZERO) + b for row, b in zip(self.matrix, self.offset)
        )


def _image_region(region: Region, affine: AffineMap) -> Region:
    if isinstance(region, Simplex) and region.dimension == 2:
        corners = region.vertices()
    elif isinstance(region, Cube) and region.dimension == 2:
        corners = [(0, 0), (1, 0), (1, 1), (0, 1)]
    elif isinstance(region, Polygon):
        corners = region.vertices()
    else:
        raise UnsupportedRegion(f"cannot map a rule on {region.label} onto a new region")
    return Polygon(tuple(affine(p) for p in corners), name=f"image of {region.label}")


def map_rule(rule: CubatureRule, affine: AffineMap) -> CubatureRule:
    """Push a planar rule through an invertible affine map; weights scale by |det|."""
    if affine.dimension != rule.dimension:
        raise SingularMap(f"a {affine.dimension}-dimensional map cannot act on {rule.region.label}")
    det = affine.determinant()
    if is_zero(det):
        raise SingularMap("the affine map is not invertible")
    if affine.is_identity():
        return rule
    scale = det if sign(det) > 0 else -det
    return CubatureRule(
        _image_region(rule.region, affine),
        tuple(affine(node) for node in rule.nodes),
        tuple(w * scale for w in rule.weights),
        label=f"{rule.label} (mapped)",
        lam=rule.lam,
        claimed_degree=rule.claimed_degree,
    )


def subdivide_triangle(triangle: Sequence) -> List[Tuple]:
    """Four congruent children: three corner triangles, then the middle one."""
    p0, p1, p2 = (as_point(p) for p in triangle)
    m01 = tuple((a + b) / 2 for a, b in zip(p0, p1))
    m02 = tuple((a + b) / 2 for a, b in zip(p0, p2))
    m12 = tuple((a + b) / 2 for a, b in zip(p1, p2))
    return [(p0, m01, m02), (m01, p1, m12), (m02, m12, p2), (m12, m02, m01)]


def _triangle_cells(level: int) -> np.ndarray:
    cells = np.array([[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]])
    for _ in range(level):
        p0, p1, p2 = cells[:, 0], cells[:, 1], cells[:, 2]
        m01, m02, m12 = (p0 + p1) / 2, (p0 + p2) / 2, (p1 + p2) / 2
        children = np.stack(
            [
                np.stack([p0, m01, m02], axis=1),
                np.stack([m01, p1, m12], axis=1),
                np.stack([m02, m12, p2], axis=1),
                np.stack([m12, m02, m01], axis=1),
            ],
            axis=1,
        )
        cells = children.reshape(-1, 3, 2)
    return cells


def _is_interval(region: Region) -> bool:
    return isinstance(region, (Cube, Simplex)) and region.dimension == 1


@dataclass(frozen=True)
class CompoundEstimate:
    level: int
    cells: int
    estimate: float


def _cell_nodes(rule: CubatureRule, level: int) -> Tuple[List[np.ndarray], np.ndarray, int]:
    """Mapped node coordinates (one array per axis, shape cells x nodes) and per-cell weights."""
    nodes = np.array(rule.float_nodes())
    weights = np.array(rule.float_weights())
    region = rule.region
    if _is_interval(region):
        k = 2 ** level
        left = np.arange(k, dtype=float)[:, None]
        return [(left + nodes[None, :, 0]) / k], weights / k, k
    if isinstance(region, Cube) and region.dimension == 2:
        k = 2 ** level
        rows, cols = np.meshgrid(np.arange(k, dtype=float), np.arange(k, dtype=float), indexing="ij")
        rows, cols = rows.reshape(-1, 1), cols.reshape(-1, 1)
        xs = (cols + nodes[None, :, 0]) / k
        ys = (rows + nodes[None, :, 1]) / k
        return [xs, ys], weights / k ** 2, k * k
    if isinstance(region, Simplex) and region.dimension == 2:
        cells = _triangle_cells(level)
        p0 = cells[:, 0][:, None, :]
        e1 = (cells[:, 1] - cells[:, 0])[:, None, :]
        e2 = (cells[:, 2] - cells[:, 0])[:, None, :]
        mapped = p0 + nodes[None, :, 0:1] * e1 + nodes[None, :, 1:2] * e2
        return [mapped[..., 0], mapped[..., 1]], weights / 4 ** level, len(cells)
    raise UnsupportedRegion(f"compounding is available on the unit interval, cube:2 and simplex:2, not {region.label}")


def _cell_sums(fn: Callable, coords: List[np.ndarray], weights: np.ndarray) -> np.ndarray:
    values = np.broadcast_to(np.asarray(fn(*coords), dtype=float), coords[0].shape)
    return values @ weights


def compound_apply(rule: CubatureRule, level: int, fn: Callable, workers: int = 1) -> CompoundEstimate:
    """Apply `rule` on every cell of the level-`level` subdivision and add the cell sums in cell order.

    `fn` is called with one numpy array per coordinate.
    """
    if level < 0:
        raise ValueError("level must be >= 0")
    coords, weights, count = _cell_nodes(rule, level)
    if workers > 1 and count > 1:
        bounds = np.linspace(0, count, min(workers, count) + 1).astype(int)
        chunks = [(lo, hi) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _cell_sums(fn, [c[b[0]:b[1]] for c in coords], weights), chunks))
        per_cell = np.concatenate(parts)
    else:
        per_cell = _cell_sums(fn, coords, weights)
    estimate = math.fsum(per_cell.tolist())
    logger.debug("%s level %d: %d cells, estimate %.16g", rule.label, level, count, estimate)
    return CompoundEstimate(level, count, estimate)


def convergence_order(estimates: Sequence[CompoundEstimate], reference: float) -> float:
    """Least-squares slope of log|error| against log h with h = 2^-level."""
    if len(estimates) < 3:
        raise DegenerateErrors("a convergence fit needs at least three levels")
    errors = [abs(e.estimate - reference) for e in estimates]
    for previous, (estimate, error) in zip([None] + errors[:-1], zip(estimates, errors)):
        if error == 0.0:
            raise DegenerateErrors(f"error is exactly zero at level {estimate.level}")
        if previous is not None and error >= previous:
            raise DegenerateErrors(f"error does not decrease at level {estimate.level}")
    h = np.array([2.0 ** -e.level for e in estimates])
    slope, _ = np.polyfit(np.log(h), np.log(np.array(errors)), 1)
    logger.info("fitted convergence order %.3f over %d levels", slope, len(estimates))
    return float(slope)


@dataclass(frozen=True)
class StudyRow:
    level: int
    cells: int
    estimate: float
    error: float
    ratio: Optional[float]


def convergence_study(rule: CubatureRule, levels: Sequence[int], fn: Callable, reference: float, workers: int = 1):
    """Rows level, cells, estimate, error, ratio (previous error over this error)."""
    rows, previous = [], None
    for level in levels:
        estimate = compound_apply(rule, level, fn, workers=workers)
        error = abs(estimate.estimate - reference)
        ratio = previous / error if previous is not None and error > 0 else None
        rows.append(StudyRow(level, estimate.cells, estimate.estimate, error, ratio))
        previous = error
    return rows


def _over_triangle(fn: Callable, triangle, tol: float) -> float:
    (x0, y0), (x1, y1), (x2, y2) = [tuple(float(c) for c in p) for p in triangle]
    jac = abs((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0))

    def integrand(v, u):
        return fn(x0 + u * (x1 - x0) + v * (x2 - x0), y0 + u * (y1 - y0) + v * (y2 - y0))

    value, _ = integrate.dblquad(integrand, 0.0, 1.0, 0.0, lambda u: 1.0 - u, epsabs=tol, epsrel=tol)
    return jac * value


def reference_integral(region: Region, fn: Callable, tol: float = 1e-12) -> float:
    """Adaptive scipy quadrature over an interval, square, triangle, polygon or the disc."""
    if _is_interval(region):
        return integrate.quad(fn, 0.0, 1.0, epsabs=tol, epsrel=tol)[0]
    if isinstance(region, Cube) and region.dimension == 2:
        return integrate.dblquad(lambda y, x: fn(x, y), 0.0, 1.0, 0.0, 1.0, epsabs=tol, epsrel=tol)[0]
    if isinstance(region, Simplex) and region.dimension == 2:
        return _over_triangle(fn, region.vertices(), tol)
    if isinstance(region, Polygon):
        corners = region.vertices()
        return math.fsum(_over_triangle(fn, (corners[0], a, b), tol) for a, b in zip(corners[1:-1], corners[2:]))
    if isinstance(region, UnitDisc):
        return integrate.dblquad(
            lambda r, t: fn(r * math.cos(t), r * math.sin(t)) * r, 0.0, 2 * math.pi, 0.0, 1.0, epsabs=tol, epsrel=tol
        )[0]
    raise UnsupportedRegion(f"no reference quadrature for {region.label}")


def exact_children_area(triangle: Sequence) -> Tuple[Fraction, Fraction]:
    """(parent area, sum of the four child areas), both exact."""

    def area(t):
        (x0, y0), (x1, y1), (x2, y2) = t
        value = ((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)) / 2
        return value if sign(value) >= 0 else -value

    return area([as_point(p) for p in triangle]), sum((area(child) for child in subdivide_triangle(triangle)), ZERO)
