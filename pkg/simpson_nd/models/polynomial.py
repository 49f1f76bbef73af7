"""Multi-indices and sparse multivariate polynomials with rational coefficients."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, Tuple

from simpson_nd.errors import DimensionMismatch
from simpson_nd.models.scalar import ONE, ZERO, Scalar, as_scalar, rational

MultiIndex = Tuple[int, ...]

_VARIABLE_ALIASES = ("x", "y")


def check_index(alpha, dimension: int) -> MultiIndex:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != dimension:
        raise DimensionMismatch(f"multi-index {alpha} has length {len(alpha)}, region dimension is {dimension}")
    if any(a < 0 for a in alpha):
        raise ValueError(f"negative exponent in {alpha}")
    return alpha


def unit_index(dimension: int, k: int, power: int = 1) -> MultiIndex:
    return tuple(power if i == k else 0 for i in range(dimension))


def monomials_of_degree(dimension: int, degree: int) -> Iterator[MultiIndex]:
    """All multi-indices of the given total degree, lexicographically descending."""
    if dimension == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(dimension - 1, degree - first):
            yield (first,) + rest


def graded_monomials(dimension: int, max_degree: int) -> Iterator[MultiIndex]:
    """Graded lexicographic order: by total degree, then x1 > x2 > ... within a degree."""
    for degree in range(max_degree + 1):
        yield from monomials_of_degree(dimension, degree)


def monomial_label(alpha: MultiIndex) -> str:
    """x^2*y style label in the plane; x1..xn from three dimensions up."""
    if not any(alpha):
        return "1"
    names = _VARIABLE_ALIASES if len(alpha) <= 2 else tuple(f"x{i + 1}" for i in range(len(alpha)))
    parts = []
    for name, power in zip(names, alpha):
        if power == 1:
            parts.append(name)
        elif power > 1:
            parts.append(f"{name}^{power}")
    return "*".join(parts)


def monomial_value(alpha: MultiIndex, point) -> Scalar:
    value: Scalar = ONE
    for coordinate, power in zip(point, alpha):
        if power:
            value = value * as_scalar(coordinate) ** power
    return value


@dataclass(frozen=True)
class MonomialPoly:
    """Sparse polynomial: multi-index -> nonzero rational coefficient."""

    dimension: int
    terms: Dict[MultiIndex, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for alpha, coefficient in self.terms.items():
            alpha = check_index(alpha, self.dimension)
            coefficient = rational(coefficient)
            if coefficient != 0:
                cleaned[alpha] = coefficient
        object.__setattr__(self, "terms", dict(sorted(cleaned.items(), key=lambda kv: _grlex_key(kv[0]))))

    @classmethod
    def constant(cls, dimension: int, value=1) -> MonomialPoly:
        return cls(dimension, {(0,) * dimension: rational(value)})

    @classmethod
    def monomial(cls, alpha, coefficient=1) -> MonomialPoly:
        alpha = tuple(alpha)
        return cls(len(alpha), {alpha: rational(coefficient)})

    @classmethod
    def variable(cls, dimension: int, k: int) -> MonomialPoly:
        return cls.monomial(unit_index(dimension, k))

    @property
    def degree(self) -> int:
        return max((sum(alpha) for alpha in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: MonomialPoly) -> MonomialPoly:
        self._check_dimension(other)
        terms = dict(self.terms)
        for alpha, coefficient in other.terms.items():
            terms[alpha] = terms.get(alpha, ZERO) + coefficient
        return MonomialPoly(self.dimension, terms)

    def __neg__(self) -> MonomialPoly:
        return MonomialPoly(self.dimension, {alpha: -c for alpha, c in self.terms.items()})

    def __sub__(self, other: MonomialPoly) -> MonomialPoly:
        return self + (-other)

    def __mul__(self, other) -> MonomialPoly:
        if not isinstance(other, MonomialPoly):
            factor = rational(other)
            return MonomialPoly(self.dimension, {alpha: c * factor for alpha, c in self.terms.items()})
        self._check_dimension(other)
        terms: Dict[MultiIndex, Fraction] = {}
        for a1, c1 in self.terms.items():
            for a2, c2 in other.terms.items():
                alpha = tuple(x + y for x, y in zip(a1, a2))
                terms[alpha] = terms.get(alpha, ZERO) + c1 * c2
        return MonomialPoly(self.dimension, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> MonomialPoly:
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = MonomialPoly.constant(self.dimension)
        for _ in range(exponent):
            result = result * self
        return result

    def evaluate(self, point) -> Scalar:
        """Exact value at a point with Scalar coordinates."""
        if len(point) != self.dimension:
            raise DimensionMismatch(f"point has {len(point)} coordinates, polynomial has {self.dimension} variables")
        total: Scalar = ZERO
        for alpha, coefficient in self.terms.items():
            total = total + coefficient * monomial_value(alpha, point)
        return total

    def __call__(self, *coords):
        """Floating-point evaluation; coordinates may be floats or numpy arrays."""
        total = 0.0
        for alpha, coefficient in self.terms.items():
            term = float(coefficient)
            for x, power in zip(coords, alpha):
                if power:
                    term = term * x ** power
            total = total + term
        return total

    def to_dict(self):
        return {
            "dimension": self.dimension,
            "terms": [[list(alpha), [str(c.numerator), str(c.denominator)]] for alpha, c in self.terms.items()],
        }

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for alpha, coefficient in self.terms.items():
            label = monomial_label(alpha)
            if label == "1":
                pieces.append(str(coefficient))
            elif coefficient == 1:
                pieces.append(label)
            elif coefficient == -1:
                pieces.append(f"-{label}")
            else:
                pieces.append(f"{coefficient}*{label}")
        return " + ".join(pieces).replace("+ -", "- ")

    def _check_dimension(self, other: MonomialPoly) -> None:
        if other.dimension != self.dimension:
            raise DimensionMismatch(f"cannot combine polynomials in {self.dimension} and {other.dimension} variables")


def _grlex_key(alpha: MultiIndex):
    return (sum(alpha), tuple(-a for a in alpha))
