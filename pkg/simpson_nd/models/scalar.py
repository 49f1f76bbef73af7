"""Exact scalar tower: rationals, elements of Q(sqrt d), and rational multiples of pi.

Rationals are plain ``fractions.Fraction`` values. The two other tags are small
immutable classes that cooperate with ``Fraction`` through the reflected operator
protocol, so ``Fraction(1, 2) * PiMultiple(...)`` works without special casing.
Every operation returns a canonical value: a QuadraticNumber whose sqrt part is zero
collapses to its Fraction.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from simpson_nd.errors import IncompatibleScalars

# digits of sqrt(d) kept when converting a QuadraticNumber to float
_SQRT_DIGITS = 40


def rational(value) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot read {value!r} as an exact rational")


def is_squarefree(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _sqrt_fraction(d: int) -> Fraction:
    scale = 10 ** _SQRT_DIGITS
    return Fraction(math.isqrt(d * scale * scale), scale)


class QuadraticNumber:
    """a + b*sqrt(d) with rational a, b and squarefree d > 1; b is never zero."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, a, b, d: int) -> None:
        if not is_squarefree(int(d)):
            raise ValueError(f"radicand {d} is not a squarefree integer > 1")
        b = rational(b)
        if b == 0:
            raise ValueError("use quadratic() to build values that may collapse to a rational")
        self._a = rational(a)
        self._b = b
        self._d = int(d)

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @property
    def d(self) -> int:
        return self._d

    def __repr__(self) -> str:
        return f"QuadraticNumber({self._a!s}, {self._b!s}, {self._d})"

    def __str__(self) -> str:
        return format_scalar(self)

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        return self._a * self._a - self._b * self._b * self._d

    def sign(self) -> int:
        sa = (self._a > 0) - (self._a < 0)
        sb = (self._b > 0) - (self._b < 0)
        if sa == sb or sa == 0:
            return sb
        # opposite signs: the larger magnitude wins, compared through the squares
        if self._a * self._a > self._b * self._b * self._d:
            return sa
        return sb

    def _check_radicand(self, other: QuadraticNumber) -> None:
        if other.d != self._d:
            raise IncompatibleScalars(f"cannot combine sqrt({self._d}) with sqrt({other.d})")

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if isinstance(other, Fraction):
            return quadratic(self._a + other, self._b, self._d)
        if isinstance(other, QuadraticNumber):
            self._check_radicand(other)
            return quadratic(self._a + other.a, self._b + other.b, self._d)
        if other.coefficient == 0:
            return self
        raise IncompatibleScalars(f"cannot add {other} to {self}")

    __radd__ = __add__

    def __neg__(self) -> QuadraticNumber:
        return QuadraticNumber(-self._a, -self._b, self._d)

    def __pos__(self) -> QuadraticNumber:
        return self

    def __abs__(self) -> QuadraticNumber:
        return self if self.sign() > 0 else -self

    def __bool__(self) -> bool:
        return True

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if isinstance(other, Fraction):
            return quadratic(self._a * other, self._b * other, self._d)
        if isinstance(other, QuadraticNumber):
            self._check_radicand(other)
            return quadratic(
                self._a * other.a + self._b * other.b * self._d,
                self._a * other.b + other.a * self._b,
                self._d,
            )
        if other.coefficient == 0:
            return other
        raise IncompatibleScalars(f"pi times sqrt({self._d}) is not representable")

    __rmul__ = __mul__

    def inverse(self) -> QuadraticNumber:
        n = self.norm()
        return QuadraticNumber(self._a / n, -self._b / n, self._d)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if isinstance(other, Fraction):
            if other == 0:
                raise ZeroDivisionError("division of a quadratic number by zero")
            return quadratic(self._a / other, self._b / other, self._d)
        if isinstance(other, QuadraticNumber):
            return self * other.inverse()
        raise IncompatibleScalars(f"cannot divide {self} by {other}")

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result: Scalar = Fraction(1)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if isinstance(other, QuadraticNumber):
            return (self._a, self._b, self._d) == (other.a, other.b, other.d)
        # b != 0 makes the value irrational: it never equals a rational or a pi multiple
        return False

    def __hash__(self) -> int:
        return hash(("quad", self._a, self._b, self._d))

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __float__(self) -> float:
        return float(self._a + self._b * _sqrt_fraction(self._d))

    def to_dict(self):
        return {"quad": {"a": _pair(self._a), "b": _pair(self._b), "rad": str(self._d)}}


class PiMultiple:
    """coefficient * pi with a rational coefficient."""

    __slots__ = ("_coefficient",)

    def __init__(self, coefficient) -> None:
        self._coefficient = rational(coefficient)

    @property
    def coefficient(self) -> Fraction:
        return self._coefficient

    def __repr__(self) -> str:
        return f"PiMultiple({self._coefficient!s})"

    def __str__(self) -> str:
        return format_scalar(self)

    def sign(self) -> int:
        return (self._coefficient > 0) - (self._coefficient < 0)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if isinstance(other, PiMultiple):
            return PiMultiple(self._coefficient + other.coefficient)
        if other == 0:
            return self
        if self._coefficient == 0:
            return other
        raise IncompatibleScalars(f"cannot add {other} to {self}")

    __radd__ = __add__

    def __neg__(self) -> PiMultiple:
        return PiMultiple(-self._coefficient)

    def __pos__(self) -> PiMultiple:
        return self

    def __abs__(self) -> PiMultiple:
        return PiMultiple(abs(self._coefficient))

    def __bool__(self) -> bool:
        return self._coefficient != 0

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if isinstance(other, Fraction):
            return PiMultiple(self._coefficient * other)
        if isinstance(other, PiMultiple):
            raise IncompatibleScalars("pi squared never arises for in-scope rules")
        if self._coefficient == 0:
            return self
        raise IncompatibleScalars(f"pi times sqrt({other.d}) is not representable")

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if isinstance(other, Fraction):
            if other == 0:
                raise ZeroDivisionError("division of a pi multiple by zero")
            return PiMultiple(self._coefficient / other)
        if isinstance(other, PiMultiple):
            if other.coefficient == 0:
                raise ZeroDivisionError("division by zero times pi")
            return self._coefficient / other.coefficient
        if self._coefficient == 0:
            return self
        raise IncompatibleScalars(f"cannot divide {self} by {other}")

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self._coefficient == 0:
            raise ZeroDivisionError("division by zero times pi")
        if other == 0:
            return Fraction(0)
        raise IncompatibleScalars(f"1/pi is not representable ({other} / {self})")

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent == 0:
            return Fraction(1)
        if exponent == 1:
            return self
        raise IncompatibleScalars("powers of pi above one are not representable")

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if isinstance(other, PiMultiple):
            return self._coefficient == other.coefficient
        if isinstance(other, Fraction):
            return self._coefficient == 0 and other == 0
        return False

    def __hash__(self) -> int:
        if self._coefficient == 0:
            return hash(0)
        return hash(("pi", self._coefficient))

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __float__(self) -> float:
        return float(self._coefficient) * math.pi

    def to_dict(self):
        return {"pi": _pair(self._coefficient)}


Scalar = Union[Fraction, QuadraticNumber, PiMultiple]

ZERO = Fraction(0)
ONE = Fraction(1)


def _coerce(value):
    if isinstance(value, (Fraction, QuadraticNumber, PiMultiple)):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    return NotImplemented


def as_scalar(value) -> Scalar:
    """Coerce ints and "p/q" strings to Fraction; pass exact scalars through."""
    if isinstance(value, str):
        return Fraction(value)
    coerced = _coerce(value)
    if coerced is NotImplemented:
        raise TypeError(f"{value!r} is not an exact scalar")
    return coerced


def quadratic(a, b, d: int) -> Scalar:
    """a + b*sqrt(d), collapsing to a Fraction when b == 0."""
    b = rational(b)
    if b == 0:
        return rational(a)
    return QuadraticNumber(a, b, d)


def sqrt(d: int) -> Scalar:
    """Exact square root of a positive integer (rational when d is a perfect square)."""
    if d < 0:
        raise ValueError("negative radicand")
    root = math.isqrt(d)
    if root * root == d:
        return Fraction(root)
    k, free = 1, d
    f = 2
    while f * f <= free:
        while free % (f * f) == 0:
            free //= f * f
            k *= f
        f += 1
    return QuadraticNumber(0, k, free)


def pi_multiple(coefficient) -> PiMultiple:
    return PiMultiple(coefficient)


PI = PiMultiple(1)


def add(x, y) -> Scalar:
    return as_scalar(x) + as_scalar(y)


def sub(x, y) -> Scalar:
    return as_scalar(x) - as_scalar(y)


def mul(x, y) -> Scalar:
    return as_scalar(x) * as_scalar(y)


def div(x, y) -> Scalar:
    return as_scalar(x) / as_scalar(y)


def eq(x, y) -> bool:
    """Mathematical equality; incompatible tags compare unequal instead of raising."""
    try:
        return bool(as_scalar(x) == as_scalar(y))
    except IncompatibleScalars:
        return False


def sign(x) -> int:
    x = as_scalar(x)
    if isinstance(x, Fraction):
        return (x > 0) - (x < 0)
    return x.sign()


def is_zero(x) -> bool:
    return sign(x) == 0


def compare(x, y) -> int:
    """-1, 0 or 1; raises IncompatibleScalars when the difference is not representable."""
    return sign(as_scalar(x) - as_scalar(y))


def to_float(x) -> float:
    return float(as_scalar(x))


def is_rational(x) -> bool:
    return isinstance(as_scalar(x), Fraction)


def _pair(q: Fraction):
    return [str(q.numerator), str(q.denominator)]


def _unpair(pair) -> Fraction:
    num, den = pair
    return Fraction(int(num), int(den))


def scalar_to_dict(x):
    x = as_scalar(x)
    if isinstance(x, Fraction):
        return {"rat": _pair(x)}
    return x.to_dict()


def scalar_from_dict(data) -> Scalar:
    if "rat" in data:
        return _unpair(data["rat"])
    if "quad" in data:
        body = data["quad"]
        return quadratic(_unpair(body["a"]), _unpair(body["b"]), int(body["rad"]))
    if "pi" in data:
        return PiMultiple(_unpair(data["pi"]))
    raise ValueError(f"unrecognised scalar encoding: {data!r}")


def _format_rational(q: Fraction) -> str:
    return str(q)


def format_scalar(x) -> str:
    """Human form: 1/2, 4 + 2√3, 11/18 - (1/458)√3893, π/8."""
    x = as_scalar(x)
    if isinstance(x, Fraction):
        return _format_rational(x)
    if isinstance(x, PiMultiple):
        c = x.coefficient
        if c == 0:
            return "0"
        sign_text = "-" if c < 0 else ""
        c = abs(c)
        head = "" if c.numerator == 1 else str(c.numerator)
        tail = "" if c.denominator == 1 else f"/{c.denominator}"
        return f"{sign_text}{head}π{tail}"
    b = abs(x.b)
    if b == 1:
        root = f"√{x.d}"
    elif b.denominator == 1:
        root = f"{b}√{x.d}"
    else:
        root = f"({b})√{x.d}"
    if x.a == 0:
        return root if x.b > 0 else f"-{root}"
    joiner = " + " if x.b > 0 else " - "
    return f"{_format_rational(x.a)}{joiner}{root}"
