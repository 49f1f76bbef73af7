import random
from fractions import Fraction

import pytest

from simpson_nd.errors import IncompatibleScalars
from simpson_nd.models.scalar import (
    PI,
    PiMultiple,
    QuadraticNumber,
    add,
    as_scalar,
    compare,
    div,
    format_scalar,
    is_rational,
    mul,
    quadratic,
    scalar_from_dict,
    scalar_to_dict,
    sign,
    sqrt,
    sub,
    to_float,
)


def _random_rational(rng, bound=50):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def _random_quadratic(rng, d):
    b = _random_rational(rng, 20) or Fraction(1, 3)
    return QuadraticNumber(_random_rational(rng, 20), b, d)


def test_square_roots_collapse_to_rationals():
    assert sqrt(2) * sqrt(2) == 2
    assert isinstance(sqrt(2) * sqrt(2), Fraction)
    assert sqrt(49) == 7
    assert sqrt(12) == quadratic(0, 2, 3)


def test_conjugate_product_is_the_norm():
    r = quadratic(1, 1, 3)
    assert r * r.conjugate() == -2
    assert r.norm() == -2


def test_division_rationalises():
    assert 1 / quadratic(1, 1, 3) == quadratic(Fraction(-1, 2), Fraction(1, 2), 3)
    assert quadratic(2, 1, 5) / quadratic(2, 1, 5) == 1


def test_mixed_radicands_are_rejected():
    with pytest.raises(IncompatibleScalars):
        sqrt(2) + sqrt(3)


def test_pi_does_not_mix_with_rationals():
    with pytest.raises(IncompatibleScalars):
        PI + 1
    assert PiMultiple(0) + 1 == 1
    assert PI * Fraction(1, 8) == PiMultiple(Fraction(1, 8))
    assert PiMultiple(Fraction(1, 4)) - PiMultiple(Fraction(1, 8)) == PiMultiple(Fraction(1, 8))


@pytest.mark.parametrize(
    "value, expected",
    [
        (quadratic(1, -1, 2), -1),
        (quadratic(2, -1, 3), 1),
        (quadratic(-2, 1, 5), 1),
        (quadratic(0, -3, 7), -1),
        (PiMultiple(Fraction(-1, 3)), -1),
        (Fraction(0), 0),
    ],
)
def test_sign(value, expected):
    assert sign(value) == expected


def test_compare_against_rationals():
    assert compare(sqrt(2), Fraction(141, 100)) == 1
    assert compare(sqrt(2), Fraction(142, 100)) == -1
    assert quadratic(1, 1, 3) > 2


def test_float_conversion():
    assert to_float(quadratic(Fraction(11, 18), Fraction(1, 458), 3893)) == pytest.approx(11 / 18 + 3893 ** 0.5 / 458)
    assert to_float(PiMultiple(Fraction(1, 8))) == pytest.approx(3.141592653589793 / 8)


def test_dict_encoding():
    for value in (Fraction(-3, 7), quadratic(Fraction(1, 2), -2, 3), PiMultiple(Fraction(5, 2))):
        assert scalar_from_dict(scalar_to_dict(value)) == value


def test_format():
    assert format_scalar(Fraction(17, 24)) == "17/24"
    assert format_scalar(PiMultiple(Fraction(1, 8))) == "π/8"
    assert format_scalar(quadratic(1, 1, 3)) == "1 + √3"
    assert format_scalar(quadratic(Fraction(11, 18), Fraction(-1, 458), 3893)) == "11/18 - (1/458)√3893"


def test_as_scalar_reads_strings_and_ints():
    assert as_scalar("3/4") == Fraction(3, 4)
    assert as_scalar(5) == Fraction(5)
    with pytest.raises(TypeError):
        as_scalar(0.5)


def test_quadratic_rejects_non_squarefree_radicands():
    with pytest.raises(ValueError):
        QuadraticNumber(0, 1, 4)


def test_rational_field_axioms():
    rng = random.Random(2024)
    for _ in range(10_000):
        x, y, z = (_random_rational(rng) for _ in range(3))
        assert add(add(x, y), z) == add(x, add(y, z))
        assert mul(mul(x, y), z) == mul(x, mul(y, z))
        assert mul(x, add(y, z)) == add(mul(x, y), mul(x, z))
        assert add(x, y) == add(y, x)
        assert sub(add(x, y), y) == x
        if x != 0:
            assert mul(x, div(1, x)) == 1


@pytest.mark.parametrize("d", [3, 3893])
def test_conjugate_product_has_no_root_part(d):
    rng = random.Random(d)
    for _ in range(500):
        x = _random_quadratic(rng, d)
        product = mul(x, x.conjugate())
        assert is_rational(product)
        assert product == x.norm()


@pytest.mark.parametrize("d", [3, 3893])
def test_float_of_a_sum_is_the_sum_of_floats(d):
    rng = random.Random(100 + d)
    for _ in range(500):
        x, y = _random_quadratic(rng, d), _random_quadratic(rng, d)
        expected = to_float(x) + to_float(y)
        assert to_float(add(x, y)) == pytest.approx(expected, rel=1e-12, abs=1e-12)
    for _ in range(500):
        x, y = _random_rational(rng), _random_rational(rng)
        assert to_float(add(x, y)) == pytest.approx(to_float(x) + to_float(y), rel=1e-12, abs=1e-12)
