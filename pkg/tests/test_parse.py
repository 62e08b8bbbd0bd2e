from fractions import Fraction

import pytest

from lorentz_solitons.parse import ParseError, parse_fraction, parse_poly
from lorentz_solitons.poly import Poly, var

a, b = var("alpha"), var("beta")


@pytest.mark.parametrize("text, expected", [
    ("alpha + beta", a + b),
    ("  alpha+beta ", a + b),
    ("2/4*alpha", Poly.const(Fraction(1, 2)) * a),
    ("-(alpha - beta)^2", -(a - b) ** 2),
    ("alpha*beta^2 - 3", a * b**2 - 3),
    ("1/2*(alpha + 2)", a / 2 + 1),
    ("--alpha", a),
])
def test_grammar(text, expected):
    assert parse_poly(text) == expected


def test_shorthand_environment():
    env = {"b3": a / 2 + var("eta")}
    assert parse_poly("2*eta*b3", env) == a * var("eta") + 2 * var("eta") ** 2


@pytest.mark.parametrize("text, column", [
    ("alpha + * beta", 9),
    ("alpha +", 8),
    ("(alpha", 7),
    ("x + 1", 1),
    ("alpha ^ beta", 9),
])
def test_errors_carry_position(text, column):
    with pytest.raises(ParseError) as exc:
        parse_poly(text)
    assert exc.value.line == 1
    assert exc.value.column == column


def test_error_line_number_is_passed_through():
    with pytest.raises(ParseError) as exc:
        parse_poly("alpha +", line=7)
    assert exc.value.line == 7


def test_fraction_parsing():
    num, den = parse_fraction("(-gamma*delta + 2*beta*delta)/beta")
    assert den == b
    assert num == parse_poly("-gamma*delta + 2*beta*delta")
    num, den = parse_fraction("alpha^2/2")
    assert num / den.constant_value() == a**2 / 2
