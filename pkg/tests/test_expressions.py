from fractions import Fraction

import pytest

from trinomial_lnd.errors import IndexOutOfRange, SpecSyntaxError
from trinomial_lnd.utils.expressions import format_poly, parse_poly, tokenize


def test_parse_single_variable(quadric_ring):
    assert parse_poly("T(1,2)", quadric_ring) == quadric_ring.variable((1, 2))
    assert parse_poly("  T( 1 , 2 ) ", quadric_ring) == quadric_ring.variable((1, 2))


def test_parse_rational_term(quadric_ring):
    p = parse_poly("-1/2 * T(0,1)^2 * T(2,1)", quadric_ring)
    assert quadric_ring.terms(p) == [((2, 0, 0, 0, 1), Fraction(-1, 2))]


def test_parse_sums_and_constants(quadric_ring):
    R = quadric_ring
    x01, x02, x11, x12, x21 = R.gens
    assert parse_poly("T(0,1)*T(0,2) + T(1,1)*T(1,2) + T(2,1)^2", R) == R.g
    assert parse_poly("3 - -T(2,1) - 2/4", R) == x21 + R.monomial((0, 0, 0, 0, 0), Fraction(5, 2))
    assert parse_poly("T(0,1) * T(0,1)", R) == x01**2


def test_unknown_variable(quadric_ring):
    with pytest.raises(IndexOutOfRange):
        parse_poly("T(9,9)", quadric_ring)
    with pytest.raises(IndexOutOfRange):
        parse_poly("T(0,0)", quadric_ring)


@pytest.mark.parametrize(
    "text, column",
    [
        ("T(0,1) +", 9),
        ("2 T(0,1)", 3),
        ("T(0,1) $ 2", 8),
        ("1/0", 3),
        ("T(0,1)^0", 8),
    ],
)
def test_syntax_error_position(quadric_ring, text, column):
    with pytest.raises(SpecSyntaxError) as excinfo:
        parse_poly(text, quadric_ring, line=4)
    assert excinfo.value.line == 4
    assert excinfo.value.column == column


def test_empty_expression(quadric_ring):
    with pytest.raises(SpecSyntaxError):
        parse_poly("   ", quadric_ring)


def test_tokenize_offsets_columns():
    tokens = tokenize("T(0,1)*2", column=10)
    assert [(token.kind, token.column) for token in tokens] == [("variable", 10), ("*", 16), ("number", 17), ("end", 18)]


def test_format_poly(quadric_ring):
    R = quadric_ring
    p = R.monomial((2, 0, 0, 0, 1), Fraction(-1, 2)) + R.variable((1, 2)) + 3
    assert format_poly(p, R) == "-1/2*T(0,1)^2*T(2,1) + T(1,2) + 3"
    assert format_poly(R.zero, R) == "0"
    assert format_poly(-R.g, R) == "-T(0,1)*T(0,2) - T(1,1)*T(1,2) - T(2,1)^2"


@pytest.mark.parametrize(
    "text",
    ["T(0,1)^3*T(1,2) - 7/3*T(2,1)", "-T(0,2) + 1/5", "2*T(0,1)*T(0,2)*T(1,1) - T(1,2)^4"],
)
def test_printed_polynomials_parse_back(quadric_ring, text):
    p = parse_poly(text, quadric_ring)
    assert parse_poly(format_poly(p, quadric_ring), quadric_ring) == p
