import pytest
from hypothesis import given

from conftest import polynomials
from convexity_lab.algebra import RationalFunction, rf_equal
from convexity_lab.algebra import formulas as fm
from convexity_lab.errors import ParseError, PreconditionError
from convexity_lab.parser import (
    lower,
    parse_expr,
    parse_polynomial,
    parse_rational_function,
    print_canonical,
    tokenize,
)


def test_token_positions_increase():
    toks = tokenize("4*x*z - 3*y^2")
    positions = [t.position for t in toks]
    assert positions == sorted(set(positions))
    assert [t.kind for t in toks[:3]] == ["number", "star", "identifier"]


def test_precedence():
    assert parse_expr("-x^2") == ("neg", ("pow", ("var", "x"), 2))
    assert parse_expr("a - b - c") == ("sub", ("sub", ("var", "a"), ("var", "b")), ("var", "c"))
    assert parse_expr("a / b * c")[0] == "mul"
    assert parse_polynomial("2 + 3*4") == parse_polynomial("14")


def test_cubic_surface_text():
    assert parse_polynomial("4*x*z - 3*y^2 - x^4") == fm.cubic_surface()


def test_quotient_text():
    r = parse_rational_function("(3*y^2 + x^4)/(4*x)")
    assert parse_expr("(3*y^2 + x^4)/(4*x)")[0] == "div"
    assert rf_equal(r, fm.cubic_surface_solved())


def test_xn_text():
    r = parse_rational_function("((x^2+y)^3 - (y-x^2)^3)/(2*x)")
    assert rf_equal(r, fm.xn_family_function(3))


def test_rational_literals_fold():
    assert parse_polynomial("3/4*x").leading_coefficient() == pytest.approx(0.75)
    assert str(parse_polynomial("-1/2*x*y^2")) == "-1/2*x*y^2"


def test_x_minus_x():
    r = lower(parse_expr("x - x"))
    assert r.is_zero() and r.den.is_one()


@pytest.mark.parametrize(
    "src, pos",
    [("x^(-1)", 2), ("x^y", 2), ("(x + 1", 6), ("x + * y", 4), ("2x", 1), ("x $ y", 2), ("", 0)],
)
def test_errors_carry_positions(src, pos):
    with pytest.raises(ParseError) as info:
        parse_expr(src)
    assert info.value.position == pos


def test_byte_offsets_for_non_ascii():
    with pytest.raises(ParseError) as info:
        parse_expr("x + é")
    assert info.value.position == 4
    with pytest.raises(ParseError) as info:
        parse_expr("x + é + ?")
    assert "at byte" in str(info.value)


def test_division_by_zero_polynomial():
    with pytest.raises(PreconditionError, match="division by zero polynomial"):
        parse_rational_function("1/(x - x)")


def test_identifiers():
    p = parse_polynomial("s_i1*t0 + _a")
    assert set(p.variables) == {"s_i1", "t0", "_a"}


def test_not_a_polynomial():
    with pytest.raises(PreconditionError):
        parse_polynomial("1/x")


@given(polynomials(gens=tuple(f"v{i}" for i in range(7)), max_deg=6, max_terms=6, coeff=2 ** 64, rational=True))
def test_round_trip_polynomials(p):
    assert parse_polynomial(print_canonical(p)) == p


@given(polynomials(max_terms=3, rational=True), polynomials(max_terms=3))
def test_round_trip_rational_functions(p, q):
    if q.is_zero():
        return
    r = RationalFunction(p, q)
    back = parse_rational_function(print_canonical(r))
    assert back.structurally_equal(r)
