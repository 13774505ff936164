from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import polynomials, to_sympy
from convexity_lab.algebra import (
    NEG_INF,
    ONE,
    ZERO,
    Polynomial,
    RationalFunction,
    Verdict,
    bareiss_determinant,
    compute_test_function,
    degeneracy_test,
    divide_exact,
    eliminate_two,
    partial_derivative,
    poly_arith,
    resultant,
    rf_equal,
    substitute,
    sylvester_matrix,
    verify_parametrization,
    xn_family_check,
)
from convexity_lab.algebra import formulas as fm
from convexity_lab.algebra.polynomial import MAX_EXP, variables
from convexity_lab.errors import PreconditionError

sympy = pytest.importorskip("sympy")
x, y, z, a, b = variables("x y z a b")


# -- polynomials --------------------------------------------------------------


def test_printing():
    assert str(ZERO) == "0"
    assert str(x ** 2 - 1) == "x^2 - 1"
    assert str(Fraction(-1, 2) * x * y ** 2) == "-1/2*x*y^2"
    assert str(4 * x * z - 3 * y ** 2 - x ** 4) == "-x^4 + 4*x*z - 3*y^2"


def test_natural_variable_order():
    p = Polynomial.var("s10") + Polynomial.var("s2")
    assert p.variables == ("s2", "s10")


def test_degree_and_leading_term():
    p = 3 * x ** 2 * y - x * y ** 3 + 5
    assert p.degree() == 4
    assert p.degree("x") == 2
    assert p.degree("z") == 0
    assert ZERO.degree() == NEG_INF
    mono, c = p.leading_term()
    assert mono == {"x": 1, "y": 3} and c == -1


def test_primitive_and_content():
    p = Fraction(-2, 3) * x + Fraction(4, 9)
    c, q = p.primitive()
    assert q == 3 * x - 2
    assert c * q == p


def test_exponent_overflow():
    big = x ** MAX_EXP
    with pytest.raises(OverflowError):
        big * x


def test_evaluate_requires_all_bindings():
    with pytest.raises(PreconditionError):
        (x + y).evaluate({"x": 1})
    assert (x + y).subs({"x": 1}) == y + 1


def test_divide_by_zero_polynomial():
    with pytest.raises(PreconditionError):
        divide_exact(x, ZERO)


@given(polynomials(), polynomials())
def test_ring_ops_match_sympy(p, q):
    for op, f in (("add", lambda u, v: u + v), ("sub", lambda u, v: u - v), ("mul", lambda u, v: u * v)):
        ours = poly_arith(op, p, q)
        assert sympy.expand(to_sympy(ours) - f(to_sympy(p), to_sympy(q))) == 0


@given(polynomials(rational=True))
def test_derivative_matches_sympy(p):
    for v in ("x", "y"):
        assert sympy.expand(to_sympy(p.diff(v)) - sympy.diff(to_sympy(p), sympy.Symbol(v))) == 0


@given(polynomials(), polynomials())
def test_divide_exact_recovers_factor(p, q):
    if q.is_zero():
        return
    assert divide_exact(p * q, q) == p


@given(polynomials(max_terms=3))
def test_divide_exact_rejects_non_multiples(p):
    q = x + 2 * y + 1
    if p.is_zero():
        return
    out = divide_exact(p * q + 1, q)
    assert out is None


@given(polynomials(rational=True))
def test_hash_consistent_with_eq(p):
    q = (p + x) - x
    assert p == q and hash(p) == hash(q)


# -- rational functions -------------------------------------------------------


def test_rational_function_normalisation():
    r = RationalFunction(2 * x, -4 * y)
    assert r.den.leading_coefficient() > 0
    assert rf_equal(r, RationalFunction(-x, 2 * y))
    assert RationalFunction(ZERO, x).den == ONE


def test_evaluate_at_pole():
    with pytest.raises(PreconditionError):
        RationalFunction(ONE, x - 1).evaluate({"x": 1})


@given(polynomials(max_terms=3), polynomials(max_terms=3))
def test_quotient_rule_matches_sympy(p, q):
    if q.is_zero():
        return
    r = RationalFunction(p, q)
    d = partial_derivative(r, "x")
    ref = sympy.diff(to_sympy(p) / to_sympy(q), sympy.Symbol("x"))
    assert sympy.cancel(to_sympy(d.num) / to_sympy(d.den) - ref) == 0


def test_substitute_common_denominator():
    r = substitute(x * y - 1, {"x": RationalFunction(a, b), "y": RationalFunction(b, a)})
    assert r.is_zero()


# -- resultants ---------------------------------------------------------------


def test_sylvester_shape():
    M = sylvester_matrix(x ** 2 + y, x * y - 1, "x")
    assert len(M) == 3 and all(len(r) == 3 for r in M)
    with pytest.raises(PreconditionError):
        sylvester_matrix(y, x, "x")


@settings(max_examples=30)
@given(polynomials(gens=("x", "y"), max_deg=2, max_terms=4), polynomials(gens=("x", "y"), max_deg=2, max_terms=4))
def test_resultant_matches_sympy(p, q):
    if p.degree("x") <= 0 or q.degree("x") <= 0:
        return
    ours = resultant(p, q, "x")
    ref = sympy.resultant(to_sympy(p), to_sympy(q), sympy.Symbol("x"))
    assert sympy.expand(to_sympy(ours) - ref) == 0


@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_matches_integer_determinant(rows):
    M = [[Polynomial.const(v) for v in r] for r in rows]
    det = bareiss_determinant(M)
    assert det == Polynomial.const(int(sympy.Matrix(rows).det()))


def test_symbolic_bareiss():
    M = [[x, y], [y, x]]
    assert bareiss_determinant(M) == x ** 2 - y ** 2


def test_resultant_detects_common_root():
    assert resultant((x - y) * (x + 1), x - y, "x") == ZERO


# -- elimination --------------------------------------------------------------


def test_difference_system_eliminant():
    out = eliminate_two(*fm.difference_system(), "a", "b")
    # frozen value; it is -x times the cubic surface
    assert out == x ** 5 - 4 * x ** 2 * z + 3 * x * y ** 2
    assert divide_exact(out, fm.cubic_surface()) == -x


def test_shift_system_eliminant_factors():
    out = eliminate_two(*fm.shift_system(), "t0", "t1")
    q = divide_exact(out, fm.shift_surface_extraneous())
    assert q is not None
    cof = divide_exact(q, fm.shift_surface())
    assert cof is not None
    assert "y" not in cof.variables and "z" not in cof.variables


def test_eliminate_preconditions():
    with pytest.raises(PreconditionError):
        eliminate_two(x, y, z, "u", "v")
    with pytest.raises(PreconditionError):
        eliminate_two(Polynomial.var("v") - x, Polynomial.var("u") - y, Polynomial.var("v") - z, "u", "v")


def test_eliminate_degree_zero_operand():
    u, v = variables("u v")
    assert eliminate_two(u - x, u - y, v - z, "u", "v") in (x - y, y - x)


def test_verify_parametrization():
    assert verify_parametrization(fm.cubic_surface(), fm.difference_parametrization())
    assert verify_parametrization(fm.shift_surface(), fm.shift_parametrization())
    assert not verify_parametrization(fm.cubic_surface() + 1, fm.difference_parametrization())


# -- derivative test ----------------------------------------------------------


def sympy_test_function(f_str):
    X, Y = sympy.symbols("x y")
    f = sympy.sympify(f_str.replace("^", "**"))
    fx, fy = sympy.diff(f, X), sympy.diff(f, Y)
    return sympy.diff(sympy.diff(fx, X) / fx - sympy.diff(fx, Y) / fy, Y)


def agrees_at_points(ours: RationalFunction, ref, points):
    X, Y = sympy.symbols("x y")
    compared = 0
    for px, py in points:
        den = ours.den.evaluate({"x": px, "y": py})
        if den == 0:
            continue
        mine = ours.num.evaluate({"x": px, "y": py}) / den
        at = {X: sympy.Rational(px), Y: sympy.Rational(py)}
        theirs = ref.subs(at)
        if not theirs.is_finite:
            # the unreduced reference can be 0/0 where the reduced form is defined
            theirs = sympy.cancel(sympy.together(ref)).subs(at)
        assert sympy.Rational(mine.numerator, mine.denominator) == theirs
        compared += 1
    assert compared


POINTS = [(Fraction(2), Fraction(3)), (Fraction(3, 2), Fraction(-1, 3)), (Fraction(5), Fraction(7, 2))]


def test_cubic_surface_test_function():
    rep = degeneracy_test(fm.cubic_surface_solved())
    assert rep.verdict is Verdict.NON_DEGENERATE
    assert rf_equal(rep.test_function, fm.cubic_surface_test_function_derived())
    agrees_at_points(rep.test_function, sympy_test_function("(3*y^2 + x^4)/(4*x)"), POINTS)


def test_published_cubic_formula_differs():
    # x=1, y=2: the computed value is 16/9, the published expression gives 32/225
    T = degeneracy_test(fm.cubic_surface_solved()).test_function
    pt = {"x": 1, "y": 2}
    assert T.evaluate(pt) == Fraction(16, 9)
    assert fm.cubic_surface_test_function_published().evaluate(pt) == Fraction(32, 225)


@pytest.mark.parametrize(
    "f", ["x^2*y + y^3/x", "(x + y)/(x - y)", "x^3*y + x*y^2 + 1", "(x^2 + 1)/(y^2 + x)"]
)
def test_log_route_matches_sympy(f):
    from convexity_lab.parser import parse_rational_function

    T = compute_test_function(parse_rational_function(f))
    agrees_at_points(T, sympy_test_function(f), POINTS)
    assert rf_equal(T, compute_test_function(parse_rational_function(f), method="direct"))


@pytest.mark.parametrize("f", ["x + y", "x*y", "(x + y)^3", "x^2*y^5", "exp_free + x^3 + y"])
def test_separable_functions_are_inconclusive(f):
    from convexity_lab.parser import parse_rational_function

    rep = degeneracy_test(parse_rational_function(f))
    assert rep.verdict is Verdict.INCONCLUSIVE
    assert rep.test_function.is_zero()


def test_inapplicable_when_partial_vanishes():
    with pytest.raises(PreconditionError, match="inapplicable"):
        degeneracy_test(x ** 2 + 1)


def test_shift_surface_test_function():
    rep = degeneracy_test(fm.shift_surface_solved())
    assert rep.verdict is Verdict.NON_DEGENERATE
    assert rf_equal(rep.test_function, fm.shift_surface_test_function_derived())
    assert not rf_equal(rep.test_function, fm.shift_surface_test_function_published())


def test_shift_surface_matches_sympy_at_specialised_parameters():
    params = {"s0": 1, "s1": 2, "s2": 4, "s3": 7}
    g = fm.shift_surface_solved().subs(params)
    ours = degeneracy_test(g).test_function
    agrees_at_points(ours, sympy_test_function(str(g)), POINTS)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_xn_family(n):
    rep, _ = xn_family_check(n)
    assert rep.verdict is Verdict.NON_DEGENERATE
    f = str(fm.xn_family_function(n))
    agrees_at_points(rep.test_function, sympy_test_function(f), POINTS)


def test_xn_family_rejects_small_n():
    with pytest.raises(PreconditionError):
        xn_family_check(2)


def test_excluded_locus():
    rep = degeneracy_test(fm.cubic_surface_solved())
    assert rep.excluded_locus == x ** 5 * y - x * y ** 3
