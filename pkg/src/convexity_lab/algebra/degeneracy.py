"""The Elekes-Ronyai derivative test for degeneracy.

For ``z = f(x, y)`` the test function is

    T = d/dy ( f_xx/f_x - f_xy/f_y ) = d^2 ln|f_x/f_y| / dx dy.

The logarithm is never materialised.  Writing ``f_x/f_y`` as a signed product
of polynomial factors ``h``, each factor contributes ``m * (h_xy*h - h_x*h_y)/h^2``
(the mixed log-derivative of ``h``), and factors that are free of ``x`` or of
``y`` contribute nothing.  ``method="direct"`` evaluates the quotient-rule
expression literally instead and is kept as an independent route.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..errors import PreconditionError
from .polynomial import ONE, Polynomial
from .ratfunc import RationalFunction, as_rational_function, rf_equal


class Verdict(str, enum.Enum):
    NON_DEGENERATE = "NonDegenerate"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class DegeneracyReport:
    test_function: RationalFunction
    verdict: Verdict
    excluded_locus: Polynomial

    def __post_init__(self):
        if (self.verdict is Verdict.NON_DEGENERATE) == self.test_function.is_zero():
            raise ValueError("verdict disagrees with the test function")


def _monomial_free(h: Polynomial) -> Polynomial:
    """Divide out the largest monomial factor and the scalar content."""
    mins = None
    for mono, _ in h.monomials():
        if mins is None:
            mins = dict(mono)
        else:
            mins = {v: min(e, mono.get(v, 0)) for v, e in mins.items() if mono.get(v, 0)}
        if not mins:
            break
    if mins:
        from .polynomial import divide_exact
        h = divide_exact(h, Polynomial.from_terms({tuple(mins.items()): 1}))
    return h.primitive()[1]


def _log_factors(f: RationalFunction, x: str, y: str):
    """Signed polynomial factors of ``f_x / f_y``.  Also returns the two
    derivative numerators for the excluded locus."""
    n, d = f.num, f.den
    nx, ny = n.diff(x), n.diff(y)
    dx, dy = d.diff(x), d.diff(y)
    if dx.is_zero():
        fx = [(nx, 1), (d, -1)]
    else:
        fx = [(nx * d - n * dx, 1), (d, -2)]
    if dy.is_zero():
        fy = [(ny, 1), (d, -1)]
    else:
        fy = [(ny * d - n * dy, 1), (d, -2)]
    if fx[0][0].is_zero() or fy[0][0].is_zero():
        raise PreconditionError("test inapplicable: f_x or f_y vanishes identically")
    return fx + [(h, -m) for h, m in fy], fx[0][0], fy[0][0]


def _mixed_log_derivative(h: Polynomial, x: str, y: str) -> Polynomial:
    hx, hy = h.diff(x), h.diff(y)
    return h.diff(x).diff(y) * h - hx * hy


def _combine(factors, x: str, y: str) -> RationalFunction:
    merged: dict[Polynomial, int] = {}
    for h, m in factors:
        if h.is_constant():
            continue
        h = _monomial_free(h)
        vs = h.variables
        if x not in vs or y not in vs:
            continue
        merged[h] = merged.get(h, 0) + m
    parts = []
    for h, m in merged.items():
        if not m:
            continue
        top = _mixed_log_derivative(h, x, y)
        if not top.is_zero():
            parts.append((top.scale(m), h))
    if not parts:
        return RationalFunction(Polynomial())
    squares = [h * h for _, h in parts]
    num = Polynomial()
    for i, (top, _) in enumerate(parts):
        term = top
        for k, sq in enumerate(squares):
            if k != i:
                term = term * sq
        num = num + term
    den = ONE
    for sq in squares:
        den = den * sq
    return RationalFunction(num, den)


def compute_test_function(f, x: str = "x", y: str = "y", method: str = "log") -> RationalFunction:
    f = as_rational_function(f)
    if method == "log":
        factors, _, _ = _log_factors(f, x, y)
        return _combine(factors, x, y)
    if method == "direct":
        fx, fy = f.diff(x), f.diff(y)
        if fx.is_zero() or fy.is_zero():
            raise PreconditionError("test inapplicable: f_x or f_y vanishes identically")
        inner = fx.diff(x) / fx - fx.diff(y) / fy
        return inner.diff(y)
    raise PreconditionError(f"unknown method {method!r}")


def degeneracy_test(f, x: str = "x", y: str = "y", method: str = "log") -> DegeneracyReport:
    """Run the derivative test on ``z = f(x, y)``; other variables are parameters."""
    f = as_rational_function(f)
    factors, px, py = _log_factors(f, x, y)
    t = _combine(factors, x, y) if method == "log" else compute_test_function(f, x, y, method)
    locus = (px * py * f.den).primitive()[1]
    verdict = Verdict.INCONCLUSIVE if t.is_zero() else Verdict.NON_DEGENERATE
    return DegeneracyReport(t, verdict, locus)


def xn_family_check(n: int) -> tuple[DegeneracyReport, bool]:
    """Test ``((x^2+y)^n - (y-x^2)^n)/(2x)`` and compare with the closed form.

    Returns the report and whether the closed form matched."""
    from .formulas import xn_closed_form, xn_family_function

    if not isinstance(n, int) or n < 3:
        raise PreconditionError("xn_family_check needs an integer n >= 3")
    report = degeneracy_test(xn_family_function(n))
    return report, rf_equal(report.test_function, xn_closed_form(n))
