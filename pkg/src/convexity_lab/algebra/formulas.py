"""Fixed polynomials and rational functions used by the pipelines.

Variable convention: ``s0..s3`` are four consecutive sorted parameters
(``s_i .. s_{i+3}``), ``t0, t1`` are ``s_{3j}`` and ``s_{3(j+1)}``, and
``x, y, z`` are the surface coordinates.
"""

from __future__ import annotations

from functools import lru_cache

from .polynomial import Polynomial, variables
from .ratfunc import RationalFunction

x, y, z = variables("x y z")
a, b = variables("a b")
s0, s1, s2, s3 = variables("s0 s1 s2 s3")
t0, t1 = variables("t0 t1")


def cubic_surface() -> Polynomial:
    """``4xz - 3y^2 - x^4``: vanishes at (a-b, a^2-b^2, a^3-b^3)."""
    return 4 * x * z - 3 * y ** 2 - x ** 4


def cubic_surface_solved() -> RationalFunction:
    """``z`` as a function of ``x, y`` on the cubic surface."""
    return RationalFunction(3 * y ** 2 + x ** 4, 4 * x)


def difference_system() -> tuple[Polynomial, Polynomial, Polynomial]:
    """``a-b-x, a^2-b^2-y, a^3-b^3-z``; eliminate ``a, b``."""
    return a - b - x, a ** 2 - b ** 2 - y, a ** 3 - b ** 3 - z


def difference_parametrization() -> dict[str, Polynomial]:
    return {"x": a - b, "y": a ** 2 - b ** 2, "z": a ** 3 - b ** 3}


def _shift_ratio(lo: Polynomial, hi: Polynomial):
    """``(hi*t1+1)(lo*t0+1) / ((lo*t1+1)(hi*t0+1))``."""
    return (hi * t1 + 1) * (lo * t0 + 1), (lo * t1 + 1) * (hi * t0 + 1)


def shift_parametrization() -> dict[str, RationalFunction]:
    """The three ratios of consecutive gap ratios as functions of s0..s3, t0, t1."""
    out = {}
    for name, (lo, hi) in zip("xyz", ((s0, s1), (s1, s2), (s2, s3))):
        num, den = _shift_ratio(lo, hi)
        out[name] = RationalFunction(num, den)
    return out


def shift_system() -> tuple[Polynomial, Polynomial, Polynomial]:
    """Denominator-cleared form ``den*x - num`` of :func:`shift_parametrization`."""
    polys = []
    for var, (lo, hi) in zip((x, y, z), ((s0, s1), (s1, s2), (s2, s3))):
        num, den = _shift_ratio(lo, hi)
        polys.append(den * var - num)
    return tuple(polys)


def _g_coefficients():
    A = (s0 - s1) * (s2 - s3)
    B = (s2 - s0) * (s1 - s3)
    C = (s0 - s3) * (s1 - s2)
    return A, B, C


def shift_surface() -> Polynomial:
    """G(x, y, z) with coefficients in s0..s3."""
    A, B, C = _g_coefficients()
    return (x * y ** 2 * z + 1) * A + (x * y * z + y) * B + (y * z + x * y) * C


def shift_surface_extraneous() -> Polynomial:
    """The known extraneous factor ``(x-1)(z-1)`` of the eliminant."""
    return (x - 1) * (z - 1)


def shift_surface_solved() -> RationalFunction:
    """``z = g(x, y)`` on G = 0."""
    A, B, C = _g_coefficients()
    return RationalFunction(-x * y * C - y * B - A, x * y ** 2 * A + x * y * B + y * C)


def shift_surface_test_function_published() -> RationalFunction:
    """Transcription of the published mixed log-derivative of ``g``."""
    num = -2 * (
        (x ** 2 * y ** 2 + 1) * (s0 - s1) * (s1 - s2) * (s0 - s3)
        + (x ** 2 * y + y) * (s0 - s2) * (s1 - s2) * (s0 - s3) * (s1 - s3)
        + 2 * x * y * (s1 - s2) ** 2 * (s0 - s3) ** 2
    )
    base = (
        (x ** 2 * y ** 2 + 1) * (s1 - s2) * (s0 - s3)
        - (x * y ** 2 + x) * (s0 - s2) * (s1 - s3)
        + 2 * x * y * (s0 - s1) * (s2 - s3)
        - x * (s0 - s2) * (s1 - s3)
    )
    return RationalFunction(num, base ** 2)


# Published explicit zero locus of the test function in y, kept for reference
# only: the roots involve a square root and leave the rational function field.
ZERO_LOCUS_Y_AT_X0 = "((s0 - s1)*(s2 - s3))/((s0 - s2)*(s1 - s3))"
ZERO_LOCUS_R1 = (
    "((x^2 + 1)*(s0 - s2)*(s1 - s3) - 2*x*(s1 - s2)*(s0 - s3))"
    "/(2*x^2*(s0 - s1)*(s2 - s3))"
)
ZERO_LOCUS_R2 = (
    "((x^2 + 1)*(s0*s1 - s2*s1 + s2*s3)*(s0*s1 - s2*s1 - 2*s0*s3 + s2*s3)"
    " - 2*x*(s0 - s2)*(s1 - s3)*(s0*s1 + s2*s1 - 2*s3*s1 - 2*s0*s2 + s0*s3 + s2*s3))"
    "/(x^4*(s0 - s1)^2*(s2 - s3)^2)"
)


def cubic_surface_test_function_published() -> RationalFunction:
    """Transcription of the published test function for the cubic surface."""
    return RationalFunction(8 * x ** 3 * y ** 2, (x ** 4 - y ** 4) ** 2)


def shift_surface_test_function_derived() -> RationalFunction:
    """Hand-reduced mixed log-derivative of ``g`` (differs from the published
    transcription in three places)."""
    num = -2 * (s0 - s3) * (s1 - s2) * (
        (x ** 2 * y ** 2 + 1) * (s0 - s1) * (s2 - s3)
        - (x ** 2 * y + y) * (s0 - s2) * (s1 - s3)
        + 2 * x * y * (s0 - s3) * (s1 - s2)
    )
    base = (
        (x ** 2 * y ** 2 + 1) * (s1 - s2) * (s0 - s3)
        - (x * y ** 2 + x) * (s0 - s2) * (s1 - s3)
        + 2 * x * y * (s0 - s1) * (s2 - s3)
    )
    return RationalFunction(num, base ** 2)


def cubic_surface_test_function_derived() -> RationalFunction:
    """Hand-derived value: ``d^2 ln|(x^4-y^2)/(2xy)| / dx dy``."""
    return RationalFunction(8 * x ** 3 * y, (x ** 4 - y ** 2) ** 2)


def xn_family_function(n: int, exact_denominator: bool = False) -> RationalFunction:
    """``((x^2+y)^n - (y-x^2)^n) / (2x)`` as published.

    Solving ``c=a-b, d=a^2-b^2`` gives ``a=(d+c^2)/(2c)``, so ``e=a^n-b^n``
    really carries ``(2x)^n``; pass ``exact_denominator=True`` for that form.
    """
    den = (2 * x) ** n if exact_denominator else 2 * x
    return RationalFunction((x ** 2 + y) ** n - (y - x ** 2) ** n, den)


@lru_cache(maxsize=None)
def xn_closed_form(n: int) -> RationalFunction:
    """Transcription of the published test function for the x^n family."""
    u = x ** 2 + y
    w = x ** 2 - y
    v = y - x ** 2
    q = y ** 2 - x ** 4
    cubic_plus = (2 * n - 3) * x ** 6 + (4 * n ** 2 - 12 * n + 9) * x ** 4 * y + (6 * n - 5) * x ** 2 * y ** 2 - y ** 3
    cubic_minus = (2 * n - 3) * x ** 6 - (4 * n ** 2 - 12 * n + 9) * x ** 4 * y + (6 * n - 5) * x ** 2 * y ** 2 - y ** 3
    num = (
        u ** 5 * w ** (4 * n + 1)
        - w ** 5 * u ** (4 * n + 1)
        - 8 * (n - 1) * x ** 2 * y * q ** (2 * n + 1) * (x ** 4 - 3 * y ** 2)
        - 2 * v ** (3 * n) * u ** (n + 3) * cubic_plus
        - 2 * v ** (n + 3) * u ** (3 * n) * cubic_minus
    )
    r = x ** 4 - y ** 2
    inner = 2 * y * r ** (2 * n + 1) - w ** 3 * u ** (2 * n) + u ** 3 * v ** (2 * n)
    return RationalFunction(num, r * inner ** 2)
