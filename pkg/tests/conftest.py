import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from convexity_lab.algebra.polynomial import Polynomial

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

VARS = ("x", "y", "z")

# criterion number -> (status, detail), filled by the acceptance suite
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {detail}")


@st.composite
def polynomials(draw, gens=VARS, max_deg=3, max_terms=5, coeff=10, rational=False):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        exps = tuple(draw(st.integers(0, max_deg)) for _ in gens)
        c = draw(st.integers(-coeff, coeff))
        if rational:
            c = Fraction(c, draw(st.integers(1, 5)))
        terms[tuple((g, e) for g, e in zip(gens, exps) if e)] = c
    return Polynomial.from_terms(terms)


def to_sympy(obj):
    sympy = pytest.importorskip("sympy")
    return sympy.sympify(str(obj).replace("^", "**"))


@pytest.fixture
def rng():
    return random.Random(12345)


def random_linear(rng, gens=VARS, bound=3):
    p = Polynomial.const(rng.randint(-bound, bound))
    for g in gens:
        p = p + rng.randint(-bound, bound) * Polynomial.var(g)
    return p


def random_surface(rng, max_deg=4):
    """Products of low-degree factors so that zeros are common; sometimes a
    factor in x and y only, which makes whole fibres vanish."""
    x, y, z = (Polynomial.var(v) for v in VARS)
    F = Polynomial.const(1)
    deg = 0
    while deg < max_deg and (deg == 0 or rng.random() < 0.6):
        kind = rng.choice(["lin", "lin", "fibre", "quad"])
        if kind == "lin":
            f = random_linear(rng)
        elif kind == "fibre":
            f = x - rng.randint(-2, 2) if rng.random() < 0.5 else y - rng.randint(-2, 2)
        else:
            f = random_linear(rng) * z - x * y + rng.randint(-3, 3)
        fd = f.degree()
        if fd <= 0 or deg + fd > max_deg:
            continue
        F = F * f
        deg += fd
    if F.degree() <= 0:
        F = x + y - z
    return F


def random_set(rng, max_size=12, lo=-4, hi=4, den=2):
    k = rng.randint(1, max_size)
    pool = sorted({Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den)) for _ in range(3 * k)})
    return rng.sample(pool, min(k, len(pool)))
