"""Resultants and two-variable elimination."""

from __future__ import annotations

from typing import Mapping

from ..errors import InvariantViolation, PreconditionError
from .polynomial import ONE, ZERO, Polynomial, as_polynomial, divide_exact
from .ratfunc import substitute


def sylvester_matrix(p: Polynomial, q: Polynomial, var: str) -> list[list[Polynomial]]:
    a = p.coefficients(var)
    b = q.coefficients(var)
    m = max(a, default=0)
    n = max(b, default=0)
    if m <= 0 or n <= 0:
        raise PreconditionError(f"variable absent: both inputs need positive degree in {var}")
    size = m + n
    rows = []
    for i in range(n):
        row = [ZERO] * size
        for e, c in a.items():
            row[i + m - e] = c
        rows.append(row)
    for i in range(m):
        row = [ZERO] * size
        for e, c in b.items():
            row[i + n - e] = c
        rows.append(row)
    return rows


def bareiss_determinant(matrix: list[list[Polynomial]]) -> Polynomial:
    """Fraction-free Gaussian elimination; every division is exact."""
    M = [list(row) for row in matrix]
    n = len(M)
    if n == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(n - 1):
        candidates = [r for r in range(k, n) if not M[r][k].is_zero()]
        if not candidates:
            return ZERO
        pivot_row = min(candidates, key=lambda r: len(M[r][k]))
        if pivot_row != k:
            M[k], M[pivot_row] = M[pivot_row], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            lead = M[i][k]
            for j in range(k + 1, n):
                t = M[i][j] * pivot
                if not lead.is_zero() and not M[k][j].is_zero():
                    t = t - lead * M[k][j]
                if prev.is_one():
                    M[i][j] = t
                else:
                    quo = divide_exact(t, prev)
                    if quo is None:
                        raise InvariantViolation("Bareiss step produced an inexact division")
                    M[i][j] = quo
            M[i][k] = ZERO
        prev = pivot
    det = M[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant(p, q, var: str) -> Polynomial:
    """Res_var(p, q) as the Sylvester determinant."""
    p, q = as_polynomial(p), as_polynomial(q)
    return bareiss_determinant(sylvester_matrix(p, q, var))


def _res_or_passthrough(p: Polynomial, q: Polynomial, var: str) -> Polynomial:
    # Res(f, c) = c^deg(f) for an operand c of degree zero in var.
    dp, dq = p.degree(var), q.degree(var)
    if dp > 0 and dq > 0:
        return resultant(p, q, var)
    if dp > 0:
        return q ** dp
    if dq > 0:
        return p ** dq
    return ONE


def eliminate_two(p1, p2, p3, u: str, v: str) -> Polynomial:
    """``Res_v(Res_u(p1, p2), Res_u(p1, p3))`` with scalar content removed.

    The output vanishes on every projection of a common zero of the three
    inputs, but it can carry extraneous factors; strip known ones with
    :func:`divide_exact`.
    """
    p1, p2, p3 = (as_polynomial(p) for p in (p1, p2, p3))
    for idx, p in enumerate((p1, p2, p3), 1):
        if u not in p.variables and v not in p.variables:
            raise PreconditionError(f"p{idx} involves neither {u} nor {v}")
    if p1.degree(u) <= 0:
        raise PreconditionError(f"p1 must involve {u}")
    r12 = _res_or_passthrough(p1, p2, u)
    r13 = _res_or_passthrough(p1, p3, u)
    if r12.is_zero() or r13.is_zero():
        raise PreconditionError("elimination collapsed: p1 shares a factor with p2 or p3")
    out = _res_or_passthrough(r12, r13, v)
    if out.is_zero():
        raise PreconditionError("elimination collapsed: intermediate resultants share a factor")
    return out.primitive()[1]


def verify_parametrization(p: Polynomial, subst: Mapping[str, object]) -> bool:
    """True iff ``p`` vanishes identically after the substitution."""
    return substitute(as_polynomial(p), subst).num.is_zero()
