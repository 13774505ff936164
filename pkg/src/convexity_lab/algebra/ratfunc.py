"""Quotients of polynomials, normalised by scalar content only.

No multivariate gcd is ever taken: the denominator is made primitive with a
positive leading coefficient and that is all.  Zero testing only needs the
numerator, and equality is decided by cross multiplication.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Mapping

from ..errors import PreconditionError
from .polynomial import ONE, Polynomial, as_polynomial, as_rational


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = as_polynomial(num)
        den = ONE if den is None else as_polynomial(den)
        if den.is_zero():
            raise PreconditionError("division by zero polynomial")
        if not den.is_one():
            c, den = den.primitive()
            if den.is_constant():
                den = ONE
            if c != 1:
                num = num.scale(1 / c)
        if num.is_zero():
            den = ONE
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, value) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        return cls(as_polynomial(value))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    @property
    def variables(self) -> tuple[str, ...]:
        from .polynomial import var_key
        return tuple(sorted(set(self.num.variables) | set(self.den.variables), key=var_key))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        if self.den.is_one():
            return RationalFunction(self.num * other.den + other.num, other.den)
        if other.den.is_one():
            return RationalFunction(self.num + other.num * self.den, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.num and not self.den.is_one():
            return RationalFunction(self.num, other.den)
        if other.den == self.num and not other.den.is_one():
            return RationalFunction(other.num, self.den)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise PreconditionError("division by zero polynomial")
        return self * RationalFunction(other.den, other.num)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise PreconditionError("exponent must be an integer")
        if n < 0:
            return RationalFunction(ONE) / (self ** -n)
        return RationalFunction(self.num ** n, self.den ** n)

    def diff(self, var: str) -> "RationalFunction":
        """Quotient rule, no cancellation beyond scalar content."""
        dn = self.num.diff(var)
        dd = self.den.diff(var)
        if dd.is_zero():
            return RationalFunction(dn, self.den)
        return RationalFunction(dn * self.den - self.num * dd, self.den * self.den)

    def subs(self, bindings: Mapping[str, object]) -> "RationalFunction":
        return RationalFunction(self.num.subs(bindings), self.den.subs(bindings))

    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        d = self.den.evaluate(values)
        if not d:
            raise PreconditionError("denominator vanishes at this point")
        return self.num.evaluate(values) / d

    # -- comparison ---------------------------------------------------------

    def structurally_equal(self, other: "RationalFunction") -> bool:
        return self.num == other.num and self.den == other.den

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return rf_equal(self, other)

    __hash__ = None

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"


def _coerce(value):
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, (Polynomial, int, Fraction)):
        return RationalFunction(value)
    return NotImplemented


def _probe_differs(r1: RationalFunction, r2: RationalFunction, tries: int = 3) -> bool:
    """Cheap evaluation at a few rational points; True means certainly unequal."""
    names = sorted(set(r1.variables) | set(r2.variables))
    if not names:
        return False
    rng = random.Random(0x5EED)
    for _ in range(tries):
        point = {v: Fraction(rng.randint(-97, 97), rng.randint(1, 31)) for v in names}
        d1 = r1.den.evaluate(point)
        d2 = r2.den.evaluate(point)
        if not d1 or not d2:
            continue
        if r1.num.evaluate(point) * d2 != r2.num.evaluate(point) * d1:
            return True
    return False


def rf_equal(r1, r2) -> bool:
    """Exact equality as rational functions: ``n1*d2 - n2*d1 == 0``."""
    r1 = RationalFunction.coerce(r1)
    r2 = RationalFunction.coerce(r2)
    if r1.structurally_equal(r2):
        return True
    if _probe_differs(r1, r2):
        return False
    return (r1.num * r2.den - r2.num * r1.den).is_zero()


def partial_derivative(obj, var: str):
    """Formal partial derivative of a Polynomial or RationalFunction."""
    if isinstance(obj, RationalFunction):
        return obj.diff(var)
    return as_polynomial(obj).diff(var)


def substitute(p: Polynomial, subst: Mapping[str, object]) -> RationalFunction:
    """Replace variables of ``p`` by rational functions, clearing denominators
    against a single common denominator ``prod den_v^deg_v(p)``."""
    subst = {v: RationalFunction.coerce(r) for v, r in subst.items() if v in p.variables}
    for v, r in subst.items():
        if r.den.is_zero():
            raise PreconditionError(f"substituted denominator for {v} is zero")
    if not subst:
        return RationalFunction(p)
    order = list(subst)
    top = {v: p.degree(v) for v in order}
    num_pow: dict = {}
    den_pow: dict = {}

    def npow(v, e):
        if (v, e) not in num_pow:
            num_pow[(v, e)] = subst[v].num ** e
        return num_pow[(v, e)]

    def dpow(v, e):
        if (v, e) not in den_pow:
            den_pow[(v, e)] = subst[v].den ** e
        return den_pow[(v, e)]

    total = Polynomial()
    for mono, c in p.monomials():
        term = Polynomial.const(c)
        for g, e in mono.items():
            if g not in subst:
                term = term * Polynomial.var(g) ** e
        for v in order:
            e = mono.get(v, 0)
            term = term * npow(v, e) * dpow(v, top[v] - e)
        total = total + term
    den = ONE
    for v in order:
        den = den * dpow(v, top[v])
    return RationalFunction(total, den)


def as_rational_function(value) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, str):
        from ..parser import parse_rational_function
        return parse_rational_function(value)
    return RationalFunction(as_polynomial(value))


__all__ = [
    "RationalFunction",
    "rf_equal",
    "partial_derivative",
    "substitute",
    "as_rational_function",
    "as_rational",
]
