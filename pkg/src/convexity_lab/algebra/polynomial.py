"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is packed into one non-negative integer.  Every generator owns a
16-bit field (15 exponent bits and one guard bit); the first generator sits in
the most significant field.  With that layout monomial multiplication is an
integer addition, lexicographic comparison is integer comparison, and
divisibility is a single guarded subtraction.

Coefficients are stored as ``int`` when integral and as ``Fraction`` otherwise,
so equal polynomials always have identical term dictionaries.
"""

from __future__ import annotations

import heapq
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from ..errors import PreconditionError

BITS = 16
FIELD = (1 << BITS) - 1
MAX_EXP = (1 << (BITS - 1)) - 1

#: Degree of the zero polynomial.
NEG_INF = float("-inf")

Scalar = Union[int, Fraction]


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise PreconditionError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"cannot interpret {value!r} as a rational")


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _div(a, b):
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if not r:
            return q
        return Fraction(a, b)
    return _norm(Fraction(a) / b)


def var_key(name: str):
    """Natural sort key so that s2 precedes s10."""
    return tuple(int(p) if p.isdigit() else p for p in re.split(r"(\d+)", name))


@lru_cache(maxsize=None)
def _guard(n: int) -> int:
    g = 0
    for i in range(n):
        g |= 1 << (BITS * i + BITS - 1)
    return g


def _pack(exps: Iterable[int], n: int) -> int:
    key = 0
    for e in exps:
        if e > MAX_EXP:
            raise OverflowError(f"exponent {e} exceeds {MAX_EXP}")
        key = (key << BITS) | e
    return key


def _unpack(key: int, n: int) -> list[int]:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = key & FIELD
        key >>= BITS
    return out


def _tdeg(key: int) -> int:
    s = 0
    while key:
        s += key & FIELD
        key >>= BITS
    return s


def _remap(terms: dict, old: tuple, new: tuple) -> dict:
    if old == new:
        return terms
    n_old, n_new = len(old), len(new)
    # generators missing from ``new`` must be unused
    pos = [new.index(g) if g in new else -1 for g in old]
    out = {}
    for key, c in terms.items():
        if key == 0:
            out[0] = c
            continue
        exps = [0] * n_new
        for i, e in enumerate(_unpack(key, n_old)):
            if e:
                exps[pos[i]] = e
        out[_pack(exps, n_new)] = c
    return out


def _is_const_terms(terms: dict) -> bool:
    return not terms or (len(terms) == 1 and 0 in terms)


def _merge_gens(a: tuple, b: tuple) -> tuple:
    if a == b:
        return a
    return tuple(sorted(set(a) | set(b), key=var_key))


class Polynomial:
    """Immutable sparse polynomial over Q in named variables."""

    __slots__ = ("gens", "terms", "_maxdeg", "_hash")

    def __init__(self, terms: dict | None = None, gens: Iterable[str] = ()):
        self.gens = tuple(gens)
        self.terms = {} if terms is None else terms
        self._maxdeg = None
        self._hash = None

    # -- construction -------------------------------------------------------

    @classmethod
    def const(cls, c) -> "Polynomial":
        c = _norm(as_rational(c))
        return cls({0: c} if c else {}, ())

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise PreconditionError(f"invalid variable name {name!r}")
        return cls({1: 1}, (name,))

    @classmethod
    def from_terms(cls, mapping: Mapping) -> "Polynomial":
        """Build from ``{monomial: coeff}`` where a monomial is a dict or
        iterable of ``(variable, exponent)`` pairs."""
        items = []
        names = set()
        for mono, c in mapping.items():
            mono = dict(mono)
            if any(e < 0 for e in mono.values()):
                raise PreconditionError("negative exponent")
            mono = {v: e for v, e in mono.items() if e}
            names.update(mono)
            items.append((mono, as_rational(c)))
        gens = tuple(sorted(names, key=var_key))
        terms: dict = {}
        for mono, c in items:
            key = _pack([mono.get(g, 0) for g in gens], len(gens))
            v = terms.get(key, 0) + c
            if v:
                terms[key] = _norm(v)
            else:
                terms.pop(key, None)
        return cls(terms, gens)

    # -- basic queries --------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return _is_const_terms(self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise PreconditionError("polynomial is not constant")
        return Fraction(self.terms.get(0, 0))

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get(0) == 1

    def __len__(self):
        return len(self.terms)

    @property
    def variables(self) -> tuple[str, ...]:
        """Generators that actually occur, in variable order."""
        n = len(self.gens)
        used = 0
        for key in self.terms:
            used |= key
        out = []
        for i, g in enumerate(self.gens):
            if (used >> (BITS * (n - 1 - i))) & FIELD:
                out.append(g)
        return tuple(out)

    def monomials(self):
        """Yield ``(exponent_dict, Fraction)`` pairs in descending grlex order."""
        n = len(self.gens)
        for key in self._sorted_keys():
            exps = _unpack(key, n)
            yield ({g: e for g, e in zip(self.gens, exps) if e}, Fraction(self.terms[key]))

    def coefficients_list(self) -> list[Fraction]:
        return [Fraction(c) for c in self.terms.values()]

    def _sorted_keys(self):
        return sorted(self.terms, key=lambda k: (_tdeg(k), k), reverse=True)

    def max_exponent(self) -> int:
        if self._maxdeg is None:
            m = 0
            for key in self.terms:
                while key:
                    e = key & FIELD
                    if e > m:
                        m = e
                    key >>= BITS
            self._maxdeg = m
        return self._maxdeg

    def degree(self, var: str | None = None):
        """Total degree, or degree in ``var``; ``NEG_INF`` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        if var is None:
            return max(_tdeg(k) for k in self.terms)
        if var not in self.gens:
            return 0
        shift = BITS * (len(self.gens) - 1 - self.gens.index(var))
        return max((k >> shift) & FIELD for k in self.terms)

    def leading_term(self) -> tuple[dict, Fraction]:
        if not self.terms:
            raise PreconditionError("zero polynomial has no leading term")
        key = max(self.terms, key=lambda k: (_tdeg(k), k))
        exps = _unpack(key, len(self.gens))
        return {g: e for g, e in zip(self.gens, exps) if e}, Fraction(self.terms[key])

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def content(self) -> Fraction:
        """Positive rational gcd of the coefficients (0 for the zero polynomial)."""
        num = 0
        den = 1
        for c in self.terms.values():
            if type(c) is int:
                num = math.gcd(num, c)
            else:
                num = math.gcd(num, c.numerator)
                den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> tuple[Fraction, "Polynomial"]:
        """Split into ``(c, p)`` with ``self == c*p``, p integral, primitive,
        positive leading coefficient."""
        if not self.terms:
            return Fraction(0), self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        if c == 1:
            return c, self
        return c, self.scale(1 / c)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(other)
        return NotImplemented

    def _common(self, other: "Polynomial"):
        if self.gens == other.gens:
            return self.gens, self.terms, other.terms
        if _is_const_terms(other.terms):
            return self.gens, self.terms, other.terms
        if _is_const_terms(self.terms):
            return other.gens, self.terms, other.terms
        gens = _merge_gens(self.gens, other.gens)
        return gens, _remap(self.terms, self.gens, gens), _remap(other.terms, other.gens, gens)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        gens, a, b = self._common(other)
        if len(b) > len(a):
            a, b = b, a
        out = dict(a)
        for k, c in b.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _norm(v)
            else:
                del out[k]
        return Polynomial(out, gens)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({k: -c for k, c in self.terms.items()}, self.gens)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        c = _norm(as_rational(c)) if not isinstance(c, int) else c
        if not c:
            return Polynomial({}, self.gens)
        if c == 1:
            return self
        return Polynomial({k: _norm(v * c) for k, v in self.terms.items()}, self.gens)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return Polynomial({}, _merge_gens(self.gens, other.gens))
        if self.max_exponent() + other.max_exponent() > MAX_EXP:
            raise OverflowError("exponent overflow in polynomial product")
        gens, a, b = self._common(other)
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        fractional = False
        for kb, cb in b.items():
            if type(cb) is not int:
                fractional = True
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        if not fractional:
            fractional = any(type(c) is not int for c in a.values())
        if fractional:
            out = {k: _norm(c) for k, c in out.items() if c}
        else:
            out = {k: c for k, c in out.items() if c}
        return Polynomial(out, gens)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PreconditionError("polynomial exponent must be a non-negative integer")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self.scale(1 / Fraction(other))
        return NotImplemented

    # -- calculus and substitution ------------------------------------------

    def diff(self, var: str) -> "Polynomial":
        if var not in self.gens:
            return Polynomial({}, self.gens)
        shift = BITS * (len(self.gens) - 1 - self.gens.index(var))
        step = 1 << shift
        out = {}
        for k, c in self.terms.items():
            e = (k >> shift) & FIELD
            if e:
                out[k - step] = c * e
        return Polynomial(out, self.gens)

    def subs(self, bindings: Mapping[str, object]) -> "Polynomial":
        """Substitute rationals for some variables; the rest stay symbolic."""
        bound = {v: _norm(as_rational(x)) for v, x in bindings.items() if v in self.gens}
        if not bound:
            return self
        n = len(self.gens)
        free = tuple(g for g in self.gens if g not in bound)
        free_idx = [i for i, g in enumerate(self.gens) if g not in bound]
        bound_idx = [(i, bound[g]) for i, g in enumerate(self.gens) if g in bound]
        powers: dict = {}
        out: dict = {}
        for key, c in self.terms.items():
            exps = _unpack(key, n)
            for i, val in bound_idx:
                e = exps[i]
                if e:
                    p = powers.get((i, e))
                    if p is None:
                        p = powers[(i, e)] = val ** e
                    c = c * p
            if not c:
                continue
            nk = _pack([exps[i] for i in free_idx], len(free))
            v = out.get(nk, 0) + c
            if v:
                out[nk] = v
            else:
                out.pop(nk, None)
        return Polynomial({k: _norm(c) for k, c in out.items() if c}, free)

    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        """Full evaluation to a rational; every occurring variable must be bound."""
        missing = [v for v in self.variables if v not in values]
        if missing:
            raise PreconditionError(f"unbound variables: {', '.join(missing)}")
        return Fraction(self.subs(values).terms.get(0, 0))

    def evaluator(self, order: Iterable[str]):
        """Return ``f(*values)`` evaluating at positional values for ``order``.

        Variables of ``order`` absent from the polynomial are ignored; every
        occurring variable must appear in ``order``."""
        order = tuple(order)
        missing = [v for v in self.variables if v not in order]
        if missing:
            raise PreconditionError(f"unbound variables: {', '.join(missing)}")
        n = len(self.gens)
        pos = {g: order.index(g) for g in self.gens if g in order}
        compiled = []
        for key, c in self.terms.items():
            exps = _unpack(key, n)
            compiled.append((c, tuple((pos[g], e) for g, e in zip(self.gens, exps) if e)))

        def f(*vals):
            total = 0
            for c, factors in compiled:
                t = c
                for i, e in factors:
                    t = t * vals[i] ** e
                total += t
            return total

        return f

    def coefficients(self, var: str) -> dict[int, "Polynomial"]:
        """View as a polynomial in ``var``: ``{exponent: coefficient polynomial}``."""
        if var not in self.gens:
            return {0: self} if self.terms else {}
        n = len(self.gens)
        i = self.gens.index(var)
        shift = BITS * (n - 1 - i)
        rest = self.gens[:i] + self.gens[i + 1:]
        low_mask = (1 << shift) - 1
        buckets: dict[int, dict] = {}
        for k, c in self.terms.items():
            e = (k >> shift) & FIELD
            nk = ((k >> (shift + BITS)) << shift) | (k & low_mask)
            buckets.setdefault(e, {})[nk] = c
        return {e: Polynomial(t, rest) for e, t in buckets.items()}

    # -- comparison / hashing ------------------------------------------------

    def _canonical(self):
        used = self.variables
        terms = _remap(self.terms, self.gens, used) if used != self.gens else self.terms
        return used, terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.gens == other.gens:
            return self.terms == other.terms
        if len(self.terms) != len(other.terms):
            return False
        return self._canonical() == other._canonical()

    def __hash__(self):
        if self._hash is None:
            used, terms = self._canonical()
            self._hash = hash((used, frozenset(terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_polynomial(self)


def _fmt_coeff(c) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial) -> str:
    """Canonical text: terms in descending grlex order, ``*`` and ``^`` explicit."""
    if not p.terms:
        return "0"
    parts = []
    for mono, c in p.monomials():
        m = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono.items())
        neg = c < 0
        a = -c if neg else c
        if not m:
            body = _fmt_coeff(a)
        elif a == 1:
            body = m
        else:
            body = f"{_fmt_coeff(a)}*{m}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


ZERO = Polynomial({}, ())
ONE = Polynomial({0: 1}, ())


def variables(names: str) -> tuple[Polynomial, ...]:
    """``x, y = variables("x y")``."""
    return tuple(Polynomial.var(n) for n in names.replace(",", " ").split())


def as_polynomial(value) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    return Polynomial.const(value)


def poly_arith(op: str, p, q) -> Polynomial:
    p, q = as_polynomial(p), as_polynomial(q)
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise PreconditionError(f"unknown polynomial operation {op!r}")


def poly_eval(p: Polynomial, bindings: Mapping[str, object]) -> Polynomial:
    return p.subs(bindings)


def divide_exact(p: Polynomial, q: Polynomial) -> Polynomial | None:
    """Return ``r`` with ``p == q*r`` or ``None`` when ``q`` does not divide ``p``."""
    p, q = as_polynomial(p), as_polynomial(q)
    if not q.terms:
        raise PreconditionError("division by the zero polynomial")
    if not p.terms:
        return Polynomial({}, p.gens)
    gens, pt, qt = p._common(q)
    if set(q.variables) - set(p.variables):
        return None
    guard = _guard(len(gens))
    lq = max(qt, key=lambda k: (_tdeg(k), k))
    cq = qt[lq]
    rest_q = [(k, c) for k, c in qt.items() if k != lq]
    r = dict(pt)
    quo = {}
    heap = [(-_tdeg(k), -k) for k in r]
    heapq.heapify(heap)
    while r:
        while True:
            _, nk = heap[0]
            k = -nk
            if k in r:
                break
            heapq.heappop(heap)
        d = (k | guard) - lq
        if d & guard != guard:
            return None
        m = d - guard
        c = _div(r.pop(k), cq)
        heapq.heappop(heap)
        quo[m] = c
        for kq, cv in rest_q:
            key = kq + m
            old = r.get(key)
            if old is None:
                r[key] = _norm(-c * cv)
                heapq.heappush(heap, (-_tdeg(key), -key))
            else:
                v = old - c * cv
                if v:
                    r[key] = _norm(v)
                else:
                    del r[key]
    return Polynomial(quo, gens)
