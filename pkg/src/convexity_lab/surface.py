"""Counting zeros of a trivariate polynomial on a Cartesian product."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .algebra.polynomial import Polynomial, as_polynomial
from .brackets import Bracket, power_bracket
from .errors import InvariantViolation, PreconditionError
from .setops import PairGraph, QSet, family


@dataclass(frozen=True)
class SurfaceSpec:
    F: Polynomial
    var_roles: tuple = ("x", "y", "z")
    warnings: tuple = field(default=(), compare=False)

    def __post_init__(self):
        F = as_polynomial(self.F)
        object.__setattr__(self, "F", F)
        roles = tuple(self.var_roles)
        if len(roles) != 3 or len(set(roles)) != 3:
            raise PreconditionError("var_roles must name three distinct variables")
        object.__setattr__(self, "var_roles", roles)
        if F.is_zero():
            raise PreconditionError("the surface polynomial is zero")
        extra = [v for v in F.variables if v not in roles]
        if extra:
            raise PreconditionError(f"unbound parameters: {', '.join(extra)}")
        absent = tuple(f"F does not involve {v}" for v in roles if v not in F.variables)
        object.__setattr__(self, "warnings", absent)


@dataclass(frozen=True)
class CountReport:
    count: int
    method: str
    sizes: tuple
    bound_value: Bracket
    degenerate_pairs: int = 0


def comparator(na: int, nb: int, nc: int) -> Bracket:
    """``(|A||B||C|)^(4/7) + |B||C|^(1/2)`` with sizes sorted ascending."""
    a, b, c = sorted((na, nb, nc))
    return power_bracket(a * b * c, 4, 7) + power_bracket(b * b * c, 1, 2)


def _sizes(A, B, C):
    return (len(A), len(B), len(C))


def count_naive(S: SurfaceSpec, A: QSet, B: QSet, C: QSet) -> CountReport:
    ev = S.F.evaluator(S.var_roles)
    count = 0
    for a in A:
        for b in B:
            for c in C:
                if ev(a, b, c) == 0:
                    count += 1
    return CountReport(count, "naive", _sizes(A, B, C), comparator(*_sizes(A, B, C)))


def count_root_based(S: SurfaceSpec, A: QSet, B: QSet, C: QSet) -> CountReport:
    """Per ``(a, b)`` solve the univariate specialisation in the third variable.

    A specialisation that vanishes identically contributes ``|C|``."""
    xv, yv, zv = S.var_roles
    coeffs = S.F.coefficients(zv)
    deg = max(coeffs)
    evs = [(e, c.evaluator((xv, yv))) for e, c in sorted(coeffs.items())]
    members = C
    count = 0
    degenerate = 0
    for a in A:
        for b in B:
            poly = [0] * (deg + 1)
            for e, ev in evs:
                poly[e] = ev(a, b)
            while poly and poly[-1] == 0:
                poly.pop()
            if not poly:
                degenerate += 1
                count += len(C)
                continue
            d = len(poly) - 1
            if d == 0:
                continue
            if d == 1:
                if Fraction(-poly[0]) / poly[1] in members:
                    count += 1
                continue
            hits = 0
            for c in C:
                acc = 0
                for coef in reversed(poly):
                    acc = acc * c + coef
                if acc == 0:
                    hits += 1
                    if hits == d:
                        break
            count += hits
    return CountReport(count, "root_based", _sizes(A, B, C), comparator(*_sizes(A, B, C)), degenerate)


def lemma_main_polynomial() -> Polynomial:
    from .algebra.formulas import cubic_surface

    return cubic_surface()


@dataclass(frozen=True)
class LemmaMainReport:
    S: int
    C: QSet
    D: QSet
    E: QSet
    count: int
    max_size: int
    comparator: Bracket


def lemma_main_check(A: QSet, G: PairGraph, powers: Iterable[int] = (1, 2, 3)) -> LemmaMainReport:
    """Differences ``b^p - a^p`` along the pairs ``(a, b)`` of ``G`` and the
    number of their zeros on ``4xz - 3y^2 - x^4``."""
    powers = tuple(powers)
    if len(powers) != 3 or any(p < 1 for p in powers):
        raise PreconditionError("powers must be three positive integers")
    pairs = G.value_pairs()
    for a, b in pairs:
        if a == b:
            raise PreconditionError(f"diagonal pair ({a}, {a}) in G")
    C, D, E = (QSet(b ** p - a ** p for a, b in pairs) for p in powers)
    S = len(G.pairs)
    spec = SurfaceSpec(lemma_main_polynomial())
    count = count_root_based(spec, C, D, E).count if S else 0
    if S > count:
        raise InvariantViolation(f"S = {S} exceeds the zero count {count}")
    return LemmaMainReport(S, C, D, E, count, max(len(C), len(D), len(E)), power_bracket(S, 7, 12))


def _log_ratio(count: int, n: int) -> str:
    if count <= 0 or n <= 1:
        return "nan"
    return f"{math.log(count) / math.log(n):.6f}"


ES_COLUMNS = ("n", "|A|", "|B|", "|C|", "count", "comparator_lo", "comparator_hi", "log_ratio")


def es_scan(
    S: SurfaceSpec,
    kind: str,
    n_values: Iterable[int],
    params: Mapping | None = None,
    seed: int = 0,
) -> list[dict]:
    """One row per ``n`` with ``A = B = C = family(kind, n)``."""
    rows = []
    for n in n_values:
        A = family(kind, n, params, seed)
        rep = count_root_based(S, A, A, A)
        rows.append(
            {
                "n": n,
                "|A|": len(A),
                "|B|": len(A),
                "|C|": len(A),
                "count": rep.count,
                "comparator_lo": decimal_floor(rep.bound_value.lo),
                "comparator_hi": decimal_ceil(rep.bound_value.hi),
                "log_ratio": _log_ratio(rep.count, n),
            }
        )
    return rows


def decimal_floor(q: Fraction, places: int = 8) -> str:
    scale = 10 ** places
    return _fixed(math.floor(q * scale), places)


def decimal_ceil(q: Fraction, places: int = 8) -> str:
    scale = 10 ** places
    return _fixed(math.ceil(q * scale), places)


def _fixed(v: int, places: int) -> str:
    sign = "-" if v < 0 else ""
    v = abs(v)
    return f"{sign}{v // 10 ** places}.{v % 10 ** places:0{places}d}"
