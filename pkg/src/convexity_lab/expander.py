"""The ratio-of-products expander ``(U^(2) V^(2)) / (U^(2) V)`` with
``U = xX + lambda`` and ``V = x'X + lambda``."""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .algebra.polynomial import as_rational
from .errors import PreconditionError
from .setops import QSet, combine, family

# Exhaustive pair searches refuse sets above this size.
BEST_PAIR_BUDGET = 10
CONTEXT_EXPONENTS = {"current": "31/12", "previous": "5/2"}


def _shifted(X: QSet, x: Fraction, lam: Fraction) -> QSet:
    vals = [x * v + lam for v in X]
    for v, w in zip(X, vals):
        if w == 0:
            raise PreconditionError(f"factor {x}*{v} + {lam} vanishes")
    return QSet(vals)


def expander_parts(X: QSet, x, xprime, lam=1) -> tuple[QSet, QSet, QSet]:
    x, xprime, lam = as_rational(x), as_rational(xprime), as_rational(lam)
    U = _shifted(X, x, lam)
    V = _shifted(X, xprime, lam)
    P = combine("prod", U, U)
    Q = combine("prod", V, V)
    R = combine("prod", P, V)
    return P, Q, R


def expander_set(X: QSet, x, xprime, lam=1) -> QSet:
    """``(P*Q)/R`` where ``P = U*U``, ``Q = V*V``, ``R = U*U*V``."""
    keys, den = _ratio_keys(*expander_parts(X, x, xprime, lam))
    return QSet(Fraction(k, den) for k in keys)


def _ratio_keys(P: QSet, Q: QSet, R: QSet) -> tuple[set, int]:
    """Integers ``k`` with ``(P*Q)/R = {k / den}``.

    After scaling to integers, ``m / r = m * (M / r) / M`` with ``M`` the lcm
    of the scaled ``R``, so distinct ratios get distinct keys and no gcd is
    taken in the inner loop."""
    scale = math.lcm(*(v.denominator for v in (*P, *Q, *R)))
    pq = {int(p * scale) * int(q * scale) for p in P for q in Q}
    rs = [int(r * scale) for r in R]
    M = math.lcm(*rs)
    cofactors = {M // r for r in rs}
    # (pq / s^2) / (r / s) = (m / r) / s
    return {m * c for m in pq for c in cofactors}, M * scale


def exponent_reading(size: int, n: int) -> str:
    if size <= 0 or n <= 1:
        return "nan"
    return f"{math.log(size) / math.log(n):.6f}"


@dataclass(frozen=True)
class ExpanderResult:
    x: Fraction
    xprime: Fraction
    set: QSet
    size: int
    exponent_reading: str
    context: Mapping = None

    def __post_init__(self):
        if self.size != len(self.set):
            raise ValueError("size disagrees with the set")


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("CONVEXITY_LAB_THREADS", "1")))
    except ValueError:
        return 1


def _pair_size(args) -> int:
    X, x, xp, lam = args
    return len(_ratio_keys(*expander_parts(X, x, xp, lam))[0])


def expander_best_pair(X: QSet, lam=1) -> ExpanderResult:
    """Exhaustive argmax over ordered pairs ``x != x'``; ties go to the
    lexicographically smallest ``(x, x')``."""
    lam = as_rational(lam)
    if len(X) < 2:
        raise PreconditionError("need at least two elements")
    if len(X) > BEST_PAIR_BUDGET:
        raise PreconditionError(f"exhaustive search is limited to |X| <= {BEST_PAIR_BUDGET}")
    pairs = [(x, xp) for x in X for xp in X if x != xp]
    jobs = [(X, x, xp, lam) for x, xp in pairs]
    workers = min(_threads(), len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            sizes = list(pool.map(_pair_size, jobs))
    else:
        sizes = [_pair_size(j) for j in jobs]
    best = max(range(len(pairs)), key=lambda k: (sizes[k], -k))
    x, xp = pairs[best]
    S = expander_set(X, x, xp, lam)
    return ExpanderResult(x, xp, S, len(S), exponent_reading(len(S), len(X)), dict(CONTEXT_EXPONENTS))


SCAN_COLUMNS = ("n", "x", "xprime", "size", "exponent_reading", "millis")


def expander_scan(
    kind: str,
    n_values: Iterable[int],
    lam=1,
    params: Mapping | None = None,
    seed: int = 0,
    timing: bool = True,
) -> list[dict]:
    """Best pair per ``n``; sizes beyond the budget end the table with a
    truncation row."""
    rows = []
    for n in n_values:
        if n > BEST_PAIR_BUDGET:
            rows.append({c: "" for c in SCAN_COLUMNS} | {"n": n, "size": "truncated"})
            break
        X = family(kind, n, params, seed)
        t0 = time.perf_counter()
        res = expander_best_pair(X, lam)
        millis = round((time.perf_counter() - t0) * 1000) if timing else 0
        rows.append(
            {
                "n": n,
                "x": res.x,
                "xprime": res.xprime,
                "size": res.size,
                "exponent_reading": res.exponent_reading,
                "millis": millis,
            }
        )
    return rows
