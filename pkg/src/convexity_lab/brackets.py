"""Rational enclosures of irrational powers such as ``n^(19/12)``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

_SCALE_BITS = 32


def iroot(n: int, k: int) -> int:
    """Largest ``r`` with ``r**k <= n`` for ``n >= 0``."""
    if n < 0:
        raise ValueError("iroot of a negative number")
    if n < 2 or k == 1:
        return n
    r = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


@dataclass(frozen=True)
class Bracket:
    lo: Fraction
    hi: Fraction

    def __add__(self, other: "Bracket") -> "Bracket":
        return Bracket(self.lo + other.lo, self.hi + other.hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def decimal(self, places: int = 6) -> str:
        return f"{float((self.lo + self.hi) / 2):.{places}f}"


def power_bracket(base, p: int, q: int) -> Bracket:
    """Enclose ``base^(p/q)`` for a non-negative rational base.

    Width is below ``2^-32`` times ``max(1, value)``, so under ``1e-6`` for
    values up to a few thousand."""
    base = Fraction(base)
    if base < 0 or q <= 0 or p < 0:
        raise ValueError("power_bracket needs base >= 0, p >= 0, q > 0")
    v = base ** p
    # pick the scale so that the relative width stays tiny for large values
    extra = max(0, math.ceil(math.log2(float(v) + 1) / q)) if v else 0
    M = 1 << (_SCALE_BITS + extra)
    r = iroot(v.numerator * M ** q // v.denominator, q)
    lo = Fraction(r, M)
    hi = lo if lo ** q == v else Fraction(r + 1, M)
    return Bracket(lo, hi)
