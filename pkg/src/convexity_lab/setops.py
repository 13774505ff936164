"""Finite sets of rationals: sumsets, restricted sumsets, gap statistics and
dyadic pigeonholing."""

from __future__ import annotations

import json
import math
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

from .algebra.polynomial import Polynomial, as_rational
from .errors import PreconditionError

OPS = ("sum", "diff", "prod", "ratio")


class QSet:
    """Immutable sorted set of distinct rationals."""

    __slots__ = ("elements", "_members")

    def __init__(self, values: Iterable = ()):
        members = frozenset(as_rational(v) for v in values)
        self._members = members
        self.elements = tuple(sorted(members))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, value):
        return value in self._members

    def __getitem__(self, i):
        return self.elements[i]

    def __eq__(self, other):
        if isinstance(other, QSet):
            return self._members == other._members
        return NotImplemented

    def __hash__(self):
        return hash(self._members)

    def __le__(self, other: "QSet") -> bool:
        return self._members <= other._members

    def __repr__(self):
        return "QSet({" + ", ".join(map(str, self.elements)) + "})"

    def as_strings(self) -> list[str]:
        return [str(e) for e in self.elements]


def make_set(values: Iterable) -> QSet:
    return QSet(values)


@dataclass(frozen=True)
class PairGraph:
    """Pairs ``(i, j)`` of 0-based indices into ``left`` and ``right``."""

    left: QSet
    right: QSet
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset((int(i), int(j)) for i, j in self.pairs))
        for i, j in self.pairs:
            if not (0 <= i < len(self.left) and 0 <= j < len(self.right)):
                raise PreconditionError(f"pair index ({i}, {j}) out of range")

    @classmethod
    def from_values(cls, left: QSet, right: QSet, value_pairs: Iterable) -> "PairGraph":
        li = {v: k for k, v in enumerate(left)}
        ri = {v: k for k, v in enumerate(right)}
        pairs = set()
        for a, b in value_pairs:
            a, b = as_rational(a), as_rational(b)
            if a not in li or b not in ri:
                raise PreconditionError(f"pair ({a}, {b}) not in the ground sets")
            pairs.add((li[a], ri[b]))
        return cls(left, right, frozenset(pairs))

    @classmethod
    def consecutive(cls, A: QSet) -> "PairGraph":
        return cls(A, A, frozenset((i, i + 1) for i in range(len(A) - 1)))

    def value_pairs(self) -> list[tuple[Fraction, Fraction]]:
        return [(self.left[i], self.right[j]) for i, j in sorted(self.pairs)]

    def __len__(self):
        return len(self.pairs)


class MultiplicityMap(Counter):
    @property
    def total(self) -> int:
        return sum(self.values())


@dataclass(frozen=True)
class DyadicLevel:
    level_set: QSet
    L: int
    covered_mass: int


def _apply(op: str, a, b):
    if op == "sum":
        return a + b
    if op == "diff":
        return a - b
    if op == "prod":
        return a * b
    if op == "ratio":
        return a / b
    raise PreconditionError(f"unknown operation {op!r}")


def _common_scale(values: Iterable[Fraction]) -> int:
    return reduce(lambda m, d: m * d // math.gcd(m, d), (v.denominator for v in values), 1)


def combine(op: str, A: QSet, B: QSet) -> QSet:
    """``{a op b : a in A, b in B}``."""
    if op not in OPS:
        raise PreconditionError(f"unknown operation {op!r}")
    if op == "ratio" and 0 in B:
        raise PreconditionError("ratio set with 0 in the denominator set")
    if not len(A) or not len(B):
        return QSet()
    if op in ("sum", "diff"):
        # integer arithmetic on a common denominator
        m = _common_scale(A.elements + B.elements)
        ai = [int(a * m) for a in A]
        bi = [int(b * m) for b in B]
        if op == "sum":
            raw = {p + q for p in ai for q in bi}
        else:
            raw = {p - q for p in ai for q in bi}
        return QSet(Fraction(v, m) for v in raw)
    if op == "prod":
        pairs = {(a.numerator * b.numerator, a.denominator * b.denominator) for a in A for b in B}
    else:
        pairs = {(a.numerator * b.denominator, a.denominator * b.numerator) for a in A for b in B}
    return QSet(Fraction(n, d) for n, d in pairs)


def combine_many(op: str, sets: Sequence[QSet]) -> QSet:
    """Left fold of :func:`combine`; ``k_fold`` is the common special case."""
    if not sets:
        raise PreconditionError("combine_many needs at least one set")
    return reduce(lambda acc, s: combine(op, acc, s), sets[1:], sets[0])


def k_fold(op: str, A: QSet, k: int) -> QSet:
    if k < 1:
        raise PreconditionError("k must be positive")
    return combine_many(op, [A] * k)


def combine_restricted(op: str, G: PairGraph) -> QSet:
    """Combine along the pairs ``(a, b)`` of ``G``.

    Differences and ratios are taken right against left: ``b - a`` and ``b / a``."""
    if op not in OPS:
        raise PreconditionError(f"unknown operation {op!r}")
    out = set()
    for i, j in G.pairs:
        a, b = G.left[i], G.right[j]
        if op in ("diff", "ratio"):
            a, b = b, a
        if op == "ratio" and b == 0:
            raise PreconditionError("ratio with a zero left element")
        out.add(_apply(op, a, b))
    return QSet(out)


def image_poly(f: Polynomial, A: QSet) -> QSet:
    vs = f.variables
    if len(vs) > 1:
        raise PreconditionError("image_poly needs a univariate polynomial")
    if not vs:
        return QSet([f.constant_value()] if len(A) else [])
    (v,) = vs
    ev = f.evaluator((v,))
    return QSet(ev(a) for a in A)


def consecutive_differences(A: QSet) -> MultiplicityMap:
    if len(A) < 2:
        raise PreconditionError("consecutive differences need at least two elements")
    e = A.elements
    return MultiplicityMap(e[i + 1] - e[i] for i in range(len(e) - 1))


def dyadic_class(r: int) -> int:
    """Index ``j`` with ``2^(j-1) < r <= 2^j``."""
    if r < 1:
        raise ValueError("multiplicities are positive")
    return (r - 1).bit_length()


def dyadic_classes(m: Mapping) -> dict[int, list]:
    classes: dict[int, list] = {}
    for key, r in m.items():
        classes.setdefault(dyadic_class(r), []).append(key)
    return classes


def pigeonhole_floor(total: int) -> int:
    """Guaranteed mass of the heaviest class: ``ceil(total / (floor(log2 total) + 1))``."""
    if total < 1:
        return 0
    return -(-total // total.bit_length())


def dyadic_pigeonhole(m: Mapping) -> DyadicLevel:
    """Heaviest class ``2^(j-1) < r <= 2^j``; ties go to the smaller ``L``.

    The class ``r = 1`` reports ``L = 1``."""
    if not m:
        raise PreconditionError("dyadic pigeonhole of an empty multiplicity map")
    best = None
    for j, keys in sorted(dyadic_classes(m).items()):
        mass = sum(m[k] for k in keys)
        if best is None or mass > best[1]:
            best = (j, mass, keys)
    j, mass, keys = best
    L = 1 << (j - 1) if j else 1
    return DyadicLevel(QSet(keys), L, mass)


def min_block_gap(A: QSet, span: int) -> tuple[int, Fraction]:
    """1-based ``i`` minimising ``a_{i+span} - a_i`` (smallest on ties)."""
    if span < 1:
        raise PreconditionError("span must be positive")
    if len(A) <= span:
        raise PreconditionError(f"need more than {span} elements")
    e = A.elements
    best_i = min(range(len(e) - span), key=lambda i: (e[i + span] - e[i], i))
    return best_i + 1, e[best_i + span] - e[best_i]


def min_block_ratio(X: QSet, span: int) -> tuple[int, Fraction]:
    """Multiplicative twin of :func:`min_block_gap` for positive sets."""
    if len(X) <= span:
        raise PreconditionError(f"need more than {span} elements")
    if X[0] <= 0:
        raise PreconditionError("min_block_ratio needs positive elements")
    e = X.elements
    best_i = min(range(len(e) - span), key=lambda i: (e[i + span] / e[i], i))
    return best_i + 1, e[best_i + span] / e[best_i]


FAMILIES = ("ap", "gp", "squares", "cubes", "convex_perturbed", "random_rational")


def family(kind: str, n: int, params: Mapping | None = None, seed: int = 0) -> QSet:
    """Named test families of size ``n``.

    params: ``start``/``step`` (ap), ``start``/``ratio`` (gp), ``bound`` for the
    random families.  ``convex_perturbed`` adds a small random rational to
    each square while keeping the gaps strictly increasing.
    """
    params = dict(params or {})
    if not isinstance(n, int) or n < 1:
        raise PreconditionError("family size must be a positive integer")
    rng = random.Random(seed)
    if kind == "ap":
        start = as_rational(params.get("start", 1))
        step = as_rational(params.get("step", 1))
        if step == 0:
            raise PreconditionError("ap step must be nonzero")
        return QSet(start + k * step for k in range(n))
    if kind == "gp":
        start = as_rational(params.get("start", 1))
        ratio = as_rational(params.get("ratio", 2))
        if start == 0 or ratio <= 0 or ratio == 1:
            raise PreconditionError("gp needs start != 0 and a positive ratio != 1")
        return QSet(start * ratio ** k for k in range(n))
    if kind == "squares":
        return QSet(k * k for k in range(1, n + 1))
    if kind == "cubes":
        return QSet(k ** 3 for k in range(1, n + 1))
    if kind == "convex_perturbed":
        # perturbations below 1/4 keep square gaps 2k+1 strictly increasing
        return QSet(k * k + Fraction(rng.randrange(1, 64), 256) for k in range(1, n + 1))
    if kind == "random_rational":
        bound = int(params.get("bound", 10 * n))
        if bound < n:
            raise PreconditionError("bound too small for n distinct values")
        vals: set = set()
        while len(vals) < n:
            vals.add(Fraction(rng.randint(-bound, bound), rng.randint(1, 4)))
        return QSet(vals)
    raise PreconditionError(f"unknown family {kind!r}")


def read_set(text: str) -> QSet:
    """Parse a set file: one rational per line with '#' comments, or a JSON array."""
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise PreconditionError(f"bad JSON set: {exc}") from exc
        return QSet(as_rational(str(v)) for v in data)
    vals = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            vals.append(as_rational(line))
        except (ValueError, ZeroDivisionError) as exc:
            raise PreconditionError(f"line {lineno}: not a rational: {line!r}") from exc
    return QSet(vals)


def write_set(A: QSet) -> str:
    return "".join(f"{v}\n" for v in A)
