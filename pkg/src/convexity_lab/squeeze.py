"""Constructive squeezing lower bounds.

Every bound here is certified by explicit witnesses: elements of a
combination set such as ``A+A-A`` built so that they fall into pairwise
disjoint intervals, hence are distinct without any search.  The brute-force
container is then used to double check membership.

Multiplicative mode replaces ``+``/``-`` by ``*``/``/`` throughout; it is how
the pipeline for ``f(x) = ln(e^x + 1)`` stays exact: every ``e^f`` value is a
rational number.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .algebra.formulas import shift_surface
from .brackets import Bracket, power_bracket
from .errors import InvariantViolation, PreconditionError
from .setops import (
    MultiplicityMap,
    PairGraph,
    QSet,
    combine_many,
    consecutive_differences,
    dyadic_pigeonhole,
    min_block_ratio,
    pigeonhole_floor,
)

# Brute-force containers above this many sums are not materialised.
CONTAINER_BUDGET = 2_000_000


class GroupMode(str, enum.Enum):
    ADDITIVE = "additive"
    MULTIPLICATIVE = "multiplicative"

    def op(self, a, b):
        return a + b if self is GroupMode.ADDITIVE else a * b

    def inv(self, a, b):
        return a - b if self is GroupMode.ADDITIVE else a / b

    @property
    def identity(self):
        return Fraction(0) if self is GroupMode.ADDITIVE else Fraction(1)

    @property
    def combine_op(self) -> str:
        return "sum" if self is GroupMode.ADDITIVE else "prod"


@dataclass(frozen=True)
class WitnessReport:
    witnesses: QSet
    claimed_floor: int
    container_description: dict
    container_checked: bool = True

    def __post_init__(self):
        if len(self.witnesses) < self.claimed_floor:
            raise InvariantViolation(
                f"{len(self.witnesses)} witnesses below the claimed floor {self.claimed_floor}"
            )


class Container:
    """Membership in ``(P1 o ... o Pk) o (N1 o ... o Nm)^-1``.

    Only the two partial combinations are built; ``w`` belongs iff
    ``w o q`` lands in the positive part for some ``q`` in the negative part."""

    def __init__(self, plus: Sequence[QSet], minus: Sequence[QSet], mode: GroupMode):
        self.mode = mode
        self.pos = combine_many(mode.combine_op, list(plus))
        self.neg = combine_many(mode.combine_op, list(minus)) if minus else QSet([mode.identity])

    def __contains__(self, w) -> bool:
        op, pos = self.mode.op, self.pos
        return any(op(w, q) in pos for q in self.neg)

    @staticmethod
    def estimate(plus: Sequence[QSet], minus: Sequence[QSet]) -> int:
        size = 1
        for s in plus:
            size *= max(1, len(s))
        return size


def _check_container(witnesses: Iterable, plus, minus, mode: GroupMode, label: str) -> bool:
    if Container.estimate(plus, minus) > CONTAINER_BUDGET:
        return False
    box = Container(plus, minus, mode)
    for w in witnesses:
        if w not in box:
            raise InvariantViolation(f"witness {w} is not in {label}")
    return True


def squeeze_witnesses(A: QSet, Dprime: QSet, L: int) -> WitnessReport:
    """Witnesses ``a_i + d_k`` in ``A+A-A``: ``L`` gaps of length ``d_j`` per
    ``d_j`` and every ``d_k <= d_j`` inside each of them."""
    if L < 1:
        raise PreconditionError("L must be a positive integer")
    mult = consecutive_differences(A) if len(A) >= 2 else MultiplicityMap()
    for d in Dprime:
        if mult.get(d, 0) < L:
            raise PreconditionError(
                f"difference {d} occurs {mult.get(d, 0)} times as a consecutive gap, need {L}"
            )
    e = A.elements
    starts: dict = {}
    for i in range(len(e) - 1):
        starts.setdefault(e[i + 1] - e[i], []).append(i)
    ds = Dprime.elements
    out = []
    for j, dj in enumerate(ds):
        for i in starts.get(dj, [])[:L]:
            lo, hi = e[i], e[i + 1]
            for dk in ds[: j + 1]:
                w = lo + dk
                if not lo < w <= hi:
                    raise InvariantViolation(f"witness {w} escaped ({lo}, {hi}]")
                out.append(w)
    witnesses = QSet(out)
    t = len(ds)
    floor = L * t * (t + 1) // 2
    checked = _check_container(witnesses, [A, A], [A], GroupMode.ADDITIVE, "A+A-A")
    return WitnessReport(
        witnesses, floor, {"expression": "A+A-A", "plus": ["A", "A"], "minus": ["A"]}, checked
    )


@dataclass(frozen=True)
class ChainReport:
    H: PairGraph
    H1: PairGraph
    H2: PairGraph
    stage_sets: tuple[QSet, QSet, QSet]
    stage_levels: tuple
    stage_floors: tuple[int, int, int]
    stage_witness_counts: tuple
    full_sizes: tuple[int, int, int]
    final_max: int
    comparator: Bracket

    def __post_init__(self):
        if not (self.H2.pairs <= self.H1.pairs <= self.H.pairs):
            raise InvariantViolation("pair graphs are not nested")
        for g, floor in zip((self.H, self.H1, self.H2), self.stage_floors):
            if len(g) < floor:
                raise InvariantViolation(f"stage keeps {len(g)} pairs, below the floor {floor}")


def _refine(A: QSet, pairs: Iterable, power: int):
    """Multiplicities of ``b^p - a^p`` over ``pairs`` and the heaviest level."""
    e = A.elements
    pairs = sorted(pairs)
    diffs = {(i, j): e[j] ** power - e[i] ** power for i, j in pairs}
    m = MultiplicityMap(diffs.values())
    level = dyadic_pigeonhole(m)
    kept = frozenset(p for p in pairs if diffs[p] in level.level_set)
    return m, level, kept


def theorem1_pipeline(A: QSet) -> ChainReport:
    """Gap classes of ``A``, then of ``A^2`` and ``A^3`` along the kept pairs."""
    if len(A) < 2:
        raise PreconditionError("the chain needs |A| >= 2")
    N = len(A)
    pairs0 = [(i, i + 1) for i in range(N - 1)]
    levels, graphs, floors, witness_counts = [], [], [], []
    current = pairs0
    for power in (1, 2, 3):
        floors.append(pigeonhole_floor(len(current)))
        m, level, kept = _refine(A, current, power)
        levels.append(level)
        graphs.append(PairGraph(A, A, kept))
        witness_counts.append(_stage_witness_count(A, power, level))
        current = kept
    H, H1, H2 = graphs
    e = A.elements
    stage_sets = tuple(
        QSet(e[j] ** p - e[i] ** p for i, j in g.pairs) for p, g in zip((1, 2, 3), graphs)
    )
    powered = [QSet(a ** p for a in A) for p in (1, 2, 3)]
    full = tuple(len(_sum_minus(P)) for P in powered)
    return ChainReport(
        H, H1, H2, stage_sets, tuple(levels), tuple(floors), tuple(witness_counts), full,
        max(full), power_bracket(N, 19, 12),
    )


def _sum_minus(P: QSet) -> QSet:
    return combine_many("diff", [combine_many("sum", [P, P]), P])


def _stage_witness_count(A: QSet, power: int, level) -> int | None:
    # the witness lemma applies to A^p when the powers keep the order of A
    P = QSet(a ** power for a in A)
    if len(P) != len(A) or (power % 2 == 0 and A[0] < 0):
        return None
    rep = squeeze_witnesses(P, level.level_set, level.L)
    return len(rep.witnesses)


class Squeeze2Result(NamedTuple):
    Iprime: frozenset
    Gamma_prime: QSet
    report: WitnessReport


def _validate_interleaving(Y: QSet, Z: QSet, mode: GroupMode) -> list:
    n = len(Y)
    if len(Z) != n:
        raise PreconditionError(f"|Y| = {n} but |Z| = {len(Z)}")
    if mode is GroupMode.MULTIPLICATIVE and n and min(Y[0], Z[0]) <= 0:
        raise PreconditionError("multiplicative mode needs positive elements")
    for k in range(n):
        if not Y[k] < Z[k]:
            raise PreconditionError(f"interleaving fails at index {k + 1}: y >= z")
        if k + 1 < n and not Z[k] < Y[k + 1]:
            raise PreconditionError(f"interleaving fails at index {k + 1}: z >= next y")
    x = [mode.inv(Z[k], Y[k]) for k in range(n)]
    for k in range(n - 1):
        if not x[k] < x[k + 1]:
            raise PreconditionError(f"gaps not strictly increasing at index {k + 1}")
    return x


def squeeze2(Y: QSet, Z: QSet, I: Iterable[int], mode: GroupMode = GroupMode.ADDITIVE) -> Squeeze2Result:
    """Two-fold squeeze into the gaps ``(y_k, z_k)``.  Indices are 1-based.

    Gaps ``x_j = z_j - y_j`` and ``gamma_j = x_{j+1} - x_j`` (ratios in
    multiplicative mode); ``gamma`` is pigeonholed over every
    ``j <= floor(n/2) - 1`` and ``I'`` is ``I`` restricted to the heaviest class.
    """
    mode = GroupMode(mode)
    x = _validate_interleaving(Y, Z, mode)
    n = len(Y)
    m = n // 2 - 1
    I = frozenset(I)
    for j in sorted(I):
        if not 1 <= j <= m:
            raise PreconditionError(f"index {j} outside 1..{m}")
    gamma = {j: mode.inv(x[j], x[j - 1]) for j in range(1, m + 1)}
    if gamma:
        level = dyadic_pigeonhole(MultiplicityMap(gamma.values()))
        Iprime = frozenset(j for j in I if gamma[j] in level.level_set)
    else:
        Iprime = frozenset()
    Gamma_prime = QSet(gamma[j] for j in Iprime)
    ks = [k for k in range(1, n) if 2 * k > n]
    out = []
    for k in ks:
        yk, zk = Y[k - 1], Z[k - 1]
        for j in sorted(Iprime):
            xj, xj1 = x[j - 1], x[j]
            for g in Gamma_prime:
                if not g < gamma[j]:
                    continue
                inner = mode.op(xj, g)
                w = mode.op(yk, inner)
                if not (xj < inner < xj1 and yk < w < zk):
                    raise InvariantViolation(f"witness for k={k}, j={j} left its interval")
                out.append(w)
    witnesses = QSet(out)
    # one witness per (k, j, smaller gamma value): intervals are disjoint in k and j
    floor = len(ks) * sum(sum(1 for g in Gamma_prime if g < gamma[j]) for j in Iprime)
    if mode is GroupMode.ADDITIVE:
        desc = {"expression": "2Y+2Z-2Y-Z", "plus": ["Y", "Y", "Z", "Z"], "minus": ["Y", "Y", "Z"]}
    else:
        desc = {"expression": "Y*Y*Z*Z/(Y*Y*Z)", "plus": ["Y", "Y", "Z", "Z"], "minus": ["Y", "Y", "Z"]}
    checked = _check_container(witnesses, [Y, Y, Z, Z], [Y, Y, Z], mode, desc["expression"])
    return Squeeze2Result(Iprime, Gamma_prime, WitnessReport(witnesses, floor, desc, checked))


@dataclass
class Main22Report:
    i: int
    block_ratio: Fraction
    base: tuple            # s_i .. s_{i+3}
    t_values: tuple        # s_{3j}
    stage_gaps: tuple      # e^c, e^d, e^e sequences
    index_sets: tuple      # I, I1, I2, I3
    stage_reports: tuple
    exp_gamma: QSet
    exp_delta: QSet
    exp_epsilon: QSet
    triples: tuple
    S: int
    distinct_triples: int
    surface_count: int
    selected_stage: int
    selected_pair: tuple
    witness_sizes: tuple = field(default=())


def main22_pipeline(X: QSet) -> Main22Report:
    """Three chained squeezes on ``s_{i+k} t + 1`` followed by the surface count."""
    from .surface import SurfaceSpec, count_root_based

    n = len(X)
    if n < 12:
        raise PreconditionError(f"need |X| >= 12, got {n}")
    if X[0] <= 0:
        raise PreconditionError("all elements must be positive")
    s = X.elements
    i, ratio = min_block_ratio(X, 3)
    base = tuple(s[i - 1 + k] for k in range(4))
    m = n // 3
    t = [s[3 * j - 1] for j in range(1, m + 1)]
    rows = [[b * tj + 1 for tj in t] for b in base]
    gaps = tuple(tuple(rows[k + 1][j] / rows[k][j] for j in range(m)) for k in range(3))
    for k, seq in enumerate(gaps):
        for j in range(m - 1):
            if not seq[j] < seq[j + 1]:
                raise InvariantViolation(f"stage {k + 1} gaps not increasing at j={j + 1}")
    I = frozenset(range(1, n // 6))
    index_sets = [I]
    reports = []
    current = I
    for k in range(3):
        res = squeeze2(QSet(rows[k]), QSet(rows[k + 1]), current, GroupMode.MULTIPLICATIVE)
        reports.append(res)
        current = res.Iprime
        index_sets.append(current)
    I3 = current
    ratios = [{j: gaps[k][j] / gaps[k][j - 1] for j in I3} for k in range(3)]
    for k in range(3):
        if any(v == 1 for v in ratios[k].values()):
            raise InvariantViolation("a gap ratio equals the identity")
    sets = [QSet(r.values()) for r in ratios]
    triples = tuple((ratios[0][j], ratios[1][j], ratios[2][j]) for j in sorted(I3))
    S = len(I3)
    G = shift_surface().subs(dict(zip(("s0", "s1", "s2", "s3"), base)))
    for tri in triples:
        if G.evaluate(dict(zip("xyz", tri))) != 0:
            raise InvariantViolation(f"triple {tri} is not on the surface")
    count = count_root_based(SurfaceSpec(G), *sets).count
    if S > count:
        raise InvariantViolation(f"S = {S} exceeds the surface count {count}")
    sizes = [len(sv) for sv in sets]
    stage = max(range(3), key=lambda k: (sizes[k], -k))
    return Main22Report(
        i=i,
        block_ratio=ratio,
        base=base,
        t_values=tuple(t),
        stage_gaps=gaps,
        index_sets=tuple(index_sets),
        stage_reports=tuple(r.report for r in reports),
        exp_gamma=sets[0],
        exp_delta=sets[1],
        exp_epsilon=sets[2],
        triples=triples,
        S=S,
        distinct_triples=len(set(triples)),
        surface_count=count,
        selected_stage=stage + 1,
        selected_pair=(base[stage], base[stage + 1]),
        witness_sizes=tuple(len(r.report.witnesses) for r in reports),
    )
