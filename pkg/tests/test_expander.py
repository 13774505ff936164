import itertools
import random
from fractions import Fraction

import pytest

from convexity_lab.errors import PreconditionError
from convexity_lab.expander import (
    BEST_PAIR_BUDGET,
    expander_best_pair,
    expander_parts,
    expander_scan,
    expander_set,
)
from convexity_lab.setops import family, make_set


def naive_expander(X, x, xp, lam):
    U = [x * v + lam for v in X]
    V = [xp * v + lam for v in X]
    P = {a * b for a in U for b in U}
    Q = {a * b for a in V for b in V}
    R = {a * b * c for a in U for b in U for c in V}
    return {Fraction(p) * q / r for p in P for q in Q for r in R}


def test_parts_example():
    P, Q, R = expander_parts(make_set([1, 2]), 1, 2)
    assert P == make_set([4, 6, 9])
    assert Q == make_set([9, 15, 25])
    assert R == make_set([12, 18, 20, 27, 30, 45])
    assert set(expander_set(make_set([1, 2]), 1, 2)) == naive_expander([1, 2], 1, 2, 1)


def test_singleton_example():
    assert expander_set(make_set([1]), 1, 1) == make_set([2])


def test_zero_factor_rejected():
    with pytest.raises(PreconditionError):
        expander_set(make_set([0, 1]), 1, 2, lam=0)
    with pytest.raises(PreconditionError):
        expander_set(make_set([1, 2]), 1, 2, lam=-1)


@pytest.mark.parametrize("seed", range(8))
def test_matches_naive_enumeration(seed):
    rng = random.Random(seed)
    X = make_set(Fraction(rng.randint(1, 12), rng.randint(1, 3)) for _ in range(rng.randint(1, 5)))
    lam = rng.choice([Fraction(1), Fraction(2), Fraction(1, 2)])
    x, xp = rng.choice(list(X)), rng.choice(list(X))
    out = expander_set(X, x, xp, lam)
    assert set(out) == naive_expander(X, x, xp, lam)
    P, Q, R = expander_parts(X, x, xp, lam)
    assert len(out) <= len(P) * len(Q) * len(R)


def test_best_pair_matches_exhaustive_search():
    X = make_set([1, 2, 3])
    res = expander_best_pair(X)
    sizes = {(a, b): len(naive_expander(X, a, b, 1)) for a, b in itertools.permutations(X, 2)}
    top = max(sizes.values())
    assert res.size == top
    assert (res.x, res.xprime) == min(p for p, s in sizes.items() if s == top)
    assert res.context == {"current": "31/12", "previous": "5/2"}


def test_best_pair_two_elements_tie_break():
    res = expander_best_pair(make_set([1, 2]))
    other = len(expander_set(make_set([1, 2]), 2, 1))
    assert res.size >= other
    if res.size == other:
        assert (res.x, res.xprime) == (1, 2)


def test_best_pair_preconditions():
    with pytest.raises(PreconditionError):
        expander_best_pair(make_set([5]))
    with pytest.raises(PreconditionError):
        expander_best_pair(family("ap", BEST_PAIR_BUDGET + 1))


def test_scan_sizes_nondecreasing():
    rows = expander_scan("ap", range(2, 7), timing=False)
    sizes = [r["size"] for r in rows]
    assert sizes == sorted(sizes)
    assert rows[0]["n"] == 2 and rows[0]["exponent_reading"] != "nan"
    assert all(r["millis"] == 0 for r in rows)


def test_scan_geometric_readings():
    rows = expander_scan("gp", range(3, 6), params={"ratio": 2}, timing=False)
    assert all(float(r["exponent_reading"]) > 0 for r in rows)


def test_scan_truncates_past_budget():
    rows = expander_scan("ap", [3, BEST_PAIR_BUDGET + 1, 4], timing=False)
    assert len(rows) == 2
    assert rows[-1]["size"] == "truncated" and rows[-1]["n"] == BEST_PAIR_BUDGET + 1


def test_threads_do_not_change_result(monkeypatch):
    X = make_set([1, 2, 3, 4])
    serial = expander_best_pair(X)
    monkeypatch.setenv("CONVEXITY_LAB_THREADS", "2")
    parallel = expander_best_pair(X)
    assert (serial.x, serial.xprime, serial.set) == (parallel.x, parallel.xprime, parallel.set)
