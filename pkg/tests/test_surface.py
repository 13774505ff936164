import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_set, random_surface
from convexity_lab.algebra.polynomial import Polynomial, variables
from convexity_lab.errors import PreconditionError
from convexity_lab.setops import PairGraph, family, make_set
from convexity_lab.surface import (
    SurfaceSpec,
    comparator,
    count_naive,
    count_root_based,
    es_scan,
    lemma_main_check,
)

x, y, z, u = variables("x y z u")
HYPERPLANE = SurfaceSpec(x + y - z)


@pytest.mark.parametrize(
    "F, A, expected",
    [(x + y - z, [1, 2, 3], 3), (x + y - z, range(1, 11), 45), (Polynomial.const(1), [1, 2, 3], 0)],
)
def test_count_examples(F, A, expected):
    A = make_set(A)
    S = SurfaceSpec(F)
    assert count_naive(S, A, A, A).count == expected
    assert count_root_based(S, A, A, A).count == expected


def test_spec_validation():
    with pytest.raises(PreconditionError):
        SurfaceSpec(Polynomial.const(0))
    with pytest.raises(PreconditionError, match="unbound"):
        SurfaceSpec(x + u)
    with pytest.raises(PreconditionError):
        SurfaceSpec(x, ("x", "x", "z"))
    assert SurfaceSpec(x - y).warnings == ("F does not involve z",)


def test_vanishing_fibre_counts_all_of_C():
    S = SurfaceSpec((x - 1) * (z - y))
    A, B, C = make_set([1, 2]), make_set([5]), make_set([7, 8, 9])
    rep = count_root_based(S, A, B, C)
    assert rep.count == count_naive(S, A, B, C).count == 3
    assert rep.degenerate_pairs == 1


def test_cubic_surface_on_lemma_sets():
    rng = random.Random(4)
    A = make_set(rng.sample(range(-20, 20), 9))
    rep = lemma_main_check(A, PairGraph.consecutive(A))
    S = SurfaceSpec(4 * x * z - 3 * y ** 2 - x ** 4)
    assert count_naive(S, rep.C, rep.D, rep.E).count == rep.count


@pytest.mark.parametrize("seed", range(25))
def test_methods_agree_on_random_instances(seed):
    rng = random.Random(seed)
    S = SurfaceSpec(random_surface(rng))
    A, B, C = (make_set(random_set(rng)) for _ in range(3))
    assert count_naive(S, A, B, C).count == count_root_based(S, A, B, C).count


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_monotone_in_each_set(seed):
    rng = random.Random(seed)
    S = SurfaceSpec(random_surface(rng))
    A, B, C = (random_set(rng) for _ in range(3))
    big = count_root_based(S, make_set(A), make_set(B), make_set(C)).count
    small = count_root_based(S, make_set(A[: len(A) // 2 + 1]), make_set(B[:-1] or B), make_set(C)).count
    assert small <= big


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6), st.permutations([0, 1, 2]))
def test_role_permutation_symmetry(seed, perm):
    rng = random.Random(seed)
    F = random_surface(rng)
    sets = [make_set(random_set(rng, max_size=6)) for _ in range(3)]
    base = count_naive(SurfaceSpec(F), *sets).count
    roles = tuple(("x", "y", "z")[p] for p in perm)
    # role k names the variable read from the k-th set argument
    permuted = [sets[p] for p in perm]
    assert count_root_based(SurfaceSpec(F, roles), *permuted).count == base


def test_lemma_main_example():
    A = make_set([1, 2, 3])
    rep = lemma_main_check(A, PairGraph.consecutive(A))
    assert rep.S == 2
    assert (rep.C, rep.D, rep.E) == (make_set([1]), make_set([3, 5]), make_set([7, 19]))
    assert rep.count >= 2
    naive = count_naive(SurfaceSpec(4 * x * z - 3 * y ** 2 - x ** 4), rep.C, rep.D, rep.E).count
    assert rep.count == naive


def test_lemma_main_empty_graph_and_diagonal():
    A = make_set([1, 2, 3])
    rep = lemma_main_check(A, PairGraph(A, A, frozenset()))
    assert rep.S == 0 and rep.count == 0 and len(rep.C) == 0
    with pytest.raises(PreconditionError, match="diagonal"):
        lemma_main_check(A, PairGraph(A, A, frozenset({(0, 1), (2, 2)})))


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_lemma_main_law(seed):
    rng = random.Random(seed)
    A = make_set(rng.sample(range(-15, 16), rng.randint(2, 10)))
    n = len(A)
    offdiag = [(i, j) for i, j in itertools.product(range(n), repeat=2) if i != j]
    G = PairGraph(A, A, frozenset(rng.sample(offdiag, rng.randint(0, len(offdiag)))))
    rep = lemma_main_check(A, G)
    assert rep.S == len(G.pairs) <= rep.count


def test_comparator_is_tight():
    for sizes in [(1, 1, 1), (3, 5, 7), (12, 12, 12), (64, 64, 64)]:
        br = comparator(*sizes)
        assert br.lo <= br.hi and br.width < Fraction(1, 10 ** 6)
        a, b, c = sorted(sizes)
        approx = (a * b * c) ** (4 / 7) + b * c ** 0.5
        assert float(br.lo) - 1e-6 <= approx <= float(br.hi) + 1e-6
    assert comparator(1, 1, 1).lo == comparator(1, 1, 1).hi == 2


def test_es_scan_hyperplane():
    rows = es_scan(HYPERPLANE, "ap", range(4, 65))
    assert [r["count"] for r in rows] == [n * (n - 1) // 2 for n in range(4, 65)]
    assert float(rows[-1]["log_ratio"]) > float(rows[0]["log_ratio"])
    assert all(len(r["log_ratio"].split(".")[1]) == 6 for r in rows)


def test_es_scan_product_on_geometric_progression():
    # exponents 0..n-1, so pairs with exponent sum below n
    rows = es_scan(SurfaceSpec(x * y - z), "gp", [4, 8, 16])
    assert [r["count"] for r in rows] == [n * (n + 1) // 2 for n in (4, 8, 16)]


def test_es_scan_empty_count():
    rows = es_scan(SurfaceSpec(x + y - z + Fraction(1, 3)), "ap", [3])
    assert rows[0]["count"] == 0 and rows[0]["log_ratio"] == "nan"


def test_cubic_family_is_observational():
    # squares feeding the lemma sets, recorded only
    A = family("squares", 12)
    rep = lemma_main_check(A, PairGraph.consecutive(A))
    assert rep.S == 11 <= rep.count
