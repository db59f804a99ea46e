import random
from fractions import Fraction

import pytest
import sympy

from src.exact_arith import DensePoly, X
from src.sturm import (
    RootInterval,
    bisect_once,
    cauchy_bound,
    isolate_real_roots,
    refine_root,
    sturm_count,
    sturm_sequence,
)


def test_counts_over_the_line():
    assert sturm_count(X * X - 2) == 2
    assert sturm_count(X * X + 1) == 0
    assert sturm_count(X * X - 2, Fraction(0), None) == 1
    assert sturm_count(DensePoly([5])) == 0


def test_count_is_half_open():
    p = X * (X - 1)
    assert sturm_count(p, Fraction(0), Fraction(1)) == 1
    assert sturm_count(p, Fraction(-1), Fraction(0)) == 1
    assert sturm_count(p, Fraction(2), Fraction(1)) == 0


def test_sequence_ends_in_constant_for_squarefree():
    chain = sturm_sequence((X - 1) * (X + 2) * (X - 5))
    assert chain[-1].is_constant()


def test_isolation_brackets_each_root():
    p = (X - 1) * (X - 2) * (X - 3) * (X - 4) * (X - 5) * (X - 6)
    intervals = isolate_real_roots(p)
    assert len(intervals) == 6
    for k, iv in enumerate(intervals, start=1):
        assert iv.lo < k < iv.hi
    for a, b in zip(intervals, intervals[1:]):
        assert not a.overlaps(b)


def test_isolation_sign_change():
    p = (X * X - 2) * (X - 3)
    intervals = isolate_real_roots(p)
    assert len(intervals) == 3
    for iv in intervals:
        assert p(iv.lo) * p(iv.hi) < 0


def test_isolation_rejects_repeated_roots():
    with pytest.raises(ValueError):
        isolate_real_roots((X - 1) ** 2)


def test_refine_root_sqrt2():
    p = X * X - 2
    iv = [iv for iv in isolate_real_roots(p) if iv.hi > 0][0]
    fine = refine_root(p, iv, Fraction(1, 10 ** 6))
    assert fine.width <= Fraction(1, 10 ** 6)
    assert fine.lo ** 2 < 2 < fine.hi ** 2
    half = bisect_once(p, iv)
    assert half.width <= iv.width / 2


def test_cauchy_bound_contains_roots():
    p = (X - 7) * (X + 3)
    bound = cauchy_bound(p)
    assert bound > 7


def test_root_interval_validation():
    with pytest.raises(ValueError):
        RootInterval(Fraction(1), Fraction(1))
    assert RootInterval(0, 2).midpoint == 1


def test_chain_is_sympy_sturm():
    x = sympy.Symbol("x")
    p = (X - 1) * (X + 2) * (X * X - 3)
    expected = sympy.Poly(sympy.expand((x - 1) * (x + 2) * (x ** 2 - 3)), x, domain="QQ").sturm()
    assert sturm_sequence(p) == [DensePoly.from_sympy(q) for q in expected]


def test_count_ignores_multiplicity():
    p = (X - 1) ** 3 * (X + 2)
    assert sturm_count(p) == 2
    assert sturm_count(p, Fraction(0), Fraction(1)) == 1


def _planted(rng):
    """Random polynomial of degree <= 6 with known distinct rational roots."""
    roots = set()
    for _ in range(rng.randint(0, 4)):
        roots.add(Fraction(rng.randint(-20, 20), rng.randint(1, 4)))
    p = DensePoly([Fraction(rng.choice([-3, -1, 2, 5]), rng.randint(1, 3))])
    for r in roots:
        p = p * (X - r)
    if rng.random() < 0.5:
        p = p * (X * X + Fraction(rng.randint(1, 9), rng.randint(1, 4)))
    return p, sorted(roots)


@pytest.mark.parametrize("seed", range(30))
def test_count_matches_planted_roots(seed):
    rng = random.Random(seed)
    p, roots = _planted(rng)
    assert p.degree <= 6
    assert sturm_count(p) == len(roots)
    for _ in range(10):
        a = Fraction(rng.randint(-45, 45), rng.randint(1, 8))
        b = a + Fraction(rng.randint(1, 60), rng.randint(1, 8))
        assert sturm_count(p, a, b) == sum(1 for r in roots if a < r <= b)
    # grid scan: a sign change between adjacent grid points brackets a simple root
    grid = [Fraction(k, 8) for k in range(-200, 201)]
    for lo, hi in zip(grid, grid[1:]):
        if p(lo) * p(hi) < 0:
            assert sturm_count(p, lo, hi) == 1


@pytest.mark.parametrize("seed", range(15))
def test_isolation_of_planted_roots(seed):
    rng = random.Random(500 + seed)
    p, roots = _planted(rng)
    intervals = isolate_real_roots(p)
    assert len(intervals) == len(roots)
    for iv, r in zip(intervals, roots):
        assert iv.lo < r < iv.hi
        fine = refine_root(p, iv, Fraction(1, 1000))
        assert fine.lo < r < fine.hi
        assert fine.width <= Fraction(1, 1000)
