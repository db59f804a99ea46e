from fractions import Fraction

import pytest

from src.critline import (
    LineKind,
    RefinementBudgetExceeded,
    certificate_records,
    certify,
    interlacing_check,
    interlacing_mixed_parity,
    interlacing_records,
    line_polynomial,
    meixner_pollaczek_check,
    meixner_pollaczek_line,
    meixner_pollaczek_records,
    separate_roots,
)
from src.exact_arith import I, DensePoly, X
from src.sturm import isolate_real_roots


def test_line_polynomial_degree_one(mu_grid):
    for mu in mu_grid:
        line = line_polynomial(2, mu)
        assert line.kind == LineKind.IMAGINARY
        assert line.g == DensePoly([0, -1 / (mu + Fraction(1, 2))])


def test_line_polynomial_classical_degree_two():
    line = line_polynomial(4, 0)
    assert line.kind == LineKind.REAL
    assert line.g == DensePoly([Fraction(2, 3), 0, Fraction(-4, 3)])


def test_certificate_degree_two():
    cert = certify(4, 0)
    assert cert.degree == 2
    assert cert.real_root_count == 2
    assert cert.squarefree and cert.symmetric and cert.certified
    lo, hi = cert.roots
    # roots are -1/sqrt(2) and 1/sqrt(2)
    assert lo.hi <= 0 and lo.lo ** 2 > Fraction(1, 2) > lo.hi ** 2
    assert hi.lo >= 0 and hi.lo ** 2 < Fraction(1, 2) < hi.hi ** 2


def test_certificate_constant_factor():
    cert = certify(1, Fraction(1, 3))
    assert cert.degree == 0
    assert cert.certified
    assert cert.roots == ()


def test_certificate_larger_instance():
    cert = certify(12, Fraction(7, 2))
    assert cert.degree == 6
    assert cert.real_root_count == 6
    assert cert.certified


def test_certificate_records(mu_grid, assert_passed):
    for mu in mu_grid:
        assert_passed(certificate_records(10, mu))


@pytest.mark.slow
def test_every_factor_on_the_critical_line(mu_grid):
    for mu in mu_grid:
        for m in range(25):
            cert = certify(m, mu)
            assert cert.certified, (m, mu, cert.line.g)
            assert cert.real_root_count == m // 2


@pytest.mark.parametrize("n,eps,mu", [(0, 0, 0), (1, 0, 0), (3, 1, Fraction(1, 3)), (4, 0, Fraction(7, 2))])
def test_interlacing(n, eps, mu):
    assert interlacing_check(n, eps, mu)


def test_interlacing_rejects_bad_parity():
    with pytest.raises(ValueError):
        interlacing_check(1, 2, 0)


def test_mixed_parity_shares_zero_at_half():
    # both factors vanish at s = 1/2
    assert interlacing_mixed_parity(2, 0) is False


def test_interlacing_records(assert_passed):
    records = interlacing_records(4, Fraction(1, 2))
    assert_passed(records)
    assert any(r.informational for r in records)


def test_separation_budget():
    g1, g2 = X, X * (X - 1)
    with pytest.raises(RefinementBudgetExceeded):
        separate_roots(g1, isolate_real_roots(g1), g2, isolate_real_roots(g2), budget=5)


def test_separation_orders_roots():
    g1, g2 = X * X - 2, X * X - 3
    merged = separate_roots(g1, isolate_real_roots(g1), g2, isolate_real_roots(g2))
    assert [label for label, _ in merged] == [1, 0, 0, 1]


def test_meixner_pollaczek_first_step(mu_grid):
    for mu in mu_grid:
        assert meixner_pollaczek_line(1, 0, mu) == DensePoly([I / 2, -I])
        assert meixner_pollaczek_line(0, 1, mu) == DensePoly([1])


@pytest.mark.parametrize("eps", [0, 1])
def test_meixner_pollaczek_matches_factor(eps, mu_grid):
    for mu in mu_grid:
        for n in range(7):
            assert meixner_pollaczek_check(n, eps, mu)


def test_meixner_pollaczek_records(assert_passed):
    assert_passed(meixner_pollaczek_records(5, Fraction(1, 3)))


def test_meixner_pollaczek_parameter_bound():
    with pytest.raises(ValueError):
        meixner_pollaczek_line(2, 0, Fraction(-3, 4))


def _largest_family_index(records, family):
    return max(int(r.params["n"]) for r in records if r.identity == f"interlacing, {family} family")


@pytest.mark.parametrize("m_max,even_top,odd_top", [(9, 3, 3), (10, 4, 3)])
def test_interlacing_reaches_the_index_bound(m_max, even_top, odd_top, assert_passed):
    records = interlacing_records(m_max, Fraction(1, 3))
    assert_passed(records)
    # even pair (2n, 2n + 2) and odd pair (2n + 1, 2n + 3) both end at or below m_max
    assert _largest_family_index(records, "even") == even_top
    assert _largest_family_index(records, "odd") == odd_top
    assert max(int(r.params["m"]) for r in records if r.informational) == m_max - 1


@pytest.mark.slow
def test_interlacing_top_pair_at_acceptance_bound():
    records = interlacing_records(24, Fraction(-1, 4))
    top = [r for r in records if r.identity == "interlacing, even family" and r.params["n"] == "11"]
    assert len(top) == 1 and top[0].passed
