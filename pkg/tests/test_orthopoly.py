from fractions import Fraction

import pytest
import sympy

from src.exact_arith import DensePoly
from src.orthopoly import (
    GenHermiteSpec,
    HermiteMethod,
    MomentFunctional,
    f20_form_check,
    gen_hermite,
    genfun_check,
    hermite,
    hermite_structure_check,
    laguerre,
    ode_residual,
    orthogonality_check,
    orthogonality_norm,
    orthogonality_records,
)
from src.reports import VerificationError

x = sympy.symbols("x")


def _from_sympy(expr) -> DensePoly:
    coeffs = sympy.Poly(sympy.expand(expr), x).all_coeffs()
    return DensePoly(Fraction(int(c.p), int(c.q)) for c in reversed(coeffs))


def test_second_polynomial():
    assert hermite(2, Fraction(1, 3)) == DensePoly([Fraction(-10, 3), 0, 4])
    assert hermite(1, Fraction(7, 2)) == DensePoly([0, 2])


@pytest.mark.parametrize("n", range(0, 13))
def test_classical_case_matches_sympy(n):
    assert hermite(n, 0) == _from_sympy(sympy.hermite(n, x))


@pytest.mark.parametrize("n,alpha", [(0, Fraction(1, 3)), (3, Fraction(1, 3)), (5, Fraction(-1, 4)), (6, Fraction(3))])
def test_laguerre_matches_sympy(n, alpha):
    expected = sympy.assoc_laguerre(n, sympy.Rational(alpha.numerator, alpha.denominator), x)
    assert laguerre(n, alpha) == _from_sympy(expected)


def test_laguerre_rejects_vanishing_pochhammer():
    with pytest.raises(ValueError):
        laguerre(3, -2)


@pytest.mark.parametrize("method", list(HermiteMethod))
def test_methods_agree(method, mu_grid):
    for mu in mu_grid:
        for n in range(13):
            spec = GenHermiteSpec(n, mu)
            assert gen_hermite(spec, method) == gen_hermite(spec, HermiteMethod.RECURRENCE)


@pytest.mark.parametrize("n,mu", [(2, Fraction(1, 3)), (7, Fraction(7, 2)), (10, Fraction(-1, 4))])
def test_ode_residual_vanishes(n, mu):
    assert ode_residual(GenHermiteSpec(n, mu)).is_zero()


def test_spec_validation():
    with pytest.raises(ValueError):
        GenHermiteSpec(2, Fraction(-1, 2))
    with pytest.raises(ValueError):
        GenHermiteSpec(-1, 0)
    assert GenHermiteSpec(3, Fraction(1, 3)).theta == Fraction(2, 3)


def test_structure_records(mu_grid, assert_passed):
    for mu in mu_grid:
        assert_passed(hermite_structure_check(10, mu))


def test_generating_function(assert_passed):
    records = genfun_check(Fraction(1, 2), 12)
    assert_passed(records)
    variant = [r for r in records if r.informational]
    assert len(variant) == 1
    assert not variant[0].passed


def test_orthogonality_norm_example():
    # H_2 = 4x^2 - 4 at mu = 1/2, moments are k!
    assert MomentFunctional(Fraction(1, 2)).moment(2) == 2
    assert orthogonality_check(2, 2, Fraction(1, 2)) == 16
    assert orthogonality_norm(2, Fraction(1, 2)) == 16
    assert orthogonality_check(1, 2, Fraction(1, 3)) == 0
    assert orthogonality_check(3, 3, 0) == 48


def test_orthogonality_records(mu_grid, assert_passed):
    for mu in mu_grid:
        assert_passed(orthogonality_records(6, mu))


def test_orthogonality_raises_on_mismatch(monkeypatch):
    monkeypatch.setattr("src.orthopoly.orthogonality_norm", lambda n, mu: Fraction(1))
    with pytest.raises(VerificationError):
        orthogonality_check(2, 2, 0)


def test_f20_form(mu_grid, assert_passed):
    assert_passed(f20_form_check(12, mu_grid))
