import pickle
import random
from fractions import Fraction

import pytest
import sympy

from src.exact_arith import (
    I,
    DensePoly,
    GaussianRational,
    MultiPoly,
    X,
    binomial,
    is_squarefree,
    pochhammer,
    poly_compose_affine,
    poly_gcd,
    squarefree_part,
)


def test_gaussian_arithmetic():
    a = GaussianRational(1, 2)
    b = GaussianRational(3, -1)
    assert a * b == GaussianRational(5, 5)
    assert (a * b) / b == a
    assert I * I == -1
    assert a.conjugate() == GaussianRational(1, -2)
    assert a.norm() == 5


def test_gaussian_rejects_floats_and_zero_division():
    with pytest.raises(TypeError):
        GaussianRational(0.5)
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / GaussianRational(0)


def test_gaussian_hash_matches_rational():
    assert hash(GaussianRational(Fraction(1, 3))) == hash(Fraction(1, 3))


def test_poly_basics():
    p = (X + 1) ** 2
    assert p == DensePoly([1, 2, 1])
    assert p.degree == 2
    assert DensePoly().degree == -1
    assert p(Fraction(2)) == 9
    assert p.derivative() == DensePoly([2, 2])
    assert DensePoly([3]) == 3


def test_poly_division():
    q, r = divmod(X * X - 1, X - 1)
    assert q == X + 1
    assert r.is_zero()
    assert (X ** 3 + 2) % (X - 1) == DensePoly([3])
    with pytest.raises(ValueError):
        (X * X + 1).exact_div(X - 1)
    with pytest.raises(ZeroDivisionError):
        divmod(X, DensePoly())


def test_compose_and_shift():
    p = X * X
    assert p.compose_affine(2, 1) == DensePoly([1, 4, 4])
    assert p.shift(1) == DensePoly([1, 2, 1])


def test_render_descending():
    p = DensePoly([1, Fraction(-4, 3), Fraction(4, 3)])
    assert p.render("s") == "4/3*s^2 - 4/3*s + 1"
    assert DensePoly().render() == "0"
    assert (-X).render("t") == "-t"


def test_gcd_and_squarefree():
    a = (X - 1) * (X - 2)
    b = (X - 1) * (X + 3)
    assert poly_gcd(a, b) == X - 1
    p = (X - 1) ** 2 * (X + 2)
    assert not is_squarefree(p)
    assert squarefree_part(p) == (X - 1) * (X + 2)
    assert is_squarefree(X * X - 2)


def test_pochhammer_and_binomial():
    assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)
    assert pochhammer(Fraction(5), 0) == 1
    assert pochhammer(X, 2) == X * X + X
    assert binomial(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert binomial(Fraction(7), -1) == 0
    with pytest.raises(ValueError):
        pochhammer(Fraction(1), -1)


def test_parity_helpers():
    p = DensePoly([1, 0, 3])
    assert p.parity() == 0
    assert p.deflate() == DensePoly([1, 3])
    assert p.deflate().inflate(2) == p
    assert (X * p).parity() == 1
    assert (X + 1).parity() is None
    assert (X * p).div_xpow(1) == p
    with pytest.raises(ValueError):
        (X + 1).deflate()


def test_complex_coefficients():
    p = X * X + 1
    assert p(I) == 0
    q = p.compose_affine(I, Fraction(1, 2))
    assert q.real_part() == DensePoly([Fraction(5, 4), 0, -1])
    assert q.imag_part() == DensePoly([0, 1])
    with pytest.raises(ValueError):
        q.to_rational()


def test_poly_is_immutable_and_picklable():
    p = DensePoly([1, 2])
    with pytest.raises(AttributeError):
        p._coeffs = ()
    assert pickle.loads(pickle.dumps(p)) == p


def test_multipoly():
    x = MultiPoly.variable(2, 0)
    y = MultiPoly.variable(2, 1)
    assert (x + y) * (x + y) == x * x + 2 * x * y + y * y
    lifted = MultiPoly.from_univariate(DensePoly([1, 0, 1]), 2, 1)
    assert lifted == y * y + 1
    assert (x - x).is_zero()
    assert DensePoly([0, 1])(x + y) == x + y


def test_poly_compose_affine_reflection():
    p = DensePoly([1, Fraction(-4, 3), Fraction(4, 3)])
    assert poly_compose_affine(p, -1, 1) == p
    assert poly_compose_affine(X, I, Fraction(1, 2)) == DensePoly([Fraction(1, 2), I])


def test_backing_poly_is_sympy():
    x = sympy.Symbol("x")
    p = (X - Fraction(1, 2)) * (X + 3)
    assert p.as_sympy().domain.is_QQ
    assert p.as_sympy().all_coeffs() == [1, sympy.Rational(5, 2), sympy.Rational(-3, 2)]
    assert DensePoly.from_sympy(sympy.Poly(2 * x ** 2 - 1, x)) == DensePoly([-1, 0, 2])
    assert DensePoly.from_sympy(sympy.Poly(x ** 2 + sympy.I * x / 2, x)) == DensePoly([0, I / 2, 1])


def test_gaussian_product_drops_back_to_rationals():
    p = (X + I) * (X - I)
    assert p == X * X + 1
    assert p.as_sympy().domain.is_QQ
    assert all(isinstance(c, Fraction) for c in p.coeffs)


def test_gcd_agrees_with_sympy():
    x = sympy.Symbol("x")
    a = (X - 1) ** 2 * (X * X + 2) * (3 * X + 1)
    b = (X - 1) * (X * X + 2) * (X - 5)
    expected = sympy.gcd(sympy.expand((x - 1) ** 2 * (x ** 2 + 2) * (3 * x + 1)),
                         sympy.expand((x - 1) * (x ** 2 + 2) * (x - 5)))
    assert poly_gcd(a, b) == DensePoly.from_sympy(sympy.Poly(expected, x)).monic()


def _random_rational(rng, bound=12):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def _random_gaussian(rng):
    return GaussianRational(_random_rational(rng), _random_rational(rng))


def _random_poly(rng, degree, gaussian=False):
    draw = _random_gaussian if gaussian else _random_rational
    lead = draw(rng)
    while lead == 0:
        lead = draw(rng)
    return DensePoly([draw(rng) for _ in range(degree)] + [lead])


@pytest.mark.parametrize("seed", range(20))
def test_gaussian_field_axioms(seed):
    rng = random.Random(seed)
    a, b, c = _random_gaussian(rng), _random_gaussian(rng), _random_gaussian(rng)
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0 and a + 0 == a and a * 1 == a
    if b:
        assert (a / b) * b == a
        assert b * (1 / b) == 1
    q = _random_rational(rng)
    assert GaussianRational(q) + a == q + a
    assert (a * a.conjugate()).is_real()


@pytest.mark.parametrize("seed", range(20))
def test_poly_ring_axioms(seed):
    rng = random.Random(seed)
    gaussian = seed % 2 == 1
    p, q, r = (_random_poly(rng, rng.randint(0, 5), gaussian) for _ in range(3))
    assert p + q == q + p and p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == DensePoly()
    x = _random_gaussian(rng) if gaussian else _random_rational(rng)
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)


@pytest.mark.parametrize("seed", range(20))
def test_division_and_gcd_properties(seed):
    rng = random.Random(seed)
    common = _random_poly(rng, rng.randint(1, 3))
    a = _random_poly(rng, rng.randint(0, 3)) * common
    b = _random_poly(rng, rng.randint(1, 3)) * common
    quotient, remainder = divmod(a, b)
    assert quotient * b + remainder == a
    assert remainder.degree < b.degree
    g = poly_gcd(a, b)
    assert (a % g).is_zero() and (b % g).is_zero()
    assert (g % common.monic()).is_zero()
    assert g.leading_coefficient == 1
