"""
Laguerre and generalized Hermite polynomials H_n^mu with exact coefficients,
plus the polynomial-level checks: ODE, generating function, orthogonality
and the 2F0 form.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, List
import logging

from src.exact_arith import DensePoly, X, pochhammer
from src.reports import CheckRecord, VerificationError, check_true, check_zero, measured
from src.series import TruncatedSeries, series_binomial_pow, series_exp

logger = logging.getLogger(__name__)

SUITE = "orthopoly"


class HermiteMethod(str, Enum):
    LAGUERRE = "laguerre"
    RECURRENCE = "recurrence"
    F20 = "f20"


@dataclass(frozen=True)
class GenHermiteSpec:
    n: int
    mu: Fraction

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"Hermite index must be a nonnegative integer, got {self.n!r}")
        object.__setattr__(self, "mu", Fraction(self.mu))
        if self.mu <= Fraction(-1, 2):
            raise ValueError(f"mu must be greater than -1/2, got {self.mu}")

    @property
    def epsilon(self) -> int:
        return self.n % 2

    @property
    def half(self) -> int:
        return self.n // 2

    @property
    def theta(self) -> Fraction:
        return 2 * self.mu * self.epsilon


@dataclass(frozen=True)
class MomentFunctional:
    """Normalized moments of |x|^(2 mu) exp(-x^2) divided by Gamma(mu + 1/2)."""

    mu: Fraction

    def moment(self, k: int) -> Fraction:
        return pochhammer(Fraction(self.mu) + Fraction(1, 2), k)

    def integrate(self, p: DensePoly) -> Fraction:
        # odd monomials integrate to zero over the real line
        return sum(
            (c * self.moment(i // 2) for i, c in enumerate(p.coeffs) if i % 2 == 0),
            Fraction(0),
        )


def laguerre(n: int, alpha) -> DensePoly:
    """L_n^alpha(x) = C(n + alpha, n) 1F1(-n; alpha + 1; x)."""
    alpha = Fraction(alpha)
    if n < 0:
        raise ValueError(f"Laguerre degree must be nonnegative, got {n}")
    for j in range(n):
        if alpha + 1 + j == 0:
            raise ValueError(f"Laguerre parameter alpha={alpha} makes (alpha+1)_{j + 1} vanish")
    coeffs = []
    for j in range(n + 1):
        top = pochhammer(alpha + j + 1, n - j) / factorial(n - j)
        coeffs.append(Fraction((-1) ** j, factorial(j)) * top)
    return DensePoly(coeffs)


@lru_cache(maxsize=None)
def formal_hermite(n: int, mu) -> DensePoly:
    """
    H_n^mu from the three-term recurrence for any rational mu.

    Some identities slide the parameter below -1/2; the recurrence still
    defines the same polynomial family there.
    """
    mu = Fraction(mu)
    if n == 0:
        return DensePoly.constant(1)
    if n == 1:
        return DensePoly([0, 2])
    k = n - 1
    theta = 2 * mu * (k % 2)
    return 2 * X * formal_hermite(k, mu) - 2 * (k + theta) * formal_hermite(k - 1, mu)


def _hermite_from_laguerre(spec: GenHermiteSpec) -> DensePoly:
    m, eps = spec.half, spec.epsilon
    scale = (-1) ** m * 2 ** spec.n * factorial(m)
    lag = laguerre(m, spec.mu - Fraction(1, 2) + eps)
    return (lag.inflate(2) * scale).mul_xpow(eps)


def _hermite_from_f20(spec: GenHermiteSpec) -> DensePoly:
    n, m = spec.n, spec.half
    b = -m - spec.mu + Fraction((-1) ** n, 2)
    coeffs = [Fraction(0)] * (n + 1)
    for j in range(m + 1):
        term = pochhammer(Fraction(-m), j) * pochhammer(b, j) * (-1) ** j / factorial(j)
        coeffs[n - 2 * j] = term * 2 ** n
    return DensePoly(coeffs)


@lru_cache(maxsize=None)
def _gen_hermite(n: int, mu: Fraction, method: HermiteMethod) -> DensePoly:
    spec = GenHermiteSpec(n, mu)
    if method == HermiteMethod.LAGUERRE:
        return _hermite_from_laguerre(spec)
    if method == HermiteMethod.F20:
        return _hermite_from_f20(spec)
    return formal_hermite(n, spec.mu)


def gen_hermite(spec: GenHermiteSpec, method: HermiteMethod = HermiteMethod.RECURRENCE) -> DensePoly:
    return _gen_hermite(spec.n, spec.mu, HermiteMethod(method))


def hermite(n: int, mu=0) -> DensePoly:
    return gen_hermite(GenHermiteSpec(n, Fraction(mu)))


def ode_residual(spec: GenHermiteSpec) -> DensePoly:
    """x^2 y'' + 2 (mu - x^2) x y' + (2 n x^2 - theta_n) y for y = H_n^mu."""
    y = gen_hermite(spec)
    dy = y.derivative()
    d2y = dy.derivative()
    return (
        X * X * d2y
        + 2 * (spec.mu - X * X) * X * dy
        + (2 * spec.n * X * X - spec.theta) * y
    )


def hermite_structure_check(n_max: int, mu) -> List[CheckRecord]:
    mu = Fraction(mu)
    records = []
    for n in range(n_max + 1):
        spec = GenHermiteSpec(n, mu)
        rec = gen_hermite(spec, HermiteMethod.RECURRENCE)
        for method in (HermiteMethod.LAGUERRE, HermiteMethod.F20):
            records.append(check_zero(SUITE, f"method agreement {method.value}",
                                      gen_hermite(spec, method) - rec, n=n, mu=mu))
        records.append(check_true(SUITE, "parity", rec.parity() == spec.epsilon,
                                  f"H_{n} has mixed parity: {rec}", n=n, mu=mu))
        records.append(check_true(SUITE, "leading coefficient", rec.leading_coefficient == 2 ** n,
                                  f"leading coefficient {rec.leading_coefficient}", n=n, mu=mu))
        records.append(check_zero(SUITE, "hermite ode", ode_residual(spec), n=n, mu=mu))
        if mu == 0:
            records.append(check_zero(SUITE, "classical reduction", rec - formal_hermite(n, 0), n=n))
    return records


def hermite_genfun_series(mu, N: int, exponent_shift=Fraction(-3, 2)) -> TruncatedSeries:
    """(1 + 2xw + 4w^2)(1 + 4w^2)^(-mu + shift) exp(4x^2 w^2 / (1 + 4w^2)) to order N."""
    mu = Fraction(mu)
    four_w2 = TruncatedSeries.monomial(2, 4, N)
    base = TruncatedSeries([1, DensePoly([0, 2]), 4], N)
    power = series_binomial_pow(four_w2, -mu + exponent_shift, N)
    inner = TruncatedSeries.monomial(2, DensePoly([0, 0, 4]), N) * series_binomial_pow(four_w2, -1, N)
    return base * power * series_exp(inner)


def genfun_check(mu, N: int) -> List[CheckRecord]:
    if N < 1:
        raise ValueError(f"Generating-function order must be at least 1, got {N}")
    mu = Fraction(mu)
    lhs = hermite_genfun_series(mu, N)
    records = []
    for n in range(N + 1):
        expected = hermite(n, mu) / factorial(n // 2)
        records.append(check_zero(SUITE, "hermite generating function",
                                  lhs.coefficient(n) - expected, n=n, mu=mu))
    plus_three_halves = hermite_genfun_series(mu, 2, exponent_shift=Fraction(3, 2))
    holds = plus_three_halves.coefficient(2) == hermite(2, mu)
    records.append(measured(SUITE, "hermite generating function, exponent -mu+3/2", holds,
                            f"w^2 coefficient {plus_three_halves.coefficient(2)} vs {hermite(2, mu)}", mu=mu))
    return records


def orthogonality_norm(n: int, mu) -> Fraction:
    """2^(2n) [n/2]! (mu + 1/2)_[(n+1)/2], the normalized squared norm."""
    mu = Fraction(mu)
    return 2 ** (2 * n) * factorial(n // 2) * pochhammer(mu + Fraction(1, 2), (n + 1) // 2)


def orthogonality_check(m: int, n: int, mu) -> Fraction:
    """Normalized integral of H_m H_n |x|^(2mu) exp(-x^2); raises if it is off."""
    spec_m, spec_n = GenHermiteSpec(m, mu), GenHermiteSpec(n, mu)
    value = MomentFunctional(spec_n.mu).integrate(gen_hermite(spec_m) * gen_hermite(spec_n))
    expected = orthogonality_norm(n, spec_n.mu) if m == n else Fraction(0)
    if value != expected:
        raise VerificationError(f"orthogonality m={m} n={n} mu={spec_n.mu}: got {value}, expected {expected}")
    return value


def orthogonality_records(n_max: int, mu) -> List[CheckRecord]:
    records = []
    for m in range(n_max + 1):
        for n in range(m, n_max + 1):
            try:
                value = orthogonality_check(m, n, mu)
                records.append(check_true(SUITE, "orthogonality", m != n or value > 0,
                                          f"norm {value} is not positive", m=m, n=n, mu=Fraction(mu)))
            except VerificationError as e:
                records.append(check_true(SUITE, "orthogonality", False, str(e), m=m, n=n, mu=Fraction(mu)))
    return records


def f20_form_check(n_max: int, mu_grid: Iterable) -> List[CheckRecord]:
    """(2x)^n 2F0(-[n/2], -[n/2] - mu + (-1)^n/2; ; -1/x^2) against the recurrence."""
    records = []
    for mu in mu_grid:
        for n in range(n_max + 1):
            spec = GenHermiteSpec(n, Fraction(mu))
            diff = _hermite_from_f20(spec) - gen_hermite(spec, HermiteMethod.RECURRENCE)
            records.append(check_zero(SUITE, "2F0 form", diff, n=n, mu=spec.mu))
    return records
