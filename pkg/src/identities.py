"""
Exact polynomial and formal-series identities between generalized Hermite
polynomials with different parameters.

Arguments of the form sqrt(x^2 + y^2) are removed by parity: an even H is a
polynomial in the square of its argument and an odd H divided by its
argument is as well, so every identity becomes a polynomial identity in the
squared variables.
"""
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable, Iterator, List, Tuple
import logging

from src.config import BETA_SAMPLES, CONVOLUTION_K_SAMPLES, TAU_SAMPLES
from src.exact_arith import DensePoly, MultiPoly, X, pochhammer
from src.orthopoly import formal_hermite
from src.reports import CheckRecord, check_zero, measured, skipped
from src.series import TruncatedSeries, series_binomial_pow, series_exp, series_polyval

logger = logging.getLogger(__name__)

SUITE = "orthopoly"
HALF = Fraction(1, 2)


def _h(n: int, mu) -> DensePoly:
    return formal_hermite(n, Fraction(mu))


def _even_radial(n: int, mu) -> DensePoly:
    """e(U) with e(x^2) = H_n^mu(x), n even."""
    return _h(n, mu).deflate()


def _odd_radial(n: int, mu) -> DensePoly:
    """o(U) with x o(x^2) = H_n^mu(x), n odd."""
    return _h(n, mu).div_xpow(1).deflate()


def _legal(*params) -> bool:
    return all(Fraction(p) > -HALF for p in params)


def compositions(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


# parameter raise through a Beta integral

def _beta_ratio(q: Fraction, beta: Fraction, steps: int) -> Fraction:
    """Gamma(q + steps + beta) Gamma(q) / (Gamma(q + steps) Gamma(q + beta)) for integer steps."""
    return pochhammer(q + beta, steps) / pochhammer(q, steps)


def beta_integral_rhs(m: int, mu, beta, form: str = "t") -> DensePoly:
    """
    Right side of the Beta-integral parameter raise, reduced term by term.

    ``form="t"`` integrates t^(mu-1/2+eps/2) (1-t)^(beta-1) H(x sqrt t) dt,
    ``form="u"`` integrates 2 u^(2mu+eps) (1-u^2)^(beta-1) H(x u) du.
    """
    mu, beta = Fraction(mu), Fraction(beta)
    eps, half = m % 2, m // 2
    a = mu + HALF + eps
    top = half + a
    h = _h(m, mu)
    coeffs = [Fraction(0)] * (m + 1)
    for j in range(half + 1):
        power = eps + 2 * j
        c = h.coefficient(power)
        if form == "t":
            # t-exponent of the integrand plus one
            q = mu - HALF + Fraction(eps, 2) + Fraction(power, 2) + 1
        else:
            # (u-exponent + 1) / 2 after the u^2 = t substitution
            q = (2 * mu + eps + power + 1) / 2
        coeffs[power] = c * _beta_ratio(q, beta, int(top - q))
    return DensePoly(coeffs)


def beta_integral_check(m: int, mu, beta) -> List[CheckRecord]:
    mu, beta = Fraction(mu), Fraction(beta)
    lhs = _h(m, mu + beta)
    return [
        check_zero(SUITE, f"beta-integral parameter raise ({form}-form)",
                   lhs - beta_integral_rhs(m, mu, beta, form), m=m, mu=mu, beta=beta)
        for form in ("t", "u")
    ]


# partial sums over the index

def partial_sum_check(n: int, mu) -> List[CheckRecord]:
    mu = Fraction(mu)
    records = []
    lhs = sum((_h(2 * m, mu + HALF) * Fraction((-1) ** m, 4 ** m * factorial(m)) for m in range(n + 1)),
              DensePoly())
    rhs = _h(2 * n, mu + Fraction(3, 2)) * Fraction((-1) ** n, 4 ** n * factorial(n))
    records.append(check_zero(SUITE, "partial sums, even", lhs - rhs, n=n, mu=mu))
    if not _legal(mu - HALF):
        records.append(skipped(SUITE, "partial sums, odd", "parameter mu - 1/2 is not above -1/2", n=n, mu=mu))
        return records
    lhs = sum((_h(2 * m + 1, mu - HALF) * Fraction((-1) ** m, 4 ** m * factorial(m)) for m in range(n + 1)),
              DensePoly())
    rhs = _h(2 * n + 1, mu + HALF) * Fraction((-1) ** n, 4 ** n * factorial(n))
    records.append(check_zero(SUITE, "partial sums, odd", lhs - rhs, n=n, mu=mu))
    return records


# expansions between parameters

def parameter_change_sum(n: int, eps: int, mu, alpha) -> DensePoly:
    """sum_j (alpha - mu)_j C(n, j) (-4)^j H_{2(n-j)+eps}^mu."""
    mu, alpha = Fraction(mu), Fraction(alpha)
    total = DensePoly()
    for j in range(n + 1):
        total = total + _h(2 * (n - j) + eps, mu) * (pochhammer(alpha - mu, j) * comb(n, j) * (-4) ** j)
    return total


def classical_expansion(n: int, mu) -> DensePoly:
    """sum_j C([n/2], j) (-4)^j (mu)_j H_{n-2j}, the classical Hermite expansion of H_n^mu."""
    mu = Fraction(mu)
    half = n // 2
    total = DensePoly()
    for j in range(half + 1):
        total = total + _h(n - 2 * j, 0) * (comb(half, j) * (-4) ** j * pochhammer(mu, j))
    return total


def parameter_change_check(n_max: int, mu, alphas: Iterable) -> List[CheckRecord]:
    mu = Fraction(mu)
    records = []
    for n in range(n_max // 2 + 1):
        for eps in (0, 1):
            idx = 2 * n + eps
            parity = "odd" if eps else "even"
            records.append(check_zero(SUITE, f"to classical, {parity}",
                                      parameter_change_sum(n, eps, mu, 0) - _h(idx, 0), n=n, mu=mu))
            records.append(check_zero(SUITE, f"from classical, {parity}",
                                      parameter_change_sum(n, eps, 0, mu) - _h(idx, mu), n=n, mu=mu))
            for alpha in alphas:
                alpha = Fraction(alpha)
                records.append(check_zero(SUITE, f"parameter change, {parity}",
                                          parameter_change_sum(n, eps, mu, alpha) - _h(idx, alpha),
                                          n=n, mu=mu, alpha=alpha))
    for n in range(n_max + 1):
        records.append(check_zero(SUITE, "classical expansion", classical_expansion(n, mu) - _h(n, mu), n=n, mu=mu))
        half = n // 2
        inverse = DensePoly()
        for j in range(half + 1):
            inverse = inverse + _h(n - 2 * j, mu) * (comb(half, j) * (-4) ** j * pochhammer(-mu, j))
        records.append(check_zero(SUITE, "classical expansion, inverse", inverse - _h(n, 0), n=n, mu=mu))
    return records


# addition theorems in squared variables

def _uni(p: DensePoly, nvars: int, index: int) -> MultiPoly:
    return MultiPoly.from_univariate(p, nvars, index)


def _radial_sum(nvars: int) -> MultiPoly:
    total = MultiPoly(nvars)
    for i in range(nvars):
        total = total + MultiPoly.variable(nvars, i)
    return total


def addition_check(n: int, alpha, beta) -> List[CheckRecord]:
    alpha, beta = Fraction(alpha), Fraction(beta)
    S = _radial_sum(2)
    lhs = _even_radial(2 * n, alpha + beta + HALF)(S)
    rhs = MultiPoly(2)
    for k in range(n + 1):
        rhs = rhs + _uni(_even_radial(2 * (n - k), alpha), 2, 0) * _uni(_even_radial(2 * k, beta), 2, 1) * comb(n, k)
    records = [check_zero(SUITE, "addition theorem, even", lhs - rhs, n=n, alpha=alpha, beta=beta)]
    lhs = _odd_radial(2 * n + 1, alpha + beta + Fraction(3, 2))(S)
    rhs = MultiPoly(2)
    for k in range(n + 1):
        rhs = rhs + _uni(_odd_radial(2 * (n - k) + 1, alpha), 2, 0) * _uni(_odd_radial(2 * k + 1, beta), 2, 1) \
            * Fraction(comb(n, k), 2)
    records.append(check_zero(SUITE, "addition theorem, odd", lhs - rhs, n=n, alpha=alpha, beta=beta))
    return records


def _truncated_exp_sum(k: int) -> MultiPoly:
    Y = MultiPoly.variable(2, 1)
    total = MultiPoly(2)
    power = MultiPoly.constant(2, 1)
    for ell in range(k + 1):
        total = total + power * Fraction(1, factorial(ell))
        power = power * Y
    return total


def weighted_convolution_check(n: int, k: int, alpha) -> List[CheckRecord]:
    """Finite convolutions whose Laguerre form carries 1/(n-j) weights; n >= 2, k >= 1."""
    alpha = Fraction(alpha)
    Y = MultiPoly.variable(2, 1)
    S = _radial_sum(2)
    y_pow = MultiPoly.constant(2, 1)
    for _ in range(k + 1):
        y_pow = y_pow * Y
    exp_k = _truncated_exp_sum(k)

    # even family
    lhs = MultiPoly(2)
    for j in range(1, n):
        lhs = lhs + _uni(_even_radial(2 * (j - 1), alpha), 2, 0) \
            * _uni(_even_radial(2 * (n - j - 1), k + Fraction(3, 2)), 2, 1) * comb(n - 1, j - 1)
    shifted = MultiPoly(2)
    power = MultiPoly.constant(2, 1)
    for ell in range(k + 1):
        shifted = shifted + power * _even_radial(2 * (n - 1), alpha + ell)(S) * Fraction(1, factorial(ell))
        power = power * Y
    bracket = exp_k * _uni(_even_radial(2 * (n - 1), alpha), 2, 0) - shifted
    rhs = bracket * Fraction(-factorial(k), 4)
    records = [check_zero(SUITE, "weighted convolution, even", y_pow * lhs - rhs, n=n, k=k, alpha=alpha)]

    # odd family
    lhs = MultiPoly(2)
    for j in range(1, n):
        lhs = lhs + _uni(_odd_radial(2 * j - 1, alpha), 2, 0) \
            * _uni(_odd_radial(2 * (n - j) - 1, k + HALF), 2, 1) * (2 * comb(n - 1, j - 1))
    shifted = MultiPoly(2)
    power = MultiPoly.constant(2, 1)
    for ell in range(k + 1):
        shifted = shifted + power * _odd_radial(2 * n - 1, alpha + ell)(S) * Fraction(1, factorial(ell))
        power = power * Y
    bracket = exp_k * _uni(_odd_radial(2 * n - 1, alpha), 2, 0) - shifted
    rhs = bracket * (-factorial(k))
    records.append(check_zero(SUITE, "weighted convolution, odd", y_pow * lhs - rhs, n=n, k=k, alpha=alpha))
    return records


def multivariate_addition_check(n: int, params: Tuple) -> List[CheckRecord]:
    """
    k-fold addition theorems; ``params`` are the Hermite parameters of the
    factors on the right (each above -1/2).
    """
    params = tuple(Fraction(p) for p in params)
    k = len(params)
    S = _radial_sum(k)

    lhs = _even_radial(2 * n, sum(params) + Fraction(k, 2) - HALF)(S)
    rhs = MultiPoly(k)
    for idx in compositions(n, k):
        term = MultiPoly.constant(k, Fraction(factorial(n)))
        for var, (i, nu) in enumerate(zip(idx, params)):
            term = term * _uni(_even_radial(2 * i, nu), k, var) * Fraction(1, factorial(i))
        rhs = rhs + term
    records = [check_zero(SUITE, "multivariate addition, even", lhs - rhs, n=n, params=list(params))]

    lhs = _odd_radial(2 * n + 1, sum(params) + Fraction(3 * k, 2) - Fraction(3, 2))(S)
    rhs = MultiPoly(k)
    for idx in compositions(n, k):
        term = MultiPoly.constant(k, Fraction(factorial(n), 2 ** (k - 1)))
        for var, (i, nu) in enumerate(zip(idx, params)):
            term = term * _uni(_odd_radial(2 * i + 1, nu), k, var) * Fraction(1, factorial(i))
        rhs = rhs + term
    records.append(check_zero(SUITE, "multivariate addition, odd", lhs - rhs, n=n, params=list(params)))
    return records


# formal series identities

def _exp_minus_x2_t(N: int) -> TruncatedSeries:
    return series_exp(TruncatedSeries.monomial(1, DensePoly([0, 0, -1]), N))


def sliding_parameter_check(mu, N: int) -> List[CheckRecord]:
    """sum_m (-1)^m/(4^m m!) H_{2m}^(alpha-m+1/2) t^m = (1+t)^alpha exp(-x^2 t) and its odd twin."""
    mu = Fraction(mu)
    t = TruncatedSeries.monomial(1, 1, N)
    records = []
    for eps in (0, 1):
        alpha = mu - HALF if eps == 0 else mu + HALF
        shift = HALF if eps == 0 else -HALF
        lhs = TruncatedSeries(
            [_h(2 * m + eps, alpha - m + shift) * Fraction((-1) ** m, 4 ** m * factorial(m)) for m in range(N + 1)],
            N,
        )
        rhs = series_binomial_pow(t, alpha, N) * _exp_minus_x2_t(N)
        if eps:
            rhs = rhs * DensePoly([0, 2])
        records.append(check_zero(SUITE, f"sliding-parameter series, {'odd' if eps else 'even'}",
                                  lhs - rhs, mu=mu, order=N))
        if eps:
            plus_half = TruncatedSeries(
                [_h(2 * m + 1, alpha - m + HALF) * Fraction((-1) ** m, 4 ** m * factorial(m)) for m in range(N + 1)],
                N,
            )
            records.append(measured(SUITE, "sliding-parameter series, odd, parameter alpha - m + 1/2",
                                    (plus_half - rhs).is_zero(), "left side differs from t^1 on", mu=mu, order=N))
    return records


def radial_translation_check(n: int, mu, N: int) -> List[CheckRecord]:
    """H(sqrt(x^2+y^2)) = exp(y^2) sum_k (-1)^k y^(2k)/k! H^(alpha+k)(x), as series in y to order 2N."""
    alpha = Fraction(mu)
    order = 2 * N
    radius2 = TruncatedSeries([X * X, 0, 1], order)
    exp_y2 = series_exp(TruncatedSeries.monomial(2, 1, order))
    records = []
    for eps in (0, 1):
        idx = 2 * n + eps
        radial = _even_radial(idx, alpha) if eps == 0 else _odd_radial(idx, alpha)
        lhs = series_polyval(radial, radius2)
        total = TruncatedSeries([], order)
        for k in range(N + 1):
            h = _h(idx, alpha + k)
            if eps:
                h = h.div_xpow(1)
            total = total + TruncatedSeries.monomial(2 * k, h * Fraction((-1) ** k, factorial(k)), order)
        records.append(check_zero(SUITE, f"radial translation, {'odd' if eps else 'even'}",
                                  lhs - exp_y2 * total, n=n, mu=alpha, order=order))
    return records


def _hyp0f1_series(b: Fraction, N: int) -> TruncatedSeries:
    coeffs = []
    for j in range(N + 1):
        coeffs.append(DensePoly.monomial(2 * j, Fraction((-1) ** j, factorial(j)) / pochhammer(b, j)))
    return TruncatedSeries(coeffs, N)


def bessel_series_check(mu, N: int) -> List[CheckRecord]:
    """sum_m t^m/(alpha+1)_m (-1)^m/(4^m m!) H_{2m}(x) = exp(t) 0F1(; alpha+1; -x^2 t) and the odd form."""
    mu = Fraction(mu)
    exp_t = series_exp(TruncatedSeries.monomial(1, 1, N))
    records = []
    for eps in (0, 1):
        alpha = mu - HALF if eps == 0 else mu + HALF
        if any(alpha + 1 + j == 0 for j in range(N)):
            records.append(skipped(SUITE, "bessel series", "(alpha+1)_m vanishes", mu=mu, eps=eps))
            continue
        terms = []
        for m in range(N + 1):
            weight = Fraction((-1) ** m, 4 ** m * factorial(m) * (1 if eps == 0 else 2)) / pochhammer(alpha + 1, m)
            terms.append(_h(2 * m + eps, mu) * weight)
        lhs = TruncatedSeries(terms, N)
        rhs = exp_t * _hyp0f1_series(alpha + 1, N)
        if eps:
            rhs = rhs * X
        records.append(check_zero(SUITE, f"bessel series, {'odd' if eps else 'even'}",
                                  lhs - rhs, mu=mu, order=N))
    return records


def _norm(n: int, eps: int) -> Fraction:
    return Fraction((-1) ** n, 4 ** n * factorial(n) * (2 if eps else 1))


def _scaled_odd(h: DensePoly, tau: Fraction) -> DensePoly:
    return DensePoly(c * tau ** (i - 1) if i > 0 else c for i, c in enumerate(h.coeffs))


def dilation_check(m: int, mu, tau) -> List[CheckRecord]:
    """Expansion of H_m(tau x) in H_n(x), n <= m, for both parities."""
    mu, tau = Fraction(mu), Fraction(tau)
    records = []
    for eps in (0, 1):
        beta = mu - HALF if eps == 0 else mu + HALF
        h = _h(2 * m + eps, mu)
        lhs = (h.compose_affine(tau, 0) if eps == 0 else _scaled_odd(h, tau)) * _norm(m, eps)
        rhs = DensePoly()
        for n in range(m + 1):
            binom = pochhammer(beta + n + 1, m - n) / factorial(m - n)
            weight = _norm(n, eps) * binom * tau ** (2 * n) * (1 - tau * tau) ** (m - n)
            rhs = rhs + _h(2 * n + eps, mu) * weight
        parity = "odd" if eps else "even"
        records.append(check_zero(SUITE, f"dilation expansion, {parity}", lhs - rhs, m=m, mu=mu, tau=tau))
        if tau == 0:
            only = _h(eps, mu) * (_norm(0, eps) * pochhammer(beta + 1, m) / factorial(m))
            records.append(check_zero(SUITE, f"dilation expansion at tau=0, {parity}", lhs - only, m=m, mu=mu))
    return records


def _guarded(name: str, fn: Callable[[], List[CheckRecord]], **params) -> List[CheckRecord]:
    try:
        return fn()
    except ValueError as e:
        logger.warning(f"Sub-check {name} skipped for {params}: {e}")
        return [skipped(SUITE, name, str(e), **params)]


def polynomial_identity_suite(mu_grid: Iterable, n_max: int, N: int) -> List[CheckRecord]:
    """
    Parameter-raise integral, partial sums, parameter changes, addition
    theorems, weighted convolutions and the series identities over a grid.
    """
    mu_grid = [Fraction(mu) for mu in mu_grid]
    records: List[CheckRecord] = []
    for mu in mu_grid:
        logger.debug(f"Polynomial identities for mu={mu}, n_max={n_max}, N={N}")
        for m in range(n_max + 1):
            for beta in BETA_SAMPLES:
                records += _guarded("beta-integral parameter raise", lambda: beta_integral_check(m, mu, beta),
                                    m=m, mu=mu, beta=beta)
        for n in range(n_max // 2 + 1):
            records += _guarded("partial sums", lambda: partial_sum_check(n, mu), n=n, mu=mu)
        records += parameter_change_check(n_max, mu, [a for a in mu_grid if a != mu][:2])
        partner = mu_grid[(mu_grid.index(mu) + 1) % len(mu_grid)]
        for n in range(n_max // 2 + 1):
            records += addition_check(n, mu, partner)
            records += multivariate_addition_check(n, (mu, partner))
            if n <= 3:
                records += multivariate_addition_check(n, (mu, Fraction(0), HALF))
        for n in range(2, n_max // 2 + 2):
            for k in CONVOLUTION_K_SAMPLES:
                records += weighted_convolution_check(n, k, mu)
        records += sliding_parameter_check(mu, N)
        records += bessel_series_check(mu, N)
        for n in range(n_max // 2 + 1):
            records += radial_translation_check(n, mu, N)
        for m in range(n_max // 2 + 1):
            for tau in TAU_SAMPLES:
                records += dilation_check(m, mu, tau)
    return records
