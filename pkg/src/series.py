"""
Truncated formal power series with polynomial coefficients.

The coefficient of t^j is a ``DensePoly`` in a secondary variable (x for the
Hermite generating functions, s for the transform generating function).
"""
from fractions import Fraction
from typing import Iterable, List, Tuple
import logging

from src.exact_arith import DensePoly, binomial

logger = logging.getLogger(__name__)


def _as_poly(value) -> DensePoly:
    if isinstance(value, DensePoly):
        return value
    return DensePoly.constant(value)


class TruncatedSeries:
    """Power series in t modulo t^(order+1)."""

    __slots__ = ("order", "_coeffs")

    def __init__(self, coefficients: Iterable, order: int):
        if order < 0:
            raise ValueError(f"Series order must be nonnegative, got {order}")
        cs = [_as_poly(c) for c in coefficients][: order + 1]
        cs += [DensePoly()] * (order + 1 - len(cs))
        self.order = order
        self._coeffs: Tuple[DensePoly, ...] = tuple(cs)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1], order)

    @classmethod
    def monomial(cls, power: int, coefficient, order: int) -> "TruncatedSeries":
        return cls([0] * power + [coefficient], order)

    @classmethod
    def from_poly(cls, p: DensePoly, order: int) -> "TruncatedSeries":
        """Series whose coefficients are the (constant) coefficients of p(t)."""
        return cls(p.coeffs, order)

    @property
    def coefficients(self) -> Tuple[DensePoly, ...]:
        return self._coeffs

    def coefficient(self, j: int) -> DensePoly:
        if 0 <= j <= self.order:
            return self._coeffs[j]
        raise IndexError(f"Coefficient t^{j} is beyond order {self.order}")

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self._coeffs)

    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, Fraction, DensePoly)) and not isinstance(other, bool):
            return TruncatedSeries([other], self.order)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        order = min(self.order, o.order)
        return TruncatedSeries(
            (self._coeffs[j] + o._coeffs[j] for j in range(order + 1)), order
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries((-c for c in self._coeffs), self.order)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, DensePoly)) and not isinstance(other, bool):
            return TruncatedSeries((c * other for c in self._coeffs), self.order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        order = min(self.order, other.order)
        out: List[DensePoly] = [DensePoly()] * (order + 1)
        for i in range(order + 1):
            a = self._coeffs[i]
            if a.is_zero():
                continue
            for j in range(order + 1 - i):
                b = other._coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(out, order)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("Only nonnegative integer powers are supported")
        result = TruncatedSeries.one(self.order)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        order = min(self.order, other.order)
        return self._coeffs[: order + 1] == other._coeffs[: order + 1]

    __hash__ = None

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self._coeffs, min(order, self.order))

    def map(self, fn) -> "TruncatedSeries":
        return TruncatedSeries((fn(c) for c in self._coeffs), self.order)

    def render(self, var: str = "t", inner: str = "x") -> str:
        parts = [
            f"({c.render(inner)})*{var}^{j}" for j, c in enumerate(self._coeffs) if not c.is_zero()
        ]
        return " + ".join(parts) + f" + O({var}^{self.order + 1})" if parts else f"O({var}^{self.order + 1})"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"TruncatedSeries(order={self.order}, {self.render()})"


def series_binomial_pow(u: TruncatedSeries, r, N: int) -> TruncatedSeries:
    """
    (1 + u)^r as a truncated series.

    ``r`` is a rational or a DensePoly (an exponent affine in s); in the
    latter case the binomial coefficients, and hence the result's
    coefficients, are polynomials in s.
    """
    if not u.coefficient(0).is_zero():
        raise ValueError("series_binomial_pow needs a series with zero constant term")
    u = u.truncate(N) if u.order >= N else TruncatedSeries(u.coefficients, N)
    result = TruncatedSeries.one(N)
    power = TruncatedSeries.one(N)
    for j in range(1, N + 1):
        power = power * u
        if power.is_zero():
            break
        result = result + power * _as_poly(binomial(r, j))
    return result


def series_exp(f: TruncatedSeries) -> TruncatedSeries:
    """exp(f) for f with zero constant term, via E' = f' E."""
    if not f.coefficient(0).is_zero():
        raise ValueError("series_exp needs a series with zero constant term")
    N = f.order
    out: List[DensePoly] = [DensePoly.constant(1)]
    for n in range(1, N + 1):
        acc = DensePoly()
        for k in range(1, n + 1):
            fk = f.coefficient(k)
            if not fk.is_zero():
                acc = acc + fk * out[n - k] * k
        out.append(acc / n)
    return TruncatedSeries(out, N)


def series_polyval(p: DensePoly, f: TruncatedSeries) -> TruncatedSeries:
    """Evaluate a polynomial with rational coefficients at a series."""
    acc = TruncatedSeries([], f.order)
    for c in reversed(p.coeffs):
        acc = acc * f + c
    return acc
