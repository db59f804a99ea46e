"""
Exact scalar and polynomial arithmetic.

Rationals are ``fractions.Fraction``. ``GaussianRational`` adds a rational
imaginary part for evaluation on the critical line. ``DensePoly`` wraps a
univariate ``sympy.Poly`` over QQ or QQ_I and ``MultiPoly`` a multivariate
one over QQ for the convolution identities.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union
import logging

from sympy import QQ, Poly, Symbol, symbols
from sympy.polys.domains import QQ_I

logger = logging.getLogger(__name__)

Rational = Fraction


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"Exact arithmetic does not accept {type(value).__name__} values: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"Cannot convert {value!r} to a rational")


@dataclass(frozen=True, eq=False)
class GaussianRational:
    """Complex number a + b*i with rational a and b."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _as_fraction(self.re))
        object.__setattr__(self, "im", _as_fraction(self.im))

    @staticmethod
    def _coerce(other) -> Optional["GaussianRational"]:
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return GaussianRational(Fraction(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        norm = o.norm()
        if norm == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        num = self * o.conjugate()
        return GaussianRational(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("Only nonnegative integer powers are supported")
        result = GaussianRational(1)
        for _ in range(exponent):
            result = result * self
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "-" if self.im < 0 else "+"
        return f"{self.re} {sign} {abs(self.im)}*i"

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"


I = GaussianRational(0, 1)

Scalar = Union[Fraction, GaussianRational]


def as_scalar(value) -> Scalar:
    if isinstance(value, GaussianRational):
        return value
    return _as_fraction(value)


def _render_scalar(c: Scalar) -> str:
    text = str(c)
    if isinstance(c, GaussianRational) and c.re != 0 and c.im != 0:
        return f"({text})"
    return text


_GEN = Symbol("x")


def _to_domain(c: Scalar, gaussian: bool):
    re, im = (c.re, c.im) if isinstance(c, GaussianRational) else (c, Fraction(0))
    real = QQ(re.numerator, re.denominator)
    if not gaussian:
        return real
    return QQ_I(real, QQ(im.numerator, im.denominator))


def _from_rational(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _from_domain(c, gaussian: bool) -> Scalar:
    if not gaussian:
        return _from_rational(c)
    if c.y == 0:
        return _from_rational(c.x)
    return GaussianRational(_from_rational(c.x), _from_rational(c.y))


def _from_sympy_number(value) -> Scalar:
    re, im = value.as_real_imag()
    re = Fraction(int(re.p), int(re.q))
    if im == 0:
        return re
    return GaussianRational(re, Fraction(int(im.p), int(im.q)))


class DensePoly:
    """
    Univariate polynomial over Q or Q(i), backed by a ``sympy.Poly``.

    The domain is ``QQ`` unless some coefficient has a nonzero imaginary
    part, then ``QQ_I``. Instances are immutable; ``coeffs`` reads low degree
    first as ``Fraction`` / ``GaussianRational``.
    """

    __slots__ = ("_poly", "_gaussian", "_coeffs")

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_scalar(c) for c in coeffs]
        gaussian = any(isinstance(c, GaussianRational) and c.im != 0 for c in cs)
        rep = [_to_domain(c, gaussian) for c in reversed(cs)]
        object.__setattr__(self, "_poly", Poly.from_list(rep, _GEN, domain=QQ_I if gaussian else QQ))
        object.__setattr__(self, "_gaussian", gaussian)
        object.__setattr__(self, "_coeffs", None)

    @classmethod
    def _wrap(cls, poly: Poly, gaussian: bool) -> "DensePoly":
        out = object.__new__(cls)
        object.__setattr__(out, "_poly", poly)
        object.__setattr__(out, "_gaussian", gaussian)
        object.__setattr__(out, "_coeffs", None)
        if gaussian and not any(isinstance(c, GaussianRational) for c in out.coeffs):
            return cls(out.coeffs)
        return out

    def __setattr__(self, name, value):
        raise AttributeError("DensePoly is immutable")

    def __reduce__(self):
        return (DensePoly, (self.coeffs,))

    # constructors

    @classmethod
    def constant(cls, c) -> "DensePoly":
        return cls([c])

    @classmethod
    def variable(cls) -> "DensePoly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, degree: int, c=1) -> "DensePoly":
        if degree < 0:
            raise ValueError(f"Monomial degree must be nonnegative, got {degree}")
        return cls([0] * degree + [c])

    @classmethod
    def from_sympy(cls, poly: Poly) -> "DensePoly":
        if poly.gens == (_GEN,) and poly.domain.is_QQ:
            return cls._wrap(poly, False)
        return cls(_from_sympy_number(c) for c in reversed(poly.all_coeffs()))

    def as_sympy(self) -> Poly:
        return self._poly

    # structure

    @property
    def coeffs(self) -> Tuple[Scalar, ...]:
        if self._coeffs is None:
            rep = self._poly.rep.to_list()
            object.__setattr__(self, "_coeffs", tuple(_from_domain(c, self._gaussian) for c in reversed(rep)))
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> Scalar:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    @property
    def leading_coefficient(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return self._poly.is_zero

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return not self._poly.is_zero

    def __eq__(self, other):
        if isinstance(other, DensePoly):
            return self.coeffs == other.coeffs
        try:
            other = DensePoly.constant(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # ring operations

    @staticmethod
    def _lift(other) -> Optional["DensePoly"]:
        if isinstance(other, DensePoly):
            return other
        if isinstance(other, (int, Fraction, GaussianRational)) and not isinstance(other, bool):
            return DensePoly.constant(other)
        return None

    def _gaussian_poly(self) -> Poly:
        if self._gaussian:
            return self._poly
        return Poly.from_list([_to_domain(c, True) for c in reversed(self.coeffs)], _GEN, domain=QQ_I)

    def _pair(self, other: "DensePoly") -> Tuple[Poly, Poly, bool]:
        if self._gaussian == other._gaussian:
            return self._poly, other._poly, self._gaussian
        return self._gaussian_poly(), other._gaussian_poly(), True

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b, gaussian = self._pair(o)
        return DensePoly._wrap(a + b, gaussian)

    __radd__ = __add__

    def __neg__(self):
        return DensePoly._wrap(-self._poly, self._gaussian)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b, gaussian = self._pair(o)
        return DensePoly._wrap(a - b, gaussian)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b, gaussian = self._pair(o)
        return DensePoly._wrap(a * b, gaussian)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, DensePoly):
            return NotImplemented
        c = as_scalar(other)
        if c == 0:
            raise ZeroDivisionError("DensePoly division by zero scalar")
        return self * (Fraction(1) / c)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("Only nonnegative integer powers are supported")
        return DensePoly._wrap(self._poly ** exponent, self._gaussian)

    def __divmod__(self, other: "DensePoly"):
        if not isinstance(other, DensePoly):
            other = DensePoly.constant(other)
        if other.is_zero():
            raise ZeroDivisionError("DensePoly division by the zero polynomial")
        a, b, gaussian = self._pair(other)
        quotient, remainder = a.div(b)
        return DensePoly._wrap(quotient, gaussian), DensePoly._wrap(remainder, gaussian)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "DensePoly") -> "DensePoly":
        quotient, remainder = divmod(self, other)
        if not remainder.is_zero():
            raise ValueError(f"{other} does not divide {self}")
        return quotient

    # evaluation and calculus

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a scalar or any ring element."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if isinstance(acc, int):
            return Fraction(acc)
        return acc

    def derivative(self) -> "DensePoly":
        return DensePoly._wrap(self._poly.diff(_GEN), self._gaussian)

    def compose(self, inner: "DensePoly") -> "DensePoly":
        a, b, gaussian = self._pair(inner)
        return DensePoly._wrap(a.compose(b), gaussian)

    def compose_affine(self, a, b) -> "DensePoly":
        """Return p(a*X + b)."""
        return self.compose(DensePoly([b, a]))

    def shift(self, h) -> "DensePoly":
        return self.compose_affine(1, h)

    # shape helpers

    def parity(self) -> Optional[int]:
        """0 if only even powers occur, 1 if only odd, None if mixed."""
        even = any(c != 0 for c in self.coeffs[0::2])
        odd = any(c != 0 for c in self.coeffs[1::2])
        if even and odd:
            return None
        return 1 if odd else 0

    def mul_xpow(self, k: int) -> "DensePoly":
        if k < 0:
            return self.div_xpow(-k)
        if self.is_zero():
            return self
        return DensePoly([0] * k + list(self.coeffs))

    def div_xpow(self, k: int) -> "DensePoly":
        if any(c != 0 for c in self.coeffs[:k]):
            raise ValueError(f"X^{k} does not divide {self}")
        return DensePoly(self.coeffs[k:])

    def deflate(self) -> "DensePoly":
        """For an even polynomial p(X) = q(X^2), return q."""
        if self.parity() != 0:
            raise ValueError(f"Polynomial is not even: {self}")
        return DensePoly(self.coeffs[0::2])

    def inflate(self, k: int = 2) -> "DensePoly":
        """Return p(X^k)."""
        out = [Fraction(0)] * (k * max(self.degree, 0) + 1)
        for i, c in enumerate(self.coeffs):
            out[k * i] = c
        return DensePoly(out)

    def monic(self) -> "DensePoly":
        if self.is_zero():
            return self
        return DensePoly._wrap(self._poly.monic(), self._gaussian)

    def map_coefficients(self, fn) -> "DensePoly":
        return DensePoly(fn(c) for c in self.coeffs)

    def real_part(self) -> "DensePoly":
        return DensePoly(c.re if isinstance(c, GaussianRational) else c for c in self.coeffs)

    def imag_part(self) -> "DensePoly":
        return DensePoly(c.im if isinstance(c, GaussianRational) else 0 for c in self.coeffs)

    def to_rational(self) -> "DensePoly":
        """Drop a vanishing imaginary part; raises if any coefficient is complex."""
        out = []
        for c in self.coeffs:
            if isinstance(c, GaussianRational):
                if c.im != 0:
                    raise ValueError(f"Polynomial has non-real coefficient {c}")
                c = c.re
            out.append(c)
        return DensePoly(out)

    # rendering

    def render(self, var: str = "x") -> str:
        """Descending-degree exact rendering, e.g. ``4/3*s^2 - 4/3*s + 1``."""
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            negative = isinstance(c, Fraction) and c < 0
            mag = -c if negative else c
            if i == 0:
                body = _render_scalar(mag)
            else:
                power = var if i == 1 else f"{var}^{i}"
                body = power if mag == 1 else f"{_render_scalar(mag)}*{power}"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"DensePoly([{', '.join(str(c) for c in self.coeffs)}])"


X = DensePoly.variable()


def poly_gcd(p: DensePoly, q: DensePoly) -> DensePoly:
    """Monic greatest common divisor (zero only when both inputs are zero)."""
    a, b, gaussian = p._pair(q)
    return DensePoly._wrap(a.gcd(b), gaussian).monic()


def squarefree_part(p: DensePoly) -> DensePoly:
    if p.is_constant():
        return p
    g = poly_gcd(p, p.derivative())
    return p.exact_div(g)


def is_squarefree(p: DensePoly) -> bool:
    if p.is_zero():
        return False
    return p.as_sympy().is_sqf


def pochhammer(a, n: int):
    """Rising factorial (a)_n; ``a`` may be a scalar or a DensePoly."""
    if n < 0:
        raise ValueError(f"Pochhammer length must be nonnegative, got {n}")
    result = Fraction(1)
    for i in range(n):
        result = result * (a + i)
    return result


def binomial(top, j: int):
    """C(top, j) for rational or polynomial ``top`` and integer j >= 0."""
    if j < 0:
        return Fraction(0)
    result = Fraction(1)
    for i in range(j):
        result = result * (top - i)
    return result / factorial(j)


def poly_compose_affine(p: DensePoly, a, b) -> DensePoly:
    """p(a*X + b) with a, b rational or Gaussian rational."""
    return p.compose_affine(a, b)


Exponent = Tuple[int, ...]


class MultiPoly:
    """Multivariate polynomial over QQ in x1..xn, backed by a ``sympy.Poly``."""

    __slots__ = ("nvars", "_poly")

    def __init__(self, nvars: int, terms: Optional[Mapping[Exponent, object]] = None):
        if nvars < 1:
            raise ValueError(f"MultiPoly needs at least one variable, got {nvars}")
        rep = {}
        for exps, c in (terms or {}).items():
            if len(exps) != nvars:
                raise ValueError(f"Exponent {exps} does not match {nvars} variables")
            c = _as_fraction(c)
            if c != 0:
                rep[tuple(exps)] = _to_domain(c, False)
        self.nvars = nvars
        self._poly = Poly.from_dict(rep, *_multi_gens(nvars), domain=QQ)

    @classmethod
    def _wrap(cls, nvars: int, poly: Poly) -> "MultiPoly":
        out = cls(nvars)
        out._poly = poly
        return out

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MultiPoly":
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def from_univariate(cls, p: DensePoly, nvars: int, index: int) -> "MultiPoly":
        terms = {}
        for i, c in enumerate(p.coeffs):
            exps = [0] * nvars
            exps[index] = i
            terms[tuple(exps)] = c
        return cls(nvars, terms)

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return {
            tuple(exps): _from_rational(c)
            for exps, c in self._poly.as_dict(native=True).items()
            if c != 0
        }

    def is_zero(self) -> bool:
        return self._poly.is_zero

    def _lift(self, other) -> Optional["MultiPoly"]:
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("MultiPoly variable counts differ")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MultiPoly.constant(self.nvars, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return MultiPoly._wrap(self.nvars, self._poly + o._poly)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._wrap(self.nvars, -self._poly)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return MultiPoly._wrap(self.nvars, self._poly - o._poly)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return MultiPoly._wrap(self.nvars, self._poly * o._poly)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, MultiPoly) else other
        if o is None:
            return NotImplemented
        return self.nvars == o.nvars and self.terms == o.terms

    __hash__ = None

    def __str__(self):
        terms = self.terms
        if not terms:
            return "0"
        names = [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for exps in sorted(terms, reverse=True):
            c = terms[exps]
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)

    __repr__ = __str__


def _multi_gens(nvars: int):
    return symbols(f"x1:{nvars + 1}")
