"""
Exact real-root counting and isolation with Sturm sequences.

Chains come from sympy; evaluation and bisection are over ``Fraction``. Infinite endpoints are handled from the
signs of the leading coefficients, never by substituting a large number.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple
import logging

from src.exact_arith import DensePoly, is_squarefree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RootInterval:
    """Open rational interval (lo, hi) holding exactly one simple root."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not self.lo < self.hi:
            raise ValueError(f"RootInterval needs lo < hi, got ({self.lo}, {self.hi})")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def overlaps(self, other: "RootInterval") -> bool:
        return self.lo < other.hi and other.lo < self.hi

    def __str__(self):
        return f"({self.lo}, {self.hi})"


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def _check_real(p: DensePoly) -> DensePoly:
    if p.is_zero():
        raise ValueError("Sturm sequences are undefined for the zero polynomial")
    return p.to_rational()


def sturm_sequence(p: DensePoly) -> List[DensePoly]:
    """
    Sturm chain of the squarefree part of p, from ``sympy.Poly.sturm``.

    The chain starts at the squarefree part, so counts are of distinct roots.
    """
    p = _check_real(p)
    return [DensePoly.from_sympy(q) for q in p.as_sympy().sturm()]


def _variations(signs: List[int]) -> int:
    nonzero = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


def _signs_at(chain: List[DensePoly], point: Optional[Fraction], at_plus_infinity: bool) -> List[int]:
    if point is not None:
        return [_sign(q(point)) for q in chain]
    if at_plus_infinity:
        return [_sign(q.leading_coefficient) for q in chain]
    return [_sign(q.leading_coefficient) * (-1) ** q.degree for q in chain]


def sign_variations(chain: List[DensePoly], point: Optional[Fraction], at_plus_infinity: bool = True) -> int:
    return _variations(_signs_at(chain, point, at_plus_infinity))


def sturm_count(
    p: DensePoly,
    lo: Optional[Fraction] = None,
    hi: Optional[Fraction] = None,
    chain: Optional[List[DensePoly]] = None,
) -> int:
    """
    Number of distinct real roots of p in (lo, hi].

    ``None`` stands for -infinity as ``lo`` and +infinity as ``hi``.
    """
    if chain is None:
        chain = sturm_sequence(p)
    lo = None if lo is None else Fraction(lo)
    hi = None if hi is None else Fraction(hi)
    if lo is not None and hi is not None and lo >= hi:
        return 0
    v_lo = sign_variations(chain, lo, at_plus_infinity=False)
    v_hi = sign_variations(chain, hi, at_plus_infinity=True)
    return v_lo - v_hi


def cauchy_bound(p: DensePoly) -> Fraction:
    """1 + max |c_i / c_deg|; every real root lies strictly inside (-B, B)."""
    p = _check_real(p)
    lead = p.leading_coefficient
    if p.degree == 0:
        return Fraction(1)
    return 1 + max(abs(c / lead) for c in p.coeffs[:-1])


def _split_point(p: DensePoly, lo: Fraction, hi: Fraction) -> Fraction:
    # first candidate is the midpoint; later ones step toward hi
    k = 1
    while True:
        mid = lo + (hi - lo) * k / (k + 1) if k > 1 else (lo + hi) / 2
        if p(mid) != 0:
            return mid
        k += 1


def isolate_real_roots(p: DensePoly) -> List[RootInterval]:
    """Sorted disjoint intervals, one per real root of a squarefree p."""
    p = _check_real(p)
    if not is_squarefree(p):
        raise ValueError(f"isolate_real_roots needs a squarefree polynomial, got {p}")
    if p.degree == 0:
        return []
    chain = sturm_sequence(p)
    bound = cauchy_bound(p)
    pending: List[Tuple[Fraction, Fraction, int]] = [
        (-bound, bound, sturm_count(p, -bound, bound, chain))
    ]
    found: List[RootInterval] = []
    while pending:
        lo, hi, count = pending.pop()
        if count == 0:
            continue
        if count == 1:
            found.append(RootInterval(lo, hi))
            continue
        mid = _split_point(p, lo, hi)
        left = sturm_count(p, lo, mid, chain)
        # right half first so the left half is processed next (stack order)
        pending.append((mid, hi, count - left))
        pending.append((lo, mid, left))
    found.sort(key=lambda iv: iv.lo)
    logger.debug(f"Isolated {len(found)} real roots of degree-{p.degree} polynomial")
    return found


def refine_root(p: DensePoly, iv: RootInterval, eps: Fraction) -> RootInterval:
    p = _check_real(p)
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError(f"Refinement width must be positive, got {eps}")
    lo, hi = iv.lo, iv.hi
    sign_lo = _sign(p(lo))
    while hi - lo > eps:
        mid = (lo + hi) / 2
        value = p(mid)
        if value == 0:
            half = eps / 2
            return RootInterval(mid - half, mid + half)
        if _sign(value) == sign_lo:
            lo = mid
        else:
            hi = mid
    return RootInterval(lo, hi)


def bisect_once(p: DensePoly, iv: RootInterval) -> RootInterval:
    return refine_root(p, iv, iv.width / 2)
