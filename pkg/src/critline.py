"""
Critical-line certificates for the polynomial factors of the Mellin transforms.

The factor is restricted to s = 1/2 + i t; the functional equation makes the
restriction real or purely imaginary, and a Sturm count of the surviving real
polynomial certifies that every zero lies on the line.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import List, Tuple
import logging

from src.config import INTERLACE_REFINEMENT_BUDGET
from src.exact_arith import I, DensePoly, is_squarefree, pochhammer, poly_compose_affine, poly_gcd, squarefree_part
from src.mellin import poly_factor
from src.reports import CheckRecord, check_true, measured
from src.sturm import RootInterval, bisect_once, isolate_real_roots, sturm_count

logger = logging.getLogger(__name__)

SUITE = "critline"
HALF = Fraction(1, 2)


class FunctionalEquationError(ArithmeticError):
    """The factor restricted to the critical line is neither real nor purely imaginary."""


class RefinementBudgetExceeded(RuntimeError):
    """Root intervals of two polynomials could not be separated within the bisection budget."""


class LineKind(str, Enum):
    REAL = "real"
    IMAGINARY = "imaginary"


@dataclass(frozen=True)
class LinePoly:
    m: int
    mu: Fraction
    g: DensePoly
    kind: LineKind

    @property
    def degree(self) -> int:
        return self.g.degree


@dataclass(frozen=True)
class CriticalLineCertificate:
    m: int
    mu: Fraction
    degree: int
    real_root_count: int
    squarefree: bool
    roots: Tuple[RootInterval, ...]
    all_on_line: bool
    symmetric: bool
    line: LinePoly = field(repr=False)

    @property
    def certified(self) -> bool:
        return self.all_on_line and self.squarefree


def line_polynomial(m: int, mu) -> LinePoly:
    """phat(1/2 + i t) as a real polynomial g(t), or i g(t)."""
    factor = poly_factor(m, mu)
    on_line = poly_compose_affine(factor.phat, I, HALF)
    real, imag = on_line.real_part(), on_line.imag_part()
    if imag.is_zero():
        kind, g = LineKind.REAL, real
    elif real.is_zero():
        kind, g = LineKind.IMAGINARY, imag
    else:
        raise FunctionalEquationError(
            f"phat_{m} at mu={factor.mu} has real part {real} and imaginary part {imag} on the line"
        )
    expected = LineKind.REAL if factor.degree % 2 == 0 else LineKind.IMAGINARY
    if kind != expected or g.degree != factor.degree:
        raise FunctionalEquationError(
            f"line polynomial of phat_{m} at mu={factor.mu} is {kind.value} of degree {g.degree}, "
            f"expected {expected.value} of degree {factor.degree}"
        )
    return LinePoly(m=m, mu=factor.mu, g=g, kind=kind)


def certify(m: int, mu) -> CriticalLineCertificate:
    line = line_polynomial(m, mu)
    g, degree = line.g, m // 2
    if g.is_constant():
        return CriticalLineCertificate(m, line.mu, degree, 0, True, (), degree == 0, True, line)

    squarefree = is_squarefree(g)
    count = sturm_count(g)
    roots = tuple(isolate_real_roots(squarefree_part(g)))
    # zeros pair up as +-t; t = 0 is a root exactly when the degree is odd
    symmetric = g.parity() is not None and ((g(Fraction(0)) == 0) == (degree % 2 == 1))
    cert = CriticalLineCertificate(
        m=m,
        mu=line.mu,
        degree=degree,
        real_root_count=count,
        squarefree=squarefree,
        roots=roots,
        all_on_line=count == degree,
        symmetric=symmetric,
        line=line,
    )
    if not cert.certified:
        logger.warning(f"Certification failed for m={m}, mu={line.mu}: {count} real roots of {degree}")
    else:
        logger.debug(f"Certified m={m}, mu={line.mu}: {count} zeros on the line")
    return cert


def separate_roots(
    g1: DensePoly,
    roots1: List[RootInterval],
    g2: DensePoly,
    roots2: List[RootInterval],
    budget: int = INTERLACE_REFINEMENT_BUDGET,
) -> List[Tuple[int, RootInterval]]:
    """
    Bisect overlapping intervals until the two root sets are pairwise disjoint.

    Returns (label, interval) pairs in increasing order, label 0 for g1 and 1 for g2.
    The polynomials must not share a root.
    """
    a, b = list(roots1), list(roots2)
    for _ in range(budget + 1):
        clash = False
        for i, iv in enumerate(a):
            for j, jv in enumerate(b):
                if iv.overlaps(jv):
                    clash = True
                    a[i] = bisect_once(g1, a[i])
                    b[j] = bisect_once(g2, b[j])
        if not clash:
            merged = [(0, iv) for iv in a] + [(1, jv) for jv in b]
            return sorted(merged, key=lambda item: item[1].lo)
    raise RefinementBudgetExceeded(
        f"root intervals still overlap after {budget} bisections; increase the refinement budget"
    )


def _alternates(labels: List[int]) -> bool:
    return all(x != y for x, y in zip(labels, labels[1:]))


def _certified_pair(m1: int, m2: int, mu):
    c1, c2 = certify(m1, mu), certify(m2, mu)
    if not (c1.certified and c2.certified):
        return None
    if not poly_gcd(c1.line.g, c2.line.g).is_constant():
        logger.warning(f"Line polynomials for m={m1} and m={m2} at mu={c1.mu} share a root")
        return None
    return c1, c2


def interlacing_check(n: int, epsilon: int, mu) -> bool:
    """Zeros of the degree-n and degree-(n+1) factors in parity family epsilon strictly alternate."""
    if epsilon not in (0, 1):
        raise ValueError(f"Parity must be 0 or 1, got {epsilon}")
    pair = _certified_pair(2 * n + epsilon, 2 * n + 2 + epsilon, mu)
    if pair is None:
        return False
    small, big = pair
    merged = separate_roots(small.line.g, list(small.roots), big.line.g, list(big.roots))
    labels = [label for label, _ in merged]
    # the larger polynomial brackets the smaller one on both sides
    return len(labels) == 2 * n + 1 and _alternates(labels) and labels[0] == 1


def interlacing_mixed_parity(m: int, mu) -> bool:
    pair = _certified_pair(m, m + 1, mu)
    if pair is None:
        return False
    first, second = pair
    merged = separate_roots(first.line.g, list(first.roots), second.line.g, list(second.roots))
    return _alternates([label for label, _ in merged])


def meixner_pollaczek_line(n: int, epsilon: int, mu) -> DensePoly:
    """
    P_n^lambda(x; pi/2) at x = i(1/4 - s/2), lambda = (mu + epsilon)/2 + 1/4,
    from (k+1) P_{k+1} = 2 x P_k - (k + 2 lambda - 1) P_{k-1}.
    """
    mu = Fraction(mu)
    lam = (mu + epsilon) / 2 + Fraction(1, 4)
    if lam <= 0:
        raise ValueError(f"Meixner-Pollaczek parameter must be positive, got {lam}")
    x = DensePoly([I * Fraction(1, 4), I * Fraction(-1, 2)])
    prev, cur = DensePoly.constant(1), 2 * x
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, (2 * x * cur - prev * (k + 2 * lam - 1)) / (k + 1)
    return cur


def meixner_pollaczek_check(n: int, epsilon: int, mu) -> bool:
    mu = Fraction(mu)
    factor = poly_factor(2 * n + epsilon, mu)
    scale = I ** n * (pochhammer(mu + HALF + epsilon, n) / factorial(n))
    return (meixner_pollaczek_line(n, epsilon, mu) - factor.phat * scale).is_zero()


def certificate_records(m_max: int, mu) -> List[CheckRecord]:
    records = []
    for m in range(m_max + 1):
        try:
            cert = certify(m, mu)
        except FunctionalEquationError as e:
            records.append(check_true(SUITE, "critical line", False, str(e), m=m, mu=Fraction(mu)))
            continue
        records.append(check_true(SUITE, "critical line", cert.all_on_line,
                                  f"{cert.real_root_count} real zeros of {cert.degree}; g={cert.line.g.render('t')}",
                                  m=m, mu=cert.mu))
        records.append(check_true(SUITE, "simple zeros", cert.squarefree,
                                  f"gcd(g, g') nonconstant for g={cert.line.g.render('t')}", m=m, mu=cert.mu))
        records.append(check_true(SUITE, "zeros symmetric in t", cert.symmetric,
                                  f"g={cert.line.g.render('t')}", m=m, mu=cert.mu))
    return records


def interlacing_records(m_max: int, mu) -> List[CheckRecord]:
    """
    Fixed-parity interlacing for every index pair (2n + eps, 2n + 2 + eps) with
    the larger index <= m_max; mixed parity is measured only.
    """
    mu = Fraction(mu)
    records = []
    for eps in (0, 1):
        for n in range(max(m_max - eps, 0) // 2):
            try:
                ok, witness = interlacing_check(n, eps, mu), "zeros do not alternate"
            except RefinementBudgetExceeded as e:
                ok, witness = False, f"refinement budget exhausted: {e}"
            records.append(check_true(SUITE, f"interlacing, {'odd' if eps else 'even'} family", ok,
                                      witness, n=n, mu=mu))
    for m in range(m_max):
        try:
            holds = interlacing_mixed_parity(m, mu)
        except RefinementBudgetExceeded:
            holds = False
        records.append(measured(SUITE, "interlacing across parities", holds,
                                "factors of M_m and M_{m+1}", m=m, mu=mu))
    return records


def meixner_pollaczek_records(n_max: int, mu) -> List[CheckRecord]:
    mu = Fraction(mu)
    return [
        check_true(SUITE, f"Meixner-Pollaczek, {'odd' if eps else 'even'} family",
                   meixner_pollaczek_check(n, eps, mu), "recurrence and 2F1 expansion differ", n=n, mu=mu)
        for eps in (0, 1)
        for n in range(n_max + 1)
    ]
