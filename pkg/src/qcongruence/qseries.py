"""Truncated q-hypergeometric sums held as exact rational functions.

A sum is a SeriesSum: a Laurent numerator over a *factored* denominator
+-q^t * prod (1 - q^m)^e.  Denominators are never expanded while a sum is
accumulated; consecutive terms of every supported family share nested
denominators, so each step multiplies the running numerator by a small
cofactor and adds the next term's numerator.  Keeping the denominator
factored also makes its cyclotomic valuations analytic (count the bases m
divisible by d) instead of requiring any division.

Five term families are supported, named by the tags used throughout the
check drivers:

  C        [4k+1] (q^s;q^{2s})_k^4 / (q^{2s};q^{2s})_k^4
  J        q^{s k^2} [6k+1]_{q^s} (q^s;q^{2s})_k^2 (q^{2s};q^{4s})_k
             / (q^{4s};q^{4s})_k^3
  M        q^{2sk} (q^s;q^{2s})_k^4 / (q^{2s};q^{2s})_k^4
  C_PARAM  [4k+1]_{q^s} (q^{s+t};q^{2s})_k (q^{s-t};q^{2s})_k
             (q^s;q^{2s})_k^2 / ((q^{2s+t};q^{2s})_k (q^{2s-t};q^{2s})_k
             (q^{2s};q^{2s})_k^2)
  J_PARAM  q^{s k^2} [6k+1]_{q^s} (q^{s+t};q^{2s})_k (q^{s-t};q^{2s})_k
             (q^{2s};q^{4s})_k / ((q^{4s+t};q^{4s})_k (q^{4s-t};q^{4s})_k
             (q^{4s};q^{4s})_k)

s is the base exponent (the whole series written in q^s) and, for the
parametric families, t is the exponent of the monomial specialization of
the free parameter.  t must be odd: the denominator factor exponents then
stay odd (never zero), while numerator factors are allowed to vanish and
simply truncate the sum.  For the J families the q^{.k^2} prefactor scale
and the base of [6k+1] can be overridden independently, because the two
printed readings of one target disagree on them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .polycore import (
    LaurentPoly,
    Poly,
    div_rem_by_monic,
    eval_at,
    one_minus_q,
    poly_one_minus_q,
)

PLAIN_FAMILIES = ("C", "J", "M")
PARAMETRIC_FAMILIES = ("C_PARAM", "J_PARAM")
FAMILIES = PLAIN_FAMILIES + PARAMETRIC_FAMILIES


# ---------------------------------------------------------------------------
# structured products and sums


@dataclass
class FactoredProduct:
    """sign * q^power * prod over factors m -> e of (1 - q^m)^e, m >= 1.

    Treated as immutable after construction; operations return new values.
    """

    sign: int = 1
    power: int = 0
    factors: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +-1")
        for m, e in self.factors.items():
            if m < 1 or e < 1:
                raise ValueError("factor bases and exponents must be >= 1")

    def is_unit_free(self) -> bool:
        return self.sign == 1 and self.power == 0

    def is_one(self) -> bool:
        return self.is_unit_free() and not self.factors

    def times(self, other: "FactoredProduct") -> "FactoredProduct":
        merged = dict(self.factors)
        for m, e in other.factors.items():
            merged[m] = merged.get(m, 0) + e
        return FactoredProduct(self.sign * other.sign,
                               self.power + other.power, merged)

    def with_factor(self, m: int, e: int = 1) -> "FactoredProduct":
        merged = dict(self.factors)
        merged[m] = merged.get(m, 0) + e
        return FactoredProduct(self.sign, self.power, merged)

    def ord_cyclotomic(self, d: int) -> int:
        """Multiplicity of the d-th cyclotomic polynomial, analytically."""
        if d < 1:
            raise ValueError("cyclotomic index must be >= 1")
        return sum(e for m, e in self.factors.items() if m % d == 0)

    def expanded_degree(self) -> int:
        return sum(m * e for m, e in self.factors.items())

    def expand(self) -> LaurentPoly:
        """Multiply everything out; equals the product of the parts exactly."""
        acc = Poly.one()
        for m in sorted(self.factors):
            b = poly_one_minus_q(m)
            for _ in range(self.factors[m]):
                acc = acc * b
        return LaurentPoly(acc * self.sign, self.power)


@dataclass
class SeriesSum:
    """A truncated sum as numerator / (scalar_den * expanded denominator)."""

    numerator: LaurentPoly
    denominator: FactoredProduct = field(default_factory=FactoredProduct)
    scalar_den: int = 1

    def __post_init__(self):
        if self.scalar_den < 1:
            raise ValueError("scalar denominator must be positive")
        if not self.denominator.is_unit_free():
            raise ValueError("series denominators carry no unit part")

    @staticmethod
    def zero() -> "SeriesSum":
        return SeriesSum(LaurentPoly.zero())

    @staticmethod
    def of(numerator: LaurentPoly) -> "SeriesSum":
        return SeriesSum(numerator)

    def scaled_by(self, factor: LaurentPoly) -> "SeriesSum":
        return SeriesSum(self.numerator * factor, self.denominator,
                         self.scalar_den)

    def times(self, other: "SeriesSum") -> "SeriesSum":
        return SeriesSum(self.numerator * other.numerator,
                         self.denominator.times(other.denominator),
                         self.scalar_den * other.scalar_den)


@dataclass
class FamilySpec:
    """Which family, in which base q^s, truncated at which upper index.

    For parametric families t (odd) is the specialization exponent.
    prefix_base and qint_base override the J-family prefactor scale and
    q-integer base; both default to the series base.
    """

    family: str
    base: int = 1
    upper: int = 0
    t: Optional[int] = None
    prefix_base: Optional[int] = None
    qint_base: Optional[int] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.base < 1:
            raise ValueError("base exponent must be >= 1")
        if self.upper < 0:
            raise ValueError("upper index must be >= 0")
        if self.family in PARAMETRIC_FAMILIES:
            if self.t is None:
                raise ValueError("parametric families need a specialization t")
            if self.t % 2 == 0:
                raise ValueError("specialization exponent t must be odd")
        elif self.t is not None:
            raise ValueError("plain families take no specialization")
        if self.family not in ("J", "J_PARAM"):
            if self.prefix_base is not None or self.qint_base is not None:
                raise ValueError("prefix/qint overrides are J-family only")


# ---------------------------------------------------------------------------
# elementary builders


def q_integer(n: int, base: int = 1) -> Poly:
    """1 + q^s + ... + q^{s(n-1)}; the q-analogue of n in base q^s.

    >>> q_integer(3).coeffs
    (1, 1, 1)
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if base < 1:
        raise ValueError("base exponent must be >= 1")
    cs = [0] * (base * (n - 1) + 1)
    for i in range(n):
        cs[base * i] = 1
    return Poly(cs)


def q_pochhammer(start: int, step: int, count: int
                 ) -> tuple[FactoredProduct, bool]:
    """prod_{i<count} (1 - q^{start+step*i}) in positive-base factored form.

    The flag reports that some factor was exactly zero (the true value of
    the product is then 0, which is legal in numerators: it truncates a
    series).  The returned factors are the nonzero part.
    """
    if step < 1:
        raise ValueError("step exponent must be >= 1")
    if count < 0:
        raise ValueError("count must be >= 0")
    sign, power, factors = 1, 0, {}
    vanished = False
    for i in range(count):
        e = start + step * i
        if e == 0:
            vanished = True
            continue
        if e < 0:
            sign, power, e = -sign, power + e, -e
        factors[e] = factors.get(e, 0) + 1
    return FactoredProduct(sign, power, factors), vanished


def _mul_q_integer(lp: LaurentPoly, count: int, step: int) -> LaurentPoly:
    # lp * (1 + q^step + ... + q^{step(count-1)}) by sliding-window sums:
    # out[i] = out[i-step] + c[i] - c[i-step*count].
    if lp.is_zero() or count == 1:
        return lp
    c = lp.body.coeffs
    total = len(c) + step * (count - 1)
    out = [0] * total
    for i in range(total):
        v = out[i - step] if i >= step else 0
        if i < len(c):
            v += c[i]
        j = i - step * count
        if j >= 0:
            v -= c[j]
        out[i] = v
    return LaurentPoly(Poly(out), lp.offset)


# ---------------------------------------------------------------------------
# term generation

# Per family, the exponents of the binomials that enter the numerator
# product and the raw denominator at step k (k >= 1), before any
# positive-base normalization of negative denominator exponents.


def _step_exponents(spec: FamilySpec, k: int) -> tuple[list[int], list[int]]:
    s, t = spec.base, spec.t
    odd = 2 * k - 1
    if spec.family == "C":
        return [s * odd] * 4, [2 * s * k] * 4
    if spec.family == "M":
        return [s * odd] * 4, [2 * s * k] * 4
    if spec.family == "J":
        return [s * odd, s * odd, 2 * s * odd], [4 * s * k] * 3
    if spec.family == "C_PARAM":
        return ([s * odd + t, s * odd - t, s * odd, s * odd],
                [2 * s * k + t, 2 * s * k - t, 2 * s * k, 2 * s * k])
    # J_PARAM
    return ([s * odd + t, s * odd - t, 2 * s * odd],
            [4 * s * k + t, 4 * s * k - t, 4 * s * k])


def _finish_term(spec: FamilySpec, k: int, prod: LaurentPoly) -> LaurentPoly:
    s = spec.base
    if spec.family in ("C", "C_PARAM"):
        return _mul_q_integer(prod, 4 * k + 1, s)
    if spec.family in ("J", "J_PARAM"):
        num = _mul_q_integer(prod, 6 * k + 1, spec.qint_base or s)
        return num.shift((spec.prefix_base or s) * k * k)
    # M
    return prod.shift(2 * s * k)


def _term_stream(spec: FamilySpec
                 ) -> Iterator[tuple[int, LaurentPoly, list[int]]]:
    """Yield (k, raw numerator, raw new denominator exponents) for k <= upper.

    The numerator is exact; a vanishing numerator factor makes it (and all
    later numerators) zero.  Denominator exponents are raw and may be
    negative; the caller normalizes them.
    """
    prod = LaurentPoly.one()
    yield 0, LaurentPoly.one(), []
    for k in range(1, spec.upper + 1):
        num_exps, den_exps = _step_exponents(spec, k)
        for e in num_exps:
            prod = prod * one_minus_q(e)
        yield k, _finish_term(spec, k, prod), den_exps


class _Accumulator:
    """Common-denominator accumulation with unit folding.

    The raw denominator after step k factors as unit * F_k with F_k a
    positive-base FactoredProduct and F_{k-1} dividing F_k; the running
    numerator is kept over F_k, so each step multiplies it by the small
    expanded cofactor F_k / F_{k-1} and adds the unit-adjusted term
    numerator.  No rational reduction is ever performed.
    """

    def __init__(self) -> None:
        self.numerator = LaurentPoly.zero()
        self.factors: dict[int, int] = {}
        self.unit_sign = 1
        self.unit_power = 0

    def absorb(self, raw_num: LaurentPoly, raw_den_exps: list[int]) -> None:
        if raw_den_exps:
            cof = Poly.one()
            for e in raw_den_exps:
                if e == 0:
                    raise ZeroDivisionError("vanishing denominator factor")
                if e < 0:
                    self.unit_sign = -self.unit_sign
                    self.unit_power += e
                    e = -e
                self.factors[e] = self.factors.get(e, 0) + 1
                cof = cof * poly_one_minus_q(e)
            if not self.numerator.is_zero():
                self.numerator = self.numerator * cof
        if not raw_num.is_zero():
            adjusted = raw_num.scale(self.unit_sign).shift(-self.unit_power)
            self.numerator = self.numerator + adjusted

    def last_term_numerator(self, raw_num: LaurentPoly) -> LaurentPoly:
        return raw_num.scale(self.unit_sign).shift(-self.unit_power)

    def denominator(self) -> FactoredProduct:
        return FactoredProduct(1, 0, dict(self.factors))


def term_of(spec: FamilySpec, k: int) -> tuple[LaurentPoly, FactoredProduct]:
    """The exact k-th term as (numerator, factored denominator)."""
    if k > spec.upper:
        spec = FamilySpec(spec.family, spec.base, k, spec.t,
                          spec.prefix_base, spec.qint_base)
    acc = _Accumulator()
    for i, raw_num, raw_exps in _term_stream(spec):
        acc.absorb(LaurentPoly.zero(), raw_exps)
        if i == k:
            return acc.last_term_numerator(raw_num), acc.denominator()
    raise AssertionError("unreachable")


def sum_truncated(spec: FamilySpec) -> SeriesSum:
    """Sum of the terms k = 0..upper over the common (last) denominator."""
    acc = _Accumulator()
    for _, raw_num, raw_exps in _term_stream(spec):
        acc.absorb(raw_num, raw_exps)
    return SeriesSum(acc.numerator, acc.denominator())


# ---------------------------------------------------------------------------
# classical (q -> 1) values


def classical_term_value(family: str, k: int) -> Fraction:
    """Exact rational limit of the k-th term at q = 1 for plain families.

    All three reduce to central binomial coefficients over powers of 4:
    C(2k,k)/4^k is the classical normalized half-integer ratio.
    """
    if family not in PLAIN_FAMILIES:
        raise ValueError("classical values exist for plain families only")
    if k < 0:
        raise ValueError("k must be >= 0")
    central = math.comb(2 * k, k)
    if family == "C":
        return Fraction((4 * k + 1) * central ** 4, 256 ** k)
    if family == "J":
        return Fraction((6 * k + 1) * central ** 3, 256 ** k)
    return Fraction(central ** 4, 256 ** k)


def _poch_poly(start: int, step: int, count: int) -> Poly:
    acc = Poly.one()
    for i in range(count):
        acc = acc * poly_one_minus_q(start + step * i)
    return acc


def central_q_binomial(k: int, base: int = 1) -> Poly:
    """(q^s;q^s)_{2k} / (q^s;q^s)_k^2, an integer polynomial."""
    if k == 0:
        return Poly.one()
    num = _poch_poly(base, base, 2 * k)
    den = _poch_poly(base, base, k)
    quotient, rem = div_rem_by_monic(num, den * den)
    if not rem.is_zero():
        raise AssertionError("central q-binomial division not exact")
    return quotient


def term_value_at_one(family: str, k: int) -> Fraction:
    """Pole-free q = 1 evaluation of the k-th plain-family term.

    Each shifted-factorial ratio is rewritten through the central
    q-binomial coefficient divided by (-q^s;q^s)_k^2 so that no factor
    vanishes at q = 1; the pieces are then evaluated exactly.
    """
    if family not in PLAIN_FAMILIES:
        raise ValueError("classical values exist for plain families only")
    one = Fraction(1)
    minus_poch1 = one
    minus_poch2 = one
    for i in range(1, k + 1):
        minus_poch1 *= 2  # (1 + q^i) at q = 1
        minus_poch2 *= 2  # (1 + q^{2i}) at q = 1
    cqb1 = eval_at(central_q_binomial(k, 1), 1)
    if family == "C":
        ratio = cqb1 / minus_poch1 ** 2
        return (4 * k + 1) * ratio ** 4
    if family == "M":
        ratio = cqb1 / minus_poch1 ** 2
        return ratio ** 4
    cqb2 = eval_at(central_q_binomial(k, 2), 1)
    ratio_a = cqb1 / (minus_poch1 ** 2 * minus_poch2)
    ratio_b = cqb2 / minus_poch2 ** 2
    return (6 * k + 1) * ratio_a ** 2 * ratio_b


# ---------------------------------------------------------------------------
# eta-style product expansion


def eta_product_coefficients(n: int) -> list[int]:
    """Coefficients gamma_1..gamma_n of q * (q^2;q^2)_inf^4 (q^4;q^4)_inf^4.

    Factors beyond degree n cannot reach the reported range, so truncating
    each infinite product at n is exact.

    >>> eta_product_coefficients(3)
    [1, 0, -4]
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    coeffs = [0] * (n + 1)
    coeffs[1] = 1
    for step in (2, 4):
        m = step
        while m <= n:
            for _ in range(4):
                for i in range(n, m - 1, -1):
                    coeffs[i] -= coeffs[i - m]
            m += step
    return coeffs[1:]
