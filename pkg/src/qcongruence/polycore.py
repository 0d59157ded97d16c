"""Dense arbitrary-precision polynomial and Laurent-polynomial arithmetic in q.

Coefficients are Python integers stored ascending by exponent with no
trailing zeros.  Multiplication switches between schoolbook and Karatsuba
above a size threshold (the result never depends on the strategy), and a
sparse path handles the binomial cofactors that dominate q-series work.
Division is restricted to monic divisors so every intermediate stays an
exact integer.  All values are immutable after construction and safe to
share between concurrent workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

# Exact rational scalars; denominator > 0 and gcd(num, den) = 1 are
# guaranteed by the class itself.
Rational = Fraction

#: Valuation of the zero polynomial (divisible by every power).
INFINITE = math.inf

#: Coefficient count below which schoolbook multiplication wins.  Tunable;
#: correctness never depends on it.
KARATSUBA_THRESHOLD = 32

# An operand with fewer than len/_SPARSE_DIVISOR nonzero coefficients is
# multiplied by sparse schoolbook instead of Karatsuba.
_SPARSE_DIVISOR = 8


# ---------------------------------------------------------------------------
# low-level list arithmetic


def _trimmed(cs: list) -> list:
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    del cs[n:]
    return cs


def _add_lists(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return out


def _sub_lists(a: list, b: list) -> list:
    out = list(a)
    if len(out) < len(b):
        out.extend([0] * (len(b) - len(out)))
    for i, y in enumerate(b):
        out[i] -= y
    return out


def _schoolbook(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        if x == 1:
            for j, y in enumerate(b):
                out[i + j] += y
        elif x == -1:
            for j, y in enumerate(b):
                out[i + j] -= y
        else:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _karatsuba(a: list, b: list) -> list:
    m = max(len(a), len(b)) // 2
    a0, a1 = a[:m], a[m:]
    b0, b1 = b[:m], b[m:]
    z0 = _mul_lists(a0, b0)
    z2 = _mul_lists(a1, b1)
    z1 = _mul_lists(_add_lists(a0, a1), _add_lists(b0, b1))
    z1 = _sub_lists(_sub_lists(z1, z0), z2)
    out = [0] * (len(a) + len(b) - 1)
    for i, v in enumerate(z0):
        out[i] = v
    for i, v in enumerate(z1):
        if v:
            out[m + i] += v
    for i, v in enumerate(z2):
        if v:
            out[2 * m + i] += v
    return out


def _mul_lists(a: list, b: list) -> list:
    if not a or not b:
        return []
    if len(a) > len(b):
        a, b = b, a
    la, lb = len(a), len(b)
    if la <= KARATSUBA_THRESHOLD:
        return _schoolbook(a, b)
    nnz = sum(1 for x in a if x)
    if nnz * _SPARSE_DIVISOR <= la:
        return _schoolbook(a, b)
    if lb > 2 * la:
        # slice the long operand so each piece is balanced against the short one
        out = [0] * (la + lb - 1)
        for s in range(0, lb, la):
            piece = _mul_lists(a, b[s:s + la])
            for i, v in enumerate(piece):
                if v:
                    out[s + i] += v
        return out
    return _karatsuba(a, b)


def _divmod_monic(a: list, m: tuple) -> tuple[list, list]:
    # m monic of degree >= 1; exact over the integers.
    dm = len(m) - 1
    r = list(a)
    if len(r) <= dm:
        return [], _trimmed(r)
    q = [0] * (len(r) - dm)
    lower = [(j, c) for j, c in enumerate(m[:-1]) if c]
    for i in range(len(r) - 1, dm - 1, -1):
        c = r[i]
        if c:
            q[i - dm] = c
            off = i - dm
            for j, mc in lower:
                r[off + j] -= c * mc
            r[i] = 0
    return q, _trimmed(r[:dm])


# ---------------------------------------------------------------------------
# value types


@dataclass(init=False, eq=True)
class Poly:
    """Integer polynomial in q, dense, ascending, trailing zeros stripped.

    >>> Poly([1, 0, -2]).coeffs
    (1, 0, -2)
    >>> Poly([0, 0]).is_zero()
    True
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        n = len(cs)
        while n and cs[n - 1] == 0:
            n -= 1
        self.coeffs = tuple(cs[:n])

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def one() -> "Poly":
        return Poly((1,))

    @staticmethod
    def monomial(exponent: int, coefficient: int = 1) -> "Poly":
        if exponent < 0:
            raise ValueError("Poly exponents are nonnegative; use LaurentPoly")
        return Poly([0] * exponent + [coefficient])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def shift(self, e: int) -> "Poly":
        """Multiply by q^e, e >= 0."""
        if e < 0:
            raise ValueError("negative shift on Poly")
        if not self.coeffs:
            return self
        return Poly((0,) * e + self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        return Poly(_add_lists(list(self.coeffs), list(other.coeffs)))

    def __sub__(self, other: "Poly") -> "Poly":
        return Poly(_sub_lists(list(self.coeffs), list(other.coeffs)))

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other: Union["Poly", int]) -> "Poly":
        if isinstance(other, int):
            return Poly([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        return Poly(_mul_lists(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __divmod__(self, m: "Poly") -> tuple["Poly", "Poly"]:
        return div_rem_by_monic(self, m)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = "" if (abs(c) == 1 and e) else str(abs(c))
            var = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            parts.append(("- " if c < 0 else "+ " if parts else "") + mag + var)
        return " ".join(parts)


@dataclass(init=False, eq=True)
class LaurentPoly:
    """Laurent polynomial: body * q^offset with body(0) != 0 unless zero.

    >>> LaurentPoly(Poly([0, 1, -1]), -3).offset
    -2
    """

    body: Poly
    offset: int

    def __init__(self, body: Union[Poly, Iterable[int]] = (), offset: int = 0):
        cs = body.coeffs if isinstance(body, Poly) else tuple(body)
        i = 0
        n = len(cs)
        while i < n and cs[i] == 0:
            i += 1
        if i == n:
            self.body = Poly()
            self.offset = 0
        else:
            self.body = Poly(cs[i:])
            self.offset = offset + i

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly(Poly.one())

    @staticmethod
    def monomial(exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return LaurentPoly(Poly((coefficient,)), exponent)

    def is_zero(self) -> bool:
        return self.body.is_zero()

    @property
    def low_degree(self) -> int:
        return self.offset

    @property
    def high_degree(self) -> int:
        return self.offset + self.body.degree

    def shift(self, e: int) -> "LaurentPoly":
        if self.is_zero():
            return self
        return LaurentPoly(self.body, self.offset + e)

    def scale(self, c: int) -> "LaurentPoly":
        if c == 0:
            return LaurentPoly.zero()
        return LaurentPoly(self.body * c, self.offset)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        off = min(self.offset, other.offset)
        a = [0] * (self.offset - off) + list(self.body.coeffs)
        b = [0] * (other.offset - off) + list(other.body.coeffs)
        return LaurentPoly(_add_lists(a, b), off)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(-self.body, self.offset)

    def __mul__(self, other: Union["LaurentPoly", Poly, int]) -> "LaurentPoly":
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, Poly):
            other = LaurentPoly(other)
        if self.is_zero() or other.is_zero():
            return LaurentPoly.zero()
        return LaurentPoly(self.body * other.body, self.offset + other.offset)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        return LaurentPoly(self.body ** n, self.offset * n)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        if self.offset == 0:
            return str(self.body)
        return f"q^{self.offset} * ({self.body})"


def as_laurent(a: Union[Poly, LaurentPoly]) -> LaurentPoly:
    return a if isinstance(a, LaurentPoly) else LaurentPoly(a)


# ---------------------------------------------------------------------------
# spec operations


def mul(a, b):
    """Exact product; Poly*Poly stays Poly, anything Laurent stays Laurent."""
    if isinstance(a, Poly) and isinstance(b, Poly):
        return a * b
    return as_laurent(a) * as_laurent(b)


def mul_schoolbook(a: Poly, b: Poly) -> Poly:
    """Reference quadratic product, used as the oracle for strategy checks."""
    if a.is_zero() or b.is_zero():
        return Poly()
    return Poly(_schoolbook(list(a.coeffs), list(b.coeffs)))


def div_rem_by_monic(a: Poly, m: Poly) -> tuple[Poly, Poly]:
    """Quotient and remainder of a by a monic divisor of degree >= 1.

    The result is exact over the integers: a == q*m + r with
    deg(r) < deg(m).

    >>> q, r = div_rem_by_monic(Poly([-1, 0, 0, 1]), Poly([-1, 1]))
    >>> (q.coeffs, r.coeffs)
    ((1, 1, 1), ())
    """
    if m.degree < 1:
        raise ValueError("divisor must be nonconstant")
    if m.leading() != 1:
        raise ValueError("divisor must be monic")
    q, r = _divmod_monic(list(a.coeffs), m.coeffs)
    return Poly(q), Poly(r)


def valuation_at(a: Union[Poly, LaurentPoly], m: Poly):
    """Largest e with m^e dividing a; INFINITE for a = 0.

    Laurent offsets are ignored when m has nonzero constant term (q is then
    a unit modulo m).  Computed by repeated exact monic division.
    """
    if m.degree < 1:
        raise ValueError("modulus must be nonconstant")
    if m.leading() != 1:
        raise ValueError("modulus must be monic")
    lp = as_laurent(a)
    if lp.is_zero():
        return INFINITE
    if m.constant() == 0:
        if lp.offset < 0:
            raise ValueError(
                "negative Laurent offset with modulus divisible by q")
        cs = [0] * lp.offset + list(lp.body.coeffs)
    else:
        cs = list(lp.body.coeffs)
    count = 0
    mc = m.coeffs
    while True:
        q, r = _divmod_monic(cs, mc)
        if r:
            return count
        count += 1
        cs = q


def eval_at(a: Union[Poly, LaurentPoly], x) -> Fraction:
    """Exact rational value by Horner evaluation."""
    x = Fraction(x)
    if isinstance(a, Poly):
        acc = Fraction(0)
        for c in reversed(a.coeffs):
            acc = acc * x + c
        return acc
    if a.offset < 0 and x == 0:
        raise ZeroDivisionError("evaluation at 0 with negative offset")
    return eval_at(a.body, x) * x ** a.offset


def normalize_one_minus_pow(m: int) -> tuple[tuple[int, int], int]:
    """Rewrite 1 - q^m with a positive-exponent base factor.

    Returns ((sign, exponent), factor_index) with
    1 - q^m == sign * q^exponent * (1 - q^factor_index).

    >>> normalize_one_minus_pow(-2)
    ((-1, -2), 2)
    >>> normalize_one_minus_pow(5)
    ((1, 0), 5)
    """
    if m == 0:
        raise ValueError("1 - q^0 is zero: degenerate factor")
    if m > 0:
        return (1, 0), m
    return (-1, m), -m


def one_minus_q(e: int) -> LaurentPoly:
    """The binomial 1 - q^e as a Laurent polynomial (zero when e == 0)."""
    if e == 0:
        return LaurentPoly.zero()
    if e > 0:
        return LaurentPoly(Poly([1] + [0] * (e - 1) + [-1]))
    return LaurentPoly(Poly([-1] + [0] * (-e - 1) + [1]), e)


def poly_one_minus_q(e: int) -> Poly:
    """The binomial 1 - q^e for e >= 1 as a plain polynomial."""
    if e < 1:
        raise ValueError("exponent must be positive")
    return Poly([1] + [0] * (e - 1) + [-1])
